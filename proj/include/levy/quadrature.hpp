#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <deque>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace levy::quad {

struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-8;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

template <class F>
Result gauss_kronrod(F&& f, double a, double b, double rel_tol, unsigned max_depth = 15) {
  if (a == b) return {};
  double err = 0.0, l1 = 0.0;
  // Boost's error estimate degrades on short intervals, so integrate over [0, 1].
  const double h = b - a;
  auto g = [&](double t) { return h * f(a + h * t); };
  const double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, 0.0, 1.0, max_depth, rel_tol, &err, &l1);
  l1 = std::fabs(l1);
  const bool ok = err <= std::max(rel_tol * l1, 1e-300) * 10.0 || err <= 1e-15 * std::fabs(v);
  // |K - G| overstates the Kronrod error; QUADPACK rescaling.
  if (l1 > 0.0 && err > 0.0) err = std::max(l1 * std::min(1.0, std::pow(200.0 * err / l1, 1.5)), 50.0 * DBL_EPSILON * l1);
  return {v, err, ok};
}

template <class F>
Result tanh_sinh(F&& f, double a, double b, double rel_tol) {
  if (a == b) return {};
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(12);
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v = integrator.integrate(f, a, b, rel_tol, &err, &l1, &levels);
  return {v, err, err <= 10.0 * rel_tol * std::max(l1, 1e-300)};
}

template <class F>
Result exp_sinh(F&& f, double a, double rel_tol) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v = integrator.integrate([&](double x) { return f(x); }, a, std::numeric_limits<double>::infinity(),
                                        rel_tol, &err, &l1, &levels);
  return {v, err, err <= 10.0 * rel_tol * std::max(l1, 1e-300)};
}

// Wynn's epsilon algorithm over a sliding window of partial sums.
class SequenceAccelerator {
 public:
  explicit SequenceAccelerator(std::size_t window = 24) : window_(window) {}

  void push(double s) {
    sums_.push_back(s);
    if (sums_.size() > window_) sums_.pop_front();
    prev_ = est_;
    est_ = extrapolate();
    ++count_;
  }
  double estimate() const { return est_; }
  double change() const { return count_ < 2 ? std::numeric_limits<double>::infinity() : std::fabs(est_ - prev_); }

 private:
  double extrapolate() const {
    const std::size_t m = sums_.size();
    std::vector<double> prev(m + 1, 0.0), cur(sums_.begin(), sums_.end());
    double best = cur.back();
    for (std::size_t k = 1; k < m; ++k) {
      std::vector<double> next(m - k);
      for (std::size_t j = 0; j + k < m; ++j) {
        const double d = cur[j + 1] - cur[j];
        if (d == 0.0 || !std::isfinite(d)) return best;
        next[j] = prev[j + 1] + 1.0 / d;
        if (!std::isfinite(next[j])) return best;
      }
      prev = std::move(cur);
      cur = std::move(next);
      if (k % 2 == 0) best = cur.back();
    }
    return best;
  }

  std::size_t window_;
  std::deque<double> sums_;
  double est_ = 0.0;
  double prev_ = 0.0;
  int count_ = 0;
};

struct OscillatoryOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int min_panels = 6;
  int max_panels = 4000;
  double support_end = std::numeric_limits<double>::infinity();
};

// Integral of an oscillating f over [a, inf), split at a, first_break, first_break + k*half_period.
// Partial sums over the panels are accelerated with Wynn's epsilon algorithm.
template <class F>
Result oscillatory_tail(F&& f, double a, double first_break, double half_period, const OscillatoryOptions& opt = {}) {
  KahanSum sum;
  SequenceAccelerator acc;
  double left = a;
  double right = first_break > a ? first_break : a + half_period;
  double err_sum = 0.0;
  int small_streak = 0, stable_streak = 0;
  // A support end within reach is summed exactly; no extrapolation past it.
  const bool bounded = (opt.support_end - a) / half_period < 0.5 * opt.max_panels;
  for (int k = 0; k < opt.max_panels; ++k) {
    bool last = false;
    if (right >= opt.support_end) {
      right = opt.support_end;
      last = true;
    }
    if (right > left) {
      const Result piece = gauss_kronrod(f, left, right, 1e-12);
      sum.add(piece.value);
      err_sum += piece.error;
      acc.push(sum.value());
      const double scale = std::max(std::fabs(acc.estimate()), std::fabs(sum.value()));
      const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);
      if (last) return {sum.value(), err_sum, true};
      if (bounded) {
        left = right;
        right = left + half_period;
        continue;
      }
      small_streak = std::fabs(piece.value) <= 1e-3 * tol ? small_streak + 1 : 0;
      if (small_streak >= 3) return {sum.value(), err_sum + std::fabs(piece.value), true};
      stable_streak = (k >= opt.min_panels && acc.change() <= tol) ? stable_streak + 1 : 0;
      if (stable_streak >= 2) return {acc.estimate(), err_sum + acc.change(), true};
    }
    left = right;
    right = left + half_period;
  }
  return {acc.estimate(), err_sum + acc.change(), false};
}

// Integral of a positive f over [a, inf) decaying at least like a power: doubling panels
// with Wynn extrapolation of the geometric tail.
template <class F>
Result half_line_decaying(F&& f, double a, double rel_tol, int max_panels = 600) {
  KahanSum sum;
  SequenceAccelerator acc(16);
  double left = a;
  int stable_streak = 0;
  double err_sum = 0.0;
  for (int k = 0; k < max_panels; ++k) {
    const double right = 2.0 * left;
    const Result piece = gauss_kronrod(f, left, right, 1e-12);
    sum.add(piece.value);
    err_sum += piece.error;
    acc.push(sum.value());
    if (piece.value <= 1e-17 * sum.value()) return {sum.value(), err_sum, true};
    stable_streak = (k >= 4 && acc.change() <= rel_tol * std::fabs(acc.estimate())) ? stable_streak + 1 : 0;
    if (stable_streak >= 3) return {acc.estimate(), err_sum + acc.change(), true};
    left = right;
    if (!std::isfinite(left)) break;
  }
  return {acc.estimate(), err_sum + acc.change(), false};
}

// int_a^b A(r) e^{i s r} dr for a smooth amplitude A: Chebyshev interpolation of A at N + 1
// Lobatto points with exact Chebyshev moments (Filon-Clenshaw-Curtis). Needs s (b - a) / 2 >= 2 N.
// err receives the size of the last two Chebyshev terms.
template <class F>
std::complex<double> filon_exp(F&& A, double a, double b, double s, int N = 24, double* err = nullptr) {
  using C = std::complex<double>;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a), w = s * h;
  const double pi = 3.14159265358979323846;
  std::vector<C> fv(static_cast<std::size_t>(N + 1)), coef(static_cast<std::size_t>(N + 1));
  // Endpoint samples one ulp inside, so jumps of A at the panel ends are not seen.
  fv[0] = A(std::nextafter(b, a));
  fv[static_cast<std::size_t>(N)] = A(std::nextafter(a, b));
  for (int j = 1; j < N; ++j) fv[static_cast<std::size_t>(j)] = A(c + h * std::cos(pi * j / N));
  for (int k = 0; k <= N; ++k) {
    C sum = 0.5 * (fv[0] + fv[static_cast<std::size_t>(N)] * (k % 2 ? -1.0 : 1.0));
    for (int j = 1; j < N; ++j) sum += fv[static_cast<std::size_t>(j)] * std::cos(pi * j * k / N);
    coef[static_cast<std::size_t>(k)] = (k == 0 || k == N ? 1.0 : 2.0) * sum / static_cast<double>(N);
  }
  const C iw(0.0, w);
  const C ep = std::exp(iw), em = std::exp(-iw);
  auto boundary = [&](int k) { return ep - (k % 2 ? -em : em); };
  // W_k = int T_k' e^{i w u} du, from T_{k+1}'/(k+1) - T_{k-1}'/(k-1) = 2 T_k.
  C M = 2.0 * std::sin(w) / w;
  C total = coef[0] * M;
  C W_prev = M;                        // W_1
  M = (boundary(1) - W_prev) / iw;     // M_1
  total += coef[1] * M;
  C W = 4.0 * M;                       // W_2
  for (int k = 2; k <= N; ++k) {
    M = (boundary(k) - W) / iw;
    total += coef[static_cast<std::size_t>(k)] * M;
    const C W_next = static_cast<double>(k + 1) * (2.0 * M + W_prev / static_cast<double>(k - 1));
    W_prev = W;
    W = W_next;
  }
  const C v = h * std::exp(C(0.0, s * c)) * total;
  if (err) {
    const double tail = std::abs(coef[static_cast<std::size_t>(N)]) + std::abs(coef[static_cast<std::size_t>(N - 1)]);
    *err = 2.0 * h * tail + 1e-15 * std::abs(v);
  }
  return v;
}

}  // namespace levy::quad
