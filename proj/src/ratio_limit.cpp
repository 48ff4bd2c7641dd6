#include "levy/ratio_limit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "levy/errors.hpp"
#include "levy/exponent.hpp"
#include "levy/quadrature.hpp"
#include "levy/radial_measure.hpp"
#include "levy/specfun.hpp"

namespace levy {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool radial_model(const ModelSpec& m) { return m.dim() == 1 || m.isotropic(); }

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("t must be positive and finite");
}

IntegrabilityProbe require_integrable(const ModelSpec& model, double t) {
  const IntegrabilityProbe p = probe_integrability(model, t);
  if (!p.integrable)
    throw Refusal("not integrable", "e^{-t Re psi} decays like |xi|^{-" + std::to_string(p.exponent) +
                                        "} at t=" + std::to_string(t) + " on the probed window");
  return p;
}

// int_0^{2 pi} h(a) da by the periodic trapezoid rule, doubling from M0 nodes until two levels agree.
template <class H>
auto circle_integral(H&& h, int M0) {
  using V = decltype(h(0.0));
  int M = M0;
  V sum{};
  double mag = 0.0;
  for (int j = 0; j < M; ++j) {
    const V v = h(2.0 * kPi * j / M);
    sum += v;
    mag += std::abs(v);
  }
  V est = sum * (2.0 * kPi / M);
  while (M < (1 << 14)) {
    for (int j = 0; j < M; ++j) {
      const V v = h(2.0 * kPi * (j + 0.5) / M);
      sum += v;
      mag += std::abs(v);
    }
    M *= 2;
    const V next = sum * (2.0 * kPi / M);
    const bool done = std::abs(next - est) <= 1e-14 * mag * (2.0 * kPi / M);
    est = next;
    if (done) break;
  }
  return est;
}

// Angular integral of e^{-t Re psi(r theta)} over the unit sphere.
std::function<double(double)> angular_mass(const ModelSpec& model, double t) {
  const int n = model.dim();
  if (radial_model(model)) {
    const double w = specfun::sphere_area(n);
    return [&model, t, w](double r) { return w * std::exp(-t * re_psi_radial(model, r)); };
  }
  if (n != 2) throw DomainError("anisotropic models are supported in dimension 2 only");
  // Re psi is even, so half the circle suffices; the periodic trapezoid rule is spectrally accurate.
  return [&model, t](double r) {
    return circle_integral(
        [&](double a) {
          const std::vector<double> xi{r * std::cos(a), r * std::sin(a)};
          return std::exp(-t * eval_re_psi(model, xi));
        },
        32);
  };
}

double inner_mass(const std::function<double(double)>& A, int n, double delta) {
  auto f = [&](double r) { return r > 0.0 ? A(r) * std::pow(r, n - 1) : (n == 1 ? A(0.0) : 0.0); };
  quad::KahanSum s;
  double hi = delta;
  for (int k = 0; k < 60; ++k) {
    const double lo = 0.5 * hi;
    s.add(quad::gauss_kronrod(f, lo, hi, 1e-13).value);
    hi = lo;
  }
  s.add(quad::gauss_kronrod(f, 0.0, hi, 1e-13).value);
  return s.value();
}

double outer_mass(const std::function<double(double)>& A, int n, double delta) {
  auto f = [&](double r) {
    const double v = A(r) * std::pow(r, n - 1);
    return std::isfinite(v) ? v : 0.0;
  };
  const quad::Result r = quad::half_line_decaying(f, delta, 1e-12, 2000);
  if (!r.converged) throw NumericalError("tail integral of e^{-t Re psi} did not converge", r.error);
  return r.value;
}

// Adaptive Gauss-Legendre (20 against 10 points) for complex integrands.
template <class F>
cplx adaptive_gl(F&& f, double a, double b, double abs_tol, int depth = 0) {
  using G20 = boost::math::quadrature::gauss<double, 20>;
  using G10 = boost::math::quadrature::gauss<double, 10>;
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  auto rule = [&](const auto& x, const auto& w) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) {
        s += w[i] * f(c);
      } else {
        s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
      }
    }
    return s * h;
  };
  const cplx v20 = rule(G20::abscissa(), G20::weights());
  const cplx v10 = rule(G10::abscissa(), G10::weights());
  if (std::abs(v20 - v10) <= std::max(abs_tol, 1e-13 * std::abs(v20)) || depth >= 16) return v20;
  return adaptive_gl(f, a, c, 0.5 * abs_tol, depth + 1) + adaptive_gl(f, c, b, 0.5 * abs_tol, depth + 1);
}

// int_{|xi| < R} e^{-t psi(xi)} G(xi) dxi in polar coordinates. L bounds the oscillation frequency
// of G, g_max bounds |G|, norm is ||e^{-t psi}||_1 and sets the absolute tolerance.
cplx polar_integral(const ModelSpec& model, double t, double R, double L, double g_max, double norm,
                    const std::function<cplx(std::span<const double>)>& G) {
  const int n = model.dim();
  if (n > 2) throw DomainError("polar quadrature supports dimensions 1 and 2");
  const bool iso = radial_model(model) && model.symmetric();
  auto integrand = [&](double r) -> cplx {
    if (n == 1) {
      cplx s = 0.0;
      for (double sg : {1.0, -1.0}) {
        const double xi = sg * r;
        const cplx e = iso ? cplx(std::exp(-t * re_psi_radial(model, r)), 0.0)
                           : std::exp(-t * eval_psi(model, std::span<const double>(&xi, 1)));
        s += e * G(std::span<const double>(&xi, 1));
      }
      return s;
    }
    const int M = std::min(4096, 4 * static_cast<int>(std::ceil((r * L + 32.0) / 4.0)));
    const double e_iso = iso ? std::exp(-t * re_psi_radial(model, r)) : 0.0;
    const cplx s = circle_integral(
        [&](double a) {
          const double xi[2] = {r * std::cos(a), r * std::sin(a)};
          const cplx e = iso ? cplx(e_iso, 0.0) : std::exp(-t * eval_psi(model, std::span<const double>(xi, 2)));
          return e * G(std::span<const double>(xi, 2));
        },
        M);
    return s * r;
  };
  const double tol = 1e-14 * norm;
  const double w = std::min({1.0, R, L > 0.0 ? kPi / L : kInf});
  // Below r_lo the integrand is G(0) up to a negligible error.
  const double vn = specfun::ball_volume(n);
  double r_lo = w;
  while (r_lo > 1e-300 && vn * std::pow(r_lo, n) * std::max(g_max, 1e-300) * (1.0 + t) > 1e-15 * norm) r_lo *= 0.5;
  const std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
  cplx total = G(zero) * vn * std::pow(r_lo, n);
  int panels = 0;
  for (double hi = w; hi > r_lo; hi *= 0.5, ++panels) total += adaptive_gl(integrand, 0.5 * hi, hi, tol / 64.0);
  const auto count = static_cast<long>(std::ceil((R - w) / w - 1e-9));
  for (long k = 0; k < count; ++k) {
    const double a = w + k * w, b = std::min(R, a + w);
    total += adaptive_gl(integrand, a, b, tol / static_cast<double>(count + 1));
  }
  return total;
}

double window_radius(const ModelSpec& model, double t) {
  const IntegrabilityProbe p = require_integrable(model, t);
  return p.negligible_from > 0.0 ? p.negligible_from : kInf;
}

double min_step(const Grid& g) {
  double h = g.step[0];
  if (g.dim == 2) h = std::min(h, g.step[1]);
  return h;
}

}  // namespace

double exp_psi_l1(const ModelSpec& model, double t) {
  check_t(t);
  require_integrable(model, t);
  const auto A = angular_mass(model, t);
  return inner_mass(A, model.dim(), 1.0) + outer_mass(A, model.dim(), 1.0);
}

double exp_psi_l1_outside(const ModelSpec& model, double t, double delta) {
  check_t(t);
  if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
  require_integrable(model, t);
  const auto A = angular_mass(model, t);
  if (delta == 0.0) return inner_mass(A, model.dim(), 1.0) + outer_mass(A, model.dim(), 1.0);
  return outer_mass(A, model.dim(), delta);
}

double chi_tail_mass(const ModelSpec& model, double t, double delta) {
  check_t(t);
  if (!(delta >= 0.0)) throw DomainError("delta must be nonnegative");
  require_integrable(model, t);
  if (delta == 0.0) return 1.0;
  const auto A = angular_mass(model, t);
  const int n = model.dim();
  const double out = outer_mass(A, n, delta);
  const double in = inner_mass(A, n, delta);
  return std::clamp(out / (in + out), 0.0, 1.0);
}

InfOutside inf_re_psi_outside(const ModelSpec& model, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  const int n = model.dim();
  std::vector<std::vector<double>> dirs;
  if (radial_model(model)) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[0] = 1.0;
    dirs.push_back(e);
  } else {
    dirs = direction_set(n);
  }
  std::vector<double> periods;
  if (const auto* at = std::get_if<AtomsMeasure>(&model.measure())) {
    for (const auto& a : at->atoms) {
      double rad = 0.0;
      if (const auto* p = std::get_if<PointAtom>(&a)) {
        for (double v : p->point) rad += v * v;
        rad = std::sqrt(rad);
      } else {
        rad = std::get<ShellAtom>(a).radius;
      }
      if (rad > 0.0) periods.push_back(2.0 * kPi / rad);
    }
  }
  InfOutside best{kInf, delta, false};
  // Reference size of Re psi just outside the ball.
  double scale = 0.0;
  for (const auto& d : dirs) {
    auto f = [&](double r) {
      if (radial_model(model)) return re_psi_radial(model, r);
      std::vector<double> xi(d);
      for (double& v : xi) v *= r;
      return eval_re_psi(model, xi);
    };
    std::vector<double> r;
    for (int j = 0; j <= 32 * 48; ++j) r.push_back(delta * std::exp2(j / 32.0));
    for (double p : periods)
      for (int k = 1; k <= 64; ++k)
        if (k * p > delta) r.push_back(k * p);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    std::vector<double> v(r.size());
    std::size_t imin = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      v[i] = f(r[i]);
      if (r[i] <= 2.0 * delta) scale = std::max(scale, v[i]);
      if (v[i] < v[imin]) imin = i;
    }
    double vm = v[imin], rm = r[imin];
    if (imin > 0 && imin + 1 < r.size()) {
      const auto m = boost::math::tools::brent_find_minima(f, r[imin - 1], r[imin + 1], 52);
      if (m.second < vm) {
        vm = m.second;
        rm = m.first;
      }
    }
    if (vm < best.value) best = {vm, rm, false};
  }
  if (best.value <= 1e-9 * scale) {
    best.periodic = true;
    best.value = 0.0;
  }
  return best;
}

double ratio_px_p0(const ModelSpec& model, double t, const std::vector<double>& x) {
  check_t(t);
  const int n = model.dim();
  if (static_cast<int>(x.size()) != n) throw DomainError("x has the wrong dimension");
  double norm2 = 0.0;
  for (double v : x) norm2 += v * v;
  if (norm2 == 0.0) return 1.0;
  double p0 = 0.0, px = 0.0, err = 0.0;
  if (n == 1) {
    Grid g;
    g.dim = 1;
    g.origin = {std::min(0.0, x[0]), 0.0};
    g.step = {std::fabs(x[0]), 1.0};
    g.count = {2, 1};
    const DensityField f = invert_grid(model, t, g);
    p0 = x[0] > 0.0 ? f.values[0] : f.values[1];
    px = x[0] > 0.0 ? f.values[1] : f.values[0];
    err = f.tail_bound;
  } else if (model.isotropic()) {
    const DensityField f = invert_radial(model, t, {0.0, std::sqrt(norm2)});
    p0 = f.values[0];
    px = f.values[1];
    err = f.tail_bound;
  } else {
    const double R = window_radius(model, t);
    if (!std::isfinite(R)) throw Refusal("window insufficient", "e^{-t Re psi} decays too slowly for polar quadrature");
    const double norm = exp_psi_l1(model, t);
    const double L = std::sqrt(norm2);
    p0 = polar_integral(model, t, R, 0.0, 1.0, norm, [](std::span<const double>) { return cplx(1.0); }).real();
    px = polar_integral(model, t, R, L, 1.0, norm, [&x](std::span<const double> xi) {
           double s = 0.0;
           for (std::size_t i = 0; i < xi.size(); ++i) s += x[i] * xi[i];
           return std::polar(1.0, -s);
         }).real();
    err = 1e-13 * norm;
  }
  // |p_t| <= (2 pi)^{-n} ||e^{-t psi}||_1; values far below that are cancellation noise.
  err = std::max(err, 1e-12 * exp_psi_l1(model, t) / std::pow(2.0 * std::numbers::pi, model.dim()));
  if (!(std::fabs(p0) > 10.0 * err)) throw NumericalError("p_t(0) vanishes at working precision", p0);
  return px / p0;
}

double SampledFunction::integral() const {
  const std::size_t n0 = static_cast<std::size_t>(grid.count[0]);
  auto w = [](int i, int count) { return (i == 0 || i == count - 1) && count > 1 ? 0.5 : 1.0; };
  quad::KahanSum s;
  if (grid.dim == 1) {
    for (std::size_t i = 0; i < n0; ++i) s.add(w(static_cast<int>(i), grid.count[0]) * values[i]);
    return s.value() * grid.step[0];
  }
  const std::size_t n1 = static_cast<std::size_t>(grid.count[1]);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j)
      s.add(w(static_cast<int>(i), grid.count[0]) * w(static_cast<int>(j), grid.count[1]) * values[i * n1 + j]);
  return s.value() * grid.step[0] * grid.step[1];
}

SemigroupRatio semigroup_ratio(const ModelSpec& model, const SampledFunction& f, double t,
                               const std::vector<double>& x) {
  check_t(t);
  const int n = model.dim();
  if (f.grid.dim != n) throw DomainError("sample grid and model have different dimensions");
  if (f.values.size() != f.grid.size()) throw DomainError("sample count does not match the grid");
  if (static_cast<int>(x.size()) != n) throw DomainError("x has the wrong dimension");
  for (int a = 0; a < n; ++a)
    if (!(f.grid.step[static_cast<std::size_t>(a)] > 0.0)) throw DomainError("sample grid steps must be positive");

  SemigroupRatio out;
  out.target = f.integral() / std::pow(2.0 * kPi, n);
  out.l1_norm = exp_psi_l1(model, t);
  out.xi_cutoff = std::min(window_radius(model, t), kPi / min_step(f.grid));

  // Trapezoid weights times samples, and the spread of x - z.
  const std::size_t n0 = static_cast<std::size_t>(f.grid.count[0]);
  const std::size_t n1 = n == 2 ? static_cast<std::size_t>(f.grid.count[1]) : 1;
  std::vector<double> wf(f.values.size());
  double g_max = 0.0;
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      double w = f.grid.step[0] * ((i == 0 || i + 1 == n0) && n0 > 1 ? 0.5 : 1.0);
      if (n == 2) w *= f.grid.step[1] * ((j == 0 || j + 1 == n1) && n1 > 1 ? 0.5 : 1.0);
      wf[i * n1 + j] = w * f.values[i * n1 + j];
      g_max += std::fabs(wf[i * n1 + j]);
    }
  double L = 0.0;
  for (int a = 0; a < n; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    const double lo = f.grid.origin[ua], hi = f.grid.coord(a, f.grid.count[ua] - 1);
    L += std::pow(std::max(std::fabs(x[ua] - lo), std::fabs(x[ua] - hi)), 2);
  }
  L = std::sqrt(L);

  // G(xi) = e^{i x.xi} sum_z w f(z) e^{-i z.xi}; the phases run by recurrence along each axis.
  std::vector<cplx> ph0(n0), ph1(n1);
  auto G = [&](std::span<const double> xi) {
    auto fill = [](std::vector<cplx>& ph, double origin, double step, double k) {
      const cplx s = std::polar(1.0, -step * k);
      cplx c = std::polar(1.0, -origin * k);
      for (std::size_t i = 0; i < ph.size(); ++i) {
        ph[i] = c;
        c *= s;
        if (i % 64 == 63) c = std::polar(1.0, -(origin + (i + 1) * step) * k);
      }
    };
    fill(ph0, f.grid.origin[0], f.grid.step[0], xi[0]);
    cplx s = 0.0;
    if (n == 1) {
      for (std::size_t i = 0; i < n0; ++i) s += wf[i] * ph0[i];
      return s * std::polar(1.0, x[0] * xi[0]);
    }
    fill(ph1, f.grid.origin[1], f.grid.step[1], xi[1]);
    for (std::size_t i = 0; i < n0; ++i) {
      cplx row = 0.0;
      for (std::size_t j = 0; j < n1; ++j) row += wf[i * n1 + j] * ph1[j];
      s += row * ph0[i];
    }
    return s * std::polar(1.0, x[0] * xi[0] + x[1] * xi[1]);
  };
  const cplx v = polar_integral(model, t, out.xi_cutoff, L, g_max, out.l1_norm, G);
  out.semigroup_value = v.real() / std::pow(2.0 * kPi, n);
  out.observed = out.semigroup_value / out.l1_norm;
  return out;
}

RatioReport ratio_limit_report(const ModelSpec& model, const SampledFunction& f, const std::vector<double>& x,
                               double delta, std::vector<double> t_grid, double shift) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(shift >= 0.0)) throw DomainError("shift must be nonnegative");
  if (t_grid.empty()) throw DomainError("empty t ladder");
  std::sort(t_grid.begin(), t_grid.end());
  for (double t : t_grid) check_t(t);
  RatioReport rep;
  rep.t_grid = t_grid;
  rep.delta = delta;
  rep.x = x;
  rep.shift = shift;
  rep.m_delta = inf_re_psi_outside(model, delta);
  rep.limit_semigroup = f.integral() / std::pow(2.0 * kPi, model.dim());
  if (!model.symmetric())
    rep.warnings.push_back("complex exponent: int chi_t differs from 1, so the ratio limits need not hold");
  if (rep.m_delta.periodic)
    rep.warnings.push_back("Re psi nearly vanishes away from the origin: e^{-t psi} is not integrable for any t");

  double x_norm = 0.0;
  for (double v : x) x_norm += v * v;
  x_norm = std::sqrt(x_norm);
  const double osc = 2.0 * std::sin(0.5 * std::min(x_norm * delta, kPi));
  const std::vector<double> origin(x.size(), 0.0);
  double outside_t0 = 0.0;
  bool have_t0 = false;
  for (double t : t_grid) {
    RatioRung g;
    g.t = t;
    try {
      require_integrable(model, t);
      g.integrable = true;
      g.l1_norm = exp_psi_l1(model, t);
      g.tail_mass = chi_tail_mass(model, t, delta);
      if (!have_t0) {
        have_t0 = true;
        rep.t0 = t;
        outside_t0 = exp_psi_l1_outside(model, t, delta);
      }
      g.tail_envelope = std::exp(-(t - rep.t0) * rep.m_delta.value) * outside_t0 / g.l1_norm;
      g.envelope_holds = g.tail_mass <= g.tail_envelope * (1.0 + 1e-8) + 1e-300;
      g.semigroup = semigroup_ratio(model, f, t, x);
      // |int chi_t| from the inverted p_t(0).
      const double chi_int = std::fabs(std::pow(2.0 * kPi, model.dim()) * pt_zero(model, t) / g.l1_norm);
      g.px_p0_envelope = (2.0 * g.tail_mass + osc) / std::max(chi_int, 1e-300);
      if (model.symmetric()) g.px_p0_envelope = 2.0 * g.tail_mass + osc;
      g.px_p0 = ratio_px_p0(model, t, x);
      const SemigroupRatio later = semigroup_ratio(model, f, t + shift, origin);
      g.shifted_ratio = g.semigroup.semigroup_value / later.semigroup_value;
    } catch (const Refusal& e) {
      g.refusal = e.what();
    } catch (const NumericalError& e) {
      g.refusal = e.what();
    }
    rep.rungs.push_back(g);
  }
  return rep;
}

SampledFunction gaussian_bump(int dim, double half_width, double step) {
  if (dim != 1 && dim != 2) throw DomainError("sampled functions live in dimension 1 or 2");
  SampledFunction f;
  f.grid = dim == 1 ? Grid::line(-half_width, half_width, step) : Grid::square(-half_width, half_width, step);
  const auto n0 = static_cast<std::size_t>(f.grid.count[0]);
  const std::size_t n1 = dim == 2 ? static_cast<std::size_t>(f.grid.count[1]) : 1;
  f.values.resize(n0 * n1);
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n1; ++j) {
      const double a = f.grid.coord(0, static_cast<int>(i));
      const double b = dim == 2 ? f.grid.coord(1, static_cast<int>(j)) : 0.0;
      f.values[i * n1 + j] = std::exp(-(a * a + b * b));
    }
  return f;
}

}  // namespace levy
