#include "levy/radial_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "levy/errors.hpp"
#include "levy/quadrature.hpp"
#include "levy/specfun.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class FamilyRadial final : public RadialMeasure {
 public:
  FamilyRadial(int dim, const RadialFamily& fam) : RadialMeasure(dim), fam_(fam) {
    omega_ = specfun::sphere_area(dim);
    switch (fam.kind) {
      case RadialFamilyKind::stable:
      case RadialFamilyKind::tempered_stable:
      case RadialFamilyKind::truncated_stable:
        if (!(fam.alpha > 0.0 && fam.alpha < 2.0)) throw DomainError("stable-type alpha must lie in (0, 2)");
        amp_ = omega_ * fam.scale * stable_constant(dim, fam.alpha);
        break;
      case RadialFamilyKind::log_kernel:
      case RadialFamilyKind::gamma_type:
        amp_ = omega_ * fam.scale;
        break;
    }
    if (fam.kind == RadialFamilyKind::tempered_stable && !(fam.lambda > 0.0))
      throw DomainError("tempered_stable needs lambda > 0");
    if (fam.kind == RadialFamilyKind::truncated_stable && !(fam.radius > 0.0))
      throw DomainError("truncated_stable needs radius > 0");
  }

  bool discrete() const override { return false; }

  double profile(double r) const override {
    if (!(r > 0.0)) return 0.0;
    const int n = dim();
    switch (fam_.kind) {
      case RadialFamilyKind::stable: return amp_ * std::pow(r, -1.0 - fam_.alpha);
      case RadialFamilyKind::tempered_stable: return amp_ * std::pow(r, -1.0 - fam_.alpha) * std::exp(-fam_.lambda * r);
      case RadialFamilyKind::truncated_stable: return r < fam_.radius ? amp_ * std::pow(r, -1.0 - fam_.alpha) : 0.0;
      case RadialFamilyKind::log_kernel: return r < 1.0 ? amp_ * std::pow(r, n - 2.0) * std::log(1.0 / r) : 0.0;
      case RadialFamilyKind::gamma_type:
        if (n == 1) return 2.0 * fam_.scale * std::exp(-r) / r;
        if (r > 700.0) return 0.0;
        return amp_ * std::pow(r, n - 1.0) * 2.0 * std::pow(2.0 * std::numbers::pi * r, -0.5 * n) *
               specfun::bessel_k(0.5 * n, r).value;
    }
    return 0.0;
  }

  double tail(double r) const override {
    if (!(r > 0.0)) return kInf;
    const double a = fam_.alpha;
    const int n = dim();
    switch (fam_.kind) {
      case RadialFamilyKind::stable: return amp_ * std::pow(r, -a) / a;
      case RadialFamilyKind::truncated_stable:
        return r < fam_.radius ? amp_ * (std::pow(r, -a) - std::pow(fam_.radius, -a)) / a : 0.0;
      case RadialFamilyKind::tempered_stable: {
        const double lam = fam_.lambda;
        return amp_ * std::pow(lam, a) * upper_gamma(-a, lam * r);
      }
      case RadialFamilyKind::log_kernel: {
        if (r >= 1.0) return 0.0;
        const double lr = std::log(r);
        if (n == 1) return 0.5 * amp_ * lr * lr;
        const double m = n - 1.0;
        const double rm = std::pow(r, m);
        return amp_ * (1.0 / (m * m) + rm * lr / m - rm / (m * m));
      }
      case RadialFamilyKind::gamma_type:
        if (n == 1) return 2.0 * fam_.scale * boost::math::expint(1, r);
        return quad::exp_sinh([this](double x) { return profile(x); }, r, 1e-12).value;
    }
    return 0.0;
  }

  double moment(int k, double r) const override {
    if (!(r > 0.0)) return 0.0;
    const double a = fam_.alpha;
    const int n = dim();
    switch (fam_.kind) {
      case RadialFamilyKind::stable:
      case RadialFamilyKind::truncated_stable: {
        if (k <= a) return kInf;
        const double rr = fam_.kind == RadialFamilyKind::truncated_stable ? std::min(r, fam_.radius) : r;
        return amp_ * std::pow(rr, k - a) / (k - a);
      }
      case RadialFamilyKind::tempered_stable: {
        if (k <= a) return kInf;
        const double lam = fam_.lambda;
        return amp_ * std::pow(lam, a - k) * boost::math::tgamma_lower(k - a, lam * r);
      }
      case RadialFamilyKind::log_kernel: {
        const double rr = std::min(r, 1.0);
        const double p = k + n - 1.0;
        if (p <= 0.0) return kInf;
        return amp_ * std::pow(rr, p) * (1.0 / (p * p) - std::log(rr) / p);
      }
      case RadialFamilyKind::gamma_type:
        if (n == 1) return 2.0 * fam_.scale * boost::math::tgamma_lower(static_cast<double>(k), r);
        if (k < 1) return kInf;
        return quad::tanh_sinh(
                   [this, k](double x) {
                     const double v = x > 0.0 ? std::pow(x, k) * profile(x) : 0.0;
                     return std::isfinite(v) ? v : 0.0;
                   },
                   0.0, r, 1e-12)
            .value;
    }
    return 0.0;
  }

  double support_end() const override {
    switch (fam_.kind) {
      case RadialFamilyKind::truncated_stable: return fam_.radius;
      case RadialFamilyKind::log_kernel: return 1.0;
      default: return kInf;
    }
  }

  std::vector<double> breakpoints() const override {
    const double e = support_end();
    if (std::isfinite(e)) return {e};
    return {};
  }

 private:
  RadialFamily fam_;
  double omega_ = 0.0;
  double amp_ = 0.0;
};

class TableRadial final : public RadialMeasure {
 public:
  TableRadial(int dim, const RadialTable& t) : RadialMeasure(dim), t_(t) {
    const auto& r = t.radii;
    const auto& d = t.density;
    if (r.size() < 2 || r.size() != d.size()) throw DomainError("radial table needs >= 2 matching samples");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!(r[i] > 0.0)) throw DomainError("radial table radii must be positive");
      if (i > 0 && !(r[i] > r[i - 1])) throw DomainError("radial table radii must increase");
      if (!(d[i] >= 0.0) || !std::isfinite(d[i])) throw DomainError("radial table densities must be finite and >= 0");
    }
    omega_ = specfun::sphere_area(dim);
    for (int k : {0, 2, 4}) {
      std::vector<double> cum(r.size(), 0.0);
      for (std::size_t i = 1; i < r.size(); ++i) cum[i] = cum[i - 1] + segment(k, r[i - 1], r[i]);
      cum_.push_back(std::move(cum));
    }
  }

  bool discrete() const override { return false; }

  double profile(double r) const override {
    const auto& rr = t_.radii;
    if (!(r >= rr.front() && r <= rr.back())) return 0.0;
    const std::size_t i = interval(r);
    const double r0 = rr[i], r1 = rr[i + 1];
    const double k0 = t_.density[i], k1 = t_.density[i + 1];
    double k;
    if (t_.interpolation == Interpolation::loglog && k0 > 0.0 && k1 > 0.0) {
      const double w = std::log(r / r0) / std::log(r1 / r0);
      k = std::exp((1.0 - w) * std::log(k0) + w * std::log(k1));
    } else {
      const double w = (r - r0) / (r1 - r0);
      k = (1.0 - w) * k0 + w * k1;
    }
    return omega_ * std::pow(r, dim() - 1.0) * k;
  }

  double tail(double r) const override {
    const auto& rr = t_.radii;
    if (r >= rr.back()) return 0.0;
    const auto& c = cum_[0];
    if (r <= rr.front()) return c.back();
    const std::size_t i = interval(r);
    return c.back() - c[i + 1] + segment(0, r, rr[i + 1]);
  }

  double moment(int k, double r) const override {
    const auto& rr = t_.radii;
    if (r <= rr.front()) return 0.0;
    const double top = std::min(r, rr.back());
    const std::size_t i = interval(top);
    const double base = (k == 0 || k == 2 || k == 4) ? cum_[k / 2][i] : cumulative(k, i);
    return base + segment(k, rr[i], top);
  }

  double support_end() const override { return t_.radii.back(); }
  std::vector<double> breakpoints() const override { return t_.radii; }

 private:
  std::size_t interval(double r) const {
    const auto& rr = t_.radii;
    auto it = std::upper_bound(rr.begin(), rr.end(), r);
    std::size_t i = it == rr.begin() ? 0 : static_cast<std::size_t>(it - rr.begin()) - 1;
    return std::min(i, rr.size() - 2);
  }
  double segment(int k, double a, double b) const {
    if (b <= a) return 0.0;
    return quad::gauss_kronrod([&](double x) { return std::pow(x, k) * profile(x); }, a, b, 1e-13).value;
  }
  double cumulative(int k, std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 1; j <= i; ++j) s += segment(k, t_.radii[j - 1], t_.radii[j]);
    return s;
  }

  RadialTable t_;
  double omega_ = 0.0;
  std::vector<std::vector<double>> cum_;
};

class ShellRadial final : public RadialMeasure {
 public:
  ShellRadial(int dim, std::vector<std::pair<double, double>> shells) : RadialMeasure(dim), shells_(std::move(shells)) {
    std::sort(shells_.begin(), shells_.end());
  }
  bool discrete() const override { return true; }
  double profile(double) const override { return 0.0; }
  double tail(double r) const override {
    quad::KahanSum s;
    for (const auto& [a, b] : shells_)
      if (a > r) s.add(b);
    return s.value();
  }
  double moment(int k, double r) const override {
    quad::KahanSum s;
    for (const auto& [a, b] : shells_)
      if (a <= r) s.add(b * std::pow(a, k));
    return s.value();
  }
  double support_end() const override { return shells_.empty() ? 0.0 : shells_.back().first; }
  const std::vector<std::pair<double, double>>& shells() const override { return shells_; }

 private:
  std::vector<std::pair<double, double>> shells_;
};

}  // namespace

const std::vector<std::pair<double, double>>& RadialMeasure::shells() const {
  static const std::vector<std::pair<double, double>> empty;
  return empty;
}

double stable_constant(int n, double alpha) {
  return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (n + alpha)) /
         (std::pow(std::numbers::pi, 0.5 * n) * std::tgamma(1.0 - 0.5 * alpha));
}

double upper_gamma(double s, double x) {
  if (!(x > 0.0)) throw DomainError("upper_gamma needs x > 0");
  if (s > 0.0) return boost::math::tgamma(s, x);
  if (s == 0.0) return boost::math::expint(1, x);
  if (s <= -3.0) throw DomainError("upper_gamma parameter out of range");
  return (upper_gamma(s + 1.0, x) - std::pow(x, s) * std::exp(-x)) / s;
}

std::shared_ptr<const RadialMeasure> make_family_radial(int dim, const RadialFamily& fam) {
  return std::make_shared<FamilyRadial>(dim, fam);
}

std::shared_ptr<const RadialMeasure> make_table_radial(int dim, const RadialTable& table) {
  return std::make_shared<TableRadial>(dim, table);
}

std::shared_ptr<const RadialMeasure> make_shell_radial(int dim, std::vector<std::pair<double, double>> shells) {
  return std::make_shared<ShellRadial>(dim, std::move(shells));
}

}  // namespace levy
