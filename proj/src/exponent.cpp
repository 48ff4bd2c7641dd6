#include "levy/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "levy/errors.hpp"
#include "levy/radial_measure.hpp"
#include "levy/specfun.hpp"

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double one_minus_cos(double u) {
  const double s = std::sin(0.5 * u);
  return 2.0 * s * s;
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void check_dim(const ModelSpec& m, std::span<const double> xi) {
  if (xi.size() != static_cast<std::size_t>(m.dim()))
    throw DomainError("xi has length " + std::to_string(xi.size()) + ", model dimension is " + std::to_string(m.dim()));
}

double gamma_compensator() {
  static const double c = quad::exp_sinh([](double y) { return std::exp(-y) / (1.0 + y * y); }, 0.0, 1e-14).value;
  return c;
}

void require(const quad::Result& r, const quad::Tolerance& tol, const char* what) {
  const double target = std::max(tol.abs, tol.rel * std::fabs(r.value));
  if (!r.converged || !(r.error <= target) || !std::isfinite(r.value))
    throw NumericalError(std::string(what) + " did not reach tolerance", r.error);
}

double tempered_1d(const RadialFamily& f, double s) {
  const double a = f.alpha, lam = f.lambda;
  const double amp = 2.0 * f.scale * stable_constant(1, a);
  if (a == 1.0) return amp * (s * std::atan(s / lam) - 0.5 * lam * std::log1p((s / lam) * (s / lam)));
  const double mod = std::pow(lam * lam + s * s, 0.5 * a);
  return amp * std::tgamma(-a) * (std::pow(lam, a) - mod * std::cos(a * std::atan(s / lam)));
}

bool tempered_closed_form_ok(const RadialFamily& f, double s) {
  return s >= 1e-2 * f.lambda && (f.alpha == 1.0 || std::fabs(f.alpha - 1.0) > 1e-3);
}

double shells_sum(const RadialMeasure& m, double s, detail::Kernel kernel) {
  quad::KahanSum acc;
  const double nu = 0.5 * (m.dim() - 2.0);
  for (const auto& [a, b] : m.shells()) {
    const double z = a * s;
    if (b * z * z < 1e-14 * 1e-3) continue;
    if (kernel == detail::Kernel::cosine || m.dim() == 1)
      acc.add(b * one_minus_cos(z));
    else
      acc.add(b * specfun::one_minus_h_kernel(nu, z));
  }
  return acc.value();
}

// Jump part of Re psi and Im psi.
std::complex<double> jump_part(const ModelSpec& model, std::span<const double> xi, double s, const quad::Tolerance& tol) {
  const auto& meas = model.measure();
  if (std::holds_alternative<NoJumps>(meas)) return {0.0, 0.0};
  if (const auto* at = std::get_if<AtomsMeasure>(&meas)) {
    quad::KahanSum re, im;
    const double nu = 0.5 * (model.dim() - 2.0);
    for (const auto& atom : at->atoms) {
      if (const auto* p = std::get_if<PointAtom>(&atom)) {
        double dot = 0.0, y2 = 0.0;
        for (std::size_t i = 0; i < xi.size(); ++i) {
          dot += p->point[i] * xi[i];
          y2 += p->point[i] * p->point[i];
        }
        re.add(p->mass * one_minus_cos(dot));
        im.add(p->mass * (-std::sin(dot) + dot / (1.0 + y2)));
      } else {
        const auto& sh = std::get<ShellAtom>(atom);
        const double z = sh.radius * s;
        if (sh.mass * z * z < 1e-14 * 1e-3) continue;
        re.add(sh.mass * (model.dim() == 1 ? one_minus_cos(z) : specfun::one_minus_h_kernel(nu, z)));
      }
    }
    return {re.value(), im.value()};
  }
  if (const auto* sub = std::get_if<GammaSubordinator>(&meas)) {
    const double x = xi[0];
    return {sub->scale * 0.5 * std::log1p(x * x), sub->scale * (-std::atan(x) + x * gamma_compensator())};
  }
  if (s == 0.0) return {0.0, 0.0};
  if (const auto* fam = std::get_if<RadialFamily>(&meas)) {
    switch (fam->kind) {
      case RadialFamilyKind::stable: return {fam->scale * std::pow(s, fam->alpha), 0.0};
      case RadialFamilyKind::gamma_type: return {fam->scale * std::log1p(s * s), 0.0};
      case RadialFamilyKind::tempered_stable:
        if (model.dim() == 1 && tempered_closed_form_ok(*fam, s)) return {tempered_1d(*fam, s), 0.0};
        break;
      default: break;
    }
  }
  const auto kernel = model.dim() == 1 ? detail::Kernel::cosine : detail::Kernel::bessel;
  const quad::Result r = detail::radial_transform(*model.radial(), s, kernel, tol);
  require(r, tol, "radial quadrature of psi");
  return {r.value, 0.0};
}

double gaussian_part(const ModelSpec& model, std::span<const double> xi) {
  const int n = model.dim();
  const auto& q = model.gaussian();
  double v = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v += xi[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i * n + j)] * xi[static_cast<std::size_t>(j)];
  return 0.5 * v;
}

// Approximate zeros of the kernel beyond rho: cos has zeros at (k + 1/2) pi, J_nu near (k + nu/2 - 1/4) pi.
double next_kernel_zero(double rho, double nu) {
  const double shift = nu / 2.0 - 0.25;
  const double k = std::ceil(rho / kPi - shift);
  double z = (k + shift) * kPi;
  if (z <= rho) z += kPi;
  return z;
}

}  // namespace

namespace detail {

quad::Result radial_transform(const RadialMeasure& m, double s, Kernel kernel, const quad::Tolerance& tol) {
  if (s == 0.0) return {};
  if (m.discrete()) return {shells_sum(m, s, kernel), 0.0, true};
  const double nu = kernel == Kernel::cosine ? -0.5 : 0.5 * (m.dim() - 2.0);
  auto one_minus_k = [&](double z) {
    return kernel == Kernel::cosine ? one_minus_cos(z) : specfun::one_minus_h_kernel(nu, z);
  };
  auto k_of = [&](double z) { return kernel == Kernel::cosine ? std::cos(z) : specfun::h_kernel(nu, z); };

  constexpr double rho0 = 1e-3;
  constexpr double rho1 = 20.0 * kPi;
  const double r0 = rho0 / s;
  const double r1 = rho1 / s;
  const double end = m.support_end();

  // Taylor region r < r0.
  const double c1 = 1.0 / (4.0 * (nu + 1.0));
  const double c2 = 1.0 / (32.0 * (nu + 1.0) * (nu + 2.0));
  const double m2 = m.moment(2, r0);
  const double m4 = m.moment(4, r0);
  if (!std::isfinite(m2) || !std::isfinite(m4))
    throw NumericalError("second moment of the radial measure diverges near r=0", kInf);
  // Products in logs: s^4 overflows long before s^4 m4 does.
  const double ls = std::log(s);
  const double t2 = m2 > 0.0 ? c1 * std::exp(2.0 * ls + std::log(m2)) : 0.0;
  const double t4 = m4 > 0.0 ? c2 * std::exp(4.0 * ls + std::log(m4)) : 0.0;
  quad::KahanSum total;
  total.add(t2 - t4);
  double err = t4 * 1e-3;

  // Middle region r0 <= r <= min(r1, end), log-spaced panels plus the measure's breakpoints.
  const double mid_end = std::min(r1, end);
  if (mid_end > r0) {
    std::vector<double> cuts;
    for (double r = r0; r < mid_end; r *= 4.0) cuts.push_back(r);
    for (double b : m.breakpoints())
      if (b > r0 && b < mid_end) cuts.push_back(b);
    cuts.push_back(mid_end);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto integrand = [&](double r) { return one_minus_k(r * s) * m.profile(r); };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const quad::Result piece = quad::gauss_kronrod(integrand, cuts[i], cuts[i + 1], 1e-12);
      total.add(piece.value);
      err += piece.error;
    }
  }

  // Tail r > r1: nu(|y| > r1) minus the oscillatory kernel integral.
  bool converged = true;
  if (end > r1) {
    const double t1 = m.tail(r1);
    total.add(t1);
    auto osc = [&](double r) { return k_of(r * s) * m.profile(r); };
    quad::OscillatoryOptions opt;
    opt.support_end = end;
    opt.rel_tol = 1e-3 * tol.rel;
    opt.abs_tol = 1e-3 * std::max(tol.abs, tol.rel * std::fabs(total.value()));
    std::vector<double> bps;
    for (double b : m.breakpoints())
      if (b > r1 && b < end) bps.push_back(b);
    const double first = next_kernel_zero(rho1, nu) / s;
    quad::Result tail;
    if (bps.empty()) {
      tail = quad::oscillatory_tail(osc, r1, first, kPi / s, opt);
    } else {
      // Tables: integrate node intervals directly up to the last node.
      bps.insert(bps.begin(), r1);
      bps.push_back(end);
      quad::KahanSum acc;
      auto half_periods = [&](double a, double b) {
        const auto panels = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) * s / kPi)));
        const double h = (b - a) / static_cast<double>(panels);
        for (std::size_t j = 0; j < panels; ++j) {
          const quad::Result piece = quad::gauss_kronrod(osc, a + j * h, j + 1 == panels ? b : a + (j + 1) * h, 1e-12);
          acc.add(piece.value);
          tail.error += piece.error;
        }
      };
      // High frequencies: Filon panels on the smooth envelope of the kernel.
      const double cnu = kernel == Kernel::cosine ? 1.0 : std::exp2(nu) * std::tgamma(nu + 1.0);
      auto envelope = [&](double r) -> std::complex<double> {
        const double p = m.profile(r);
        if (kernel == Kernel::cosine) return p;
        const double z = r * s;
        return p * cnu * std::pow(z, -nu) * specfun::hankel1_envelope(nu, z);
      };
      constexpr int kFilonDegree = 24;
      const double min_width = 4.0 * kFilonDegree / s;
      for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
        const double a = bps[i], b = bps[i + 1];
        if ((b - a) * s / kPi <= 256.0) {
          half_periods(a, b);
          continue;
        }
        double left = a;
        while (left < b) {
          double right = std::min(b, left + std::max(0.125 * left, min_width));
          if (b - right < min_width) right = b;
          if (right - left < min_width) {
            half_periods(left, right);
          } else {
            double e = 0.0;
            acc.add(quad::filon_exp(envelope, left, right, s, kFilonDegree, &e).real());
            tail.error += e;
          }
          left = right;
        }
      }
      tail.value = acc.value();
    }
    total.add(-tail.value);
    err += tail.error;
    converged = tail.converged;
    if (!tail.converged && std::isfinite(end)) {
      // The sum was extrapolated as if the profile continued past the support end.
      err += m.profile(std::nextafter(end, 0.0)) * std::pow(end * s, -nu - 0.5) * kPi / s;
    }
  }
  return {total.value(), err, converged || err <= std::max(tol.abs, tol.rel * std::fabs(total.value()))};
}

}  // namespace detail

std::complex<double> eval_psi(const ModelSpec& model, std::span<const double> xi, const quad::Tolerance& tol) {
  check_dim(model, xi);
  double drift = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) drift += model.drift()[i] * xi[i];
  const std::complex<double> jump = jump_part(model, xi, norm(xi), tol);
  return {gaussian_part(model, xi) + jump.real(), drift + jump.imag()};
}

double eval_re_psi(const ModelSpec& model, std::span<const double> xi, const quad::Tolerance& tol) {
  return eval_psi(model, xi, tol).real();
}

double re_psi_radial(const ModelSpec& model, double s, const quad::Tolerance& tol) {
  std::vector<double> xi(static_cast<std::size_t>(model.dim()), 0.0);
  xi[0] = s;
  return eval_re_psi(model, xi, tol);
}

double radial_G(const ModelSpec& model, double r) {
  if (!model.measure_radial() || !model.radial()) throw DomainError("radial_G needs a radial measure");
  if (!(r > 0.0)) throw DomainError("radial_G needs r > 0");
  return -specfun::sphere_area(model.dim()) * model.radial()->tail(r);
}

RadialTail radial_tail(const ModelSpec& model) {
  if (!model.measure_radial() || !model.radial()) throw DomainError("radial_tail needs a radial measure");
  RadialTail rt;
  const RadialMeasure* m = model.radial();
  const double omega = specfun::sphere_area(model.dim());
  rt.G = [model, omega](double r) { return -omega * model.radial()->tail(r); };
  if (m->discrete()) {
    for (const auto& sh : m->shells()) rt.nodes.push_back(sh.first);
  } else {
    const double top = std::isfinite(m->support_end()) ? m->support_end() : 1e6;
    for (double r = 1e-8; r < top; r *= std::sqrt(2.0)) rt.nodes.push_back(r);
    for (double b : m->breakpoints()) rt.nodes.push_back(b);
    rt.nodes.push_back(top);
    std::sort(rt.nodes.begin(), rt.nodes.end());
    rt.nodes.erase(std::unique(rt.nodes.begin(), rt.nodes.end()), rt.nodes.end());
  }
  return rt;
}

double iso_g(const ModelSpec& model, double u, const quad::Tolerance& tol) {
  if (!model.isotropic()) throw DomainError("iso_g needs an isotropic model");
  if (!(u >= 0.0)) throw DomainError("iso_g needs u >= 0");
  if (u == 0.0) return 0.0;
  const quad::Result r = detail::radial_transform(*model.radial(), u, detail::Kernel::bessel, tol);
  require(r, tol, "radial quadrature of g");
  return r.value;
}

double g_inverse(const ModelSpec& model, double x, const quad::Tolerance& tol) {
  if (!model.isotropic()) throw DomainError("g_inverse needs an isotropic model");
  if (!(x >= 0.0)) throw DomainError("g_inverse needs x >= 0");
  if (x == 0.0) return 0.0;
  auto g = [&](double v) { return re_psi_radial(model, std::sqrt(v), tol); };
  // Bracket on a ladder v = 4^k, checking monotonicity along the way.
  double v_hi = 1.0, g_hi = g(v_hi);
  double v_lo = 0.0, g_lo = 0.0;
  if (g_hi >= x) {
    double v = v_hi, gv = g_hi;
    while (true) {
      const double vn = 0.25 * v;
      const double gn = g(vn);
      if (gn > gv * (1.0 + 1e-10) + 1e-300) throw DomainError("g is not monotone on the evaluation window");
      if (gn < x || vn < 1e-280) {
        v_lo = vn;
        g_lo = gn;
        v_hi = v;
        g_hi = gv;
        break;
      }
      v = vn;
      gv = gn;
    }
    if (g_lo >= x) return v_lo;
  } else {
    double v = v_hi, gv = g_hi;
    while (gv < x) {
      const double vn = 4.0 * v;
      if (vn > 1e290) throw DomainError("x lies above the attainable range of g on the evaluation window");
      const double gn = g(vn);
      if (gn < gv * (1.0 - 1e-10)) throw DomainError("g is not monotone on the evaluation window");
      v_lo = v;
      g_lo = gv;
      v = vn;
      gv = gn;
    }
    v_hi = v;
    g_hi = gv;
  }
  {
    double prev = g_lo;
    for (int i = 1; i <= 16; ++i) {
      const double gi = g(v_lo + (v_hi - v_lo) * i / 16.0);
      if (gi < prev * (1.0 - 1e-10)) throw DomainError("g is not monotone on the evaluation window");
      prev = gi;
    }
  }
  // Root of g(e^w) - x on [ln v_lo, ln v_hi].
  auto f = [&](double w) { return g(std::exp(w)) - x; };
  std::uintmax_t iters = 200;
  const double wl = std::log(v_lo), wh = std::log(v_hi);
  const auto br = boost::math::tools::toms748_solve(f, wl, wh, g_lo - x, g_hi - x,
                                                    boost::math::tools::eps_tolerance<double>(50), iters);
  double v = std::exp(br.second);
  for (int i = 0; i < 8 && g(v) < x; ++i) v = std::nextafter(v, kInf) * (1.0 + 4e-16);
  const double vl = std::exp(br.first);
  if (vl < v && g(vl) >= x) v = vl;
  return v;
}

double small_jump_moment(const ModelSpec& model, double eps) {
  if (model.radial()) return model.radial()->moment(2, eps);
  quad::KahanSum s;
  for (const auto& atom : std::get<AtomsMeasure>(model.measure()).atoms) {
    const auto& p = std::get<PointAtom>(atom);
    double y2 = 0.0;
    for (double v : p.point) y2 += v * v;
    if (y2 <= eps * eps) s.add(p.mass * y2);
  }
  return s.value();
}

double large_jump_mass(const ModelSpec& model, double eps) {
  if (model.radial()) return model.radial()->tail(eps);
  quad::KahanSum s;
  for (const auto& atom : std::get<AtomsMeasure>(model.measure()).atoms) {
    const auto& p = std::get<PointAtom>(atom);
    double y2 = 0.0;
    for (double v : p.point) y2 += v * v;
    if (y2 > eps * eps) s.add(p.mass);
  }
  return s.value();
}

QuadraticMajorant quadratic_majorant(const ModelSpec& model, double R) {
  if (!(R > 0.0)) throw DomainError("quadratic_majorant needs R > 0");
  const double m2 = small_jump_moment(model, R);
  if (!std::isfinite(m2)) throw NumericalError("second moment of the jump measure diverges", kInf);
  return {0.5 * (model.gaussian_norm() + m2), 2.0 * large_jump_mass(model, R)};
}

double lk_direct_re_psi(const ModelSpec& model, std::span<const double> xi, const quad::Tolerance& tol) {
  check_dim(model, xi);
  if (!model.measure_radial() || !model.radial()) throw DomainError("lk_direct_re_psi needs a radial measure");
  const double s = norm(xi);
  const double gauss = gaussian_part(model, xi);
  if (s == 0.0) return 0.0;
  const RadialMeasure& m = *model.radial();
  const quad::Tolerance inner{0.1 * tol.abs, 0.1 * tol.rel};
  auto phi = [&](double sigma) {
    if (sigma <= 0.0) return 0.0;
    const quad::Result r = detail::radial_transform(m, sigma, detail::Kernel::cosine, inner);
    require(r, inner, "cosine transform");
    return r.value;
  };
  const int n = model.dim();
  if (n == 1) return gauss + phi(s);
  const double w = specfun::sphere_area(n - 1) / specfun::sphere_area(n);
  auto integrand = [&](double theta) { return phi(s * std::cos(theta)) * std::pow(std::sin(theta), n - 2); };
  const quad::Result r = quad::tanh_sinh(integrand, 0.0, 0.5 * kPi, 1e-11);
  require({r.value, r.error, true}, {1e-3 * tol.abs, 1e-2 * tol.rel}, "angular average");
  return gauss + 2.0 * w * r.value;
}

double Symbol::operator()(std::span<const double> xi) const {
  const double v = eval_re_psi(model_, xi);
  return transform_ == SymbolTransform::log1p ? std::log1p(v) : v;
}

double Symbol::radial(double s) const {
  const double v = re_psi_radial(model_, s);
  return transform_ == SymbolTransform::log1p ? std::log1p(v) : v;
}

std::vector<std::vector<double>> direction_set(int n) {
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < n; ++i) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    dirs.push_back(e);
  }
  if (n >= 2) {
    // Sign patterns with the first coordinate fixed positive: 2^{n-1} diagonals.
    const double c = 1.0 / std::sqrt(static_cast<double>(n));
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      std::vector<double> d(static_cast<std::size_t>(n), c);
      for (int i = 1; i < n; ++i)
        if (mask & (1u << (i - 1))) d[static_cast<std::size_t>(i)] = -c;
      dirs.push_back(d);
    }
  }
  return dirs;
}

double slowest_re_psi(const ModelSpec& model, double r) {
  const int n = model.dim();
  if (n == 1 || model.isotropic()) return re_psi_radial(model, r);
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : direction_set(n)) {
    std::vector<double> xi(d);
    for (double& v : xi) v *= r;
    m = std::min(m, eval_re_psi(model, xi));
  }
  return m;
}

}  // namespace levy
