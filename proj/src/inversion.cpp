#include "levy/inversion.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "levy/errors.hpp"
#include "levy/radial_measure.hpp"
#include "levy/specfun.hpp"

namespace levy {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
using cplx = std::complex<double>;

struct Nodes {
  std::vector<double> x;
  std::vector<double> w;
};

void add_panel(Nodes& q, double a, double b) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const auto& abs = GL::abscissa();
  const auto& wts = GL::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (std::size_t i = 0; i < abs.size(); ++i) {
    q.x.push_back(c - h * abs[i]);
    q.w.push_back(h * wts[i]);
    if (abs[i] != 0.0) {
      q.x.push_back(c + h * abs[i]);
      q.w.push_back(h * wts[i]);
    }
  }
}

// Gauss-Legendre panels of width at most w on [0, R], graded towards 0.
Nodes core_nodes(double R, double w) {
  Nodes q;
  w = std::min(w, R);
  double lo = w * std::ldexp(1.0, -24);
  add_panel(q, 0.0, lo);
  for (int j = 23; j >= 0; --j) {
    const double hi = w * std::ldexp(1.0, -j);
    add_panel(q, lo, hi);
    lo = hi;
  }
  const auto panels = static_cast<std::size_t>(std::ceil((R - w) / w - 1e-9));
  for (std::size_t k = 0; k < panels; ++k) add_panel(q, w + k * w, std::min(R, w + (k + 1) * w));
  return q;
}

std::size_t core_node_count(double R, double w) {
  return static_cast<std::size_t>(20.0 * (25.0 + std::max(0.0, std::ceil(R / std::min(w, R)) - 1.0)));
}

// Decay ladder r = 2^k for e^{-L(r)} r^{n-1}.
IntegrabilityProbe ladder(const std::function<double(double)>& L, int n) {
  IntegrabilityProbe pr;
  double ref = 0.0;
  for (int k = -30; k <= 0; ++k) {
    const double r = std::ldexp(1.0, k);
    ref = std::max(ref, std::exp(-L(r)) * std::pow(r, n));
  }
  double prev = L(1.0);
  std::vector<double> slopes;
  for (int k = 1; k <= 62; ++k) {
    const double R = std::ldexp(1.0, k);
    const double Lk = L(R);
    const double p = (Lk - prev) / std::numbers::ln2;
    slopes.push_back(p);
    prev = Lk;
    ref = std::max(ref, std::exp(-Lk) * std::pow(R, n));
    pr.probed_to = R;
    pr.exponent = p;
    if (!std::isfinite(Lk)) {
      pr.integrable = true;
      pr.negligible_from = R;
      return pr;
    }
    if (p > n + 0.05) {
      const double tail = std::exp(-Lk) * std::pow(R, n) / (p - n);
      if (tail <= 1e-16 * ref) {
        pr.integrable = true;
        pr.negligible_from = R;
        return pr;
      }
    }
  }
  // Slow decay: judge by the last rungs.
  double s = 0.0;
  for (std::size_t i = slopes.size() - 4; i < slopes.size(); ++i) s += slopes[i];
  pr.exponent = s / 4.0;
  pr.integrable = pr.exponent > n + 0.05;
  return pr;
}

// Finite jump measure and no Gaussian part: Re psi <= 2 nu(R^n), so e^{-t Re psi} stays away from 0.
bool bounded_re_psi(const ModelSpec& model) {
  const MeasureSpec& ms = model.measure();
  const bool finite = std::holds_alternative<NoJumps>(ms) || std::holds_alternative<AtomsMeasure>(ms) ||
                      std::holds_alternative<RadialTable>(ms);
  return finite && model.gaussian_norm() == 0.0;
}

void refuse_if_bounded(const ModelSpec& model, double t) {
  if (bounded_re_psi(model))
    throw Refusal("not integrable", "finite jump measure without a Gaussian part: Re psi is bounded, so e^{-t Re psi} "
                                    "is not integrable at t=" + std::to_string(t));
}

[[noreturn]] void refuse(const IntegrabilityProbe& pr, int n, double t) {
  throw Refusal("not integrable",
                "e^{-t Re psi} decays like |xi|^{-" + std::to_string(pr.exponent) + "} at t=" + std::to_string(t) +
                    ", which is not integrable in dimension " + std::to_string(n) + " on the probed window");
}

double trapezoid(const std::vector<double>& v, std::size_t stride, std::size_t count, std::size_t offset, double h) {
  if (count == 0) return 0.0;
  if (count == 1) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double f = v[offset + i * stride];
    s += (i == 0 || i + 1 == count) ? 0.5 * f : f;
  }
  return s * h;
}

using Weight = std::function<double(std::span<const double>)>;

void finish_mass_1d(DensityField& f) {
  const std::size_t n = f.values.size();
  const double h = f.grid.step[0];
  f.mass = trapezoid(f.values, 1, n, 0, h);
  if (n >= 5 && (n - 1) % 2 == 0) {
    const double coarse = trapezoid(f.values, 2, (n - 1) / 2 + 1, 0, 2.0 * h);
    f.mass_error = std::fabs(f.mass - coarse);
  }
  const double span = h * static_cast<double>(n > 0 ? n - 1 : 0);
  f.mass_error += f.tail_bound * span;
}

DensityField invert_1d(const ModelSpec& model, double t, const Grid& grid, const Weight* weight,
                       const InversionOptions& opt) {
  auto F = [&](double xi) -> cplx {
    const std::vector<double> v{xi};
    const cplx e = std::exp(-t * eval_psi(model, v));
    return weight ? (*weight)(v) * e : e;
  };
  auto L = [&](double r) {
    const std::vector<double> v{r};
    double l = t * eval_re_psi(model, v);
    if (weight) {
      const double w = std::fabs((*weight)(v));
      l -= w > 0.0 ? std::log(w) : -kInf;
    }
    return l;
  };
  const IntegrabilityProbe pr = ladder(L, 1);
  if (!pr.integrable) refuse(pr, 1, t);

  const std::size_t nx = static_cast<std::size_t>(grid.count[0]);
  double xmax = 0.0;
  for (std::size_t j = 0; j < nx; ++j) xmax = std::max(xmax, std::fabs(grid.coord(0, static_cast<int>(j))));
  // The phase of e^{-t psi} turns at rate about t |Im psi(xi)| / xi (drift and asymmetric jumps).
  double phase_rate = 0.0;
  for (int j = -20; j <= 6; ++j) {
    const double xi = std::ldexp(1.0, j);
    phase_rate = std::max(phase_rate, t * std::fabs(eval_psi(model, std::vector<double>{xi}).imag()) / xi);
  }
  const double reach = xmax + phase_rate;
  const double width = reach > 0.0 ? std::min(1.0, kPi / reach) : 1.0;

  // Core window: up to the negligible radius if affordable, else a capped window plus per-point tails.
  double core = pr.negligible_from;
  bool tails = false;
  const double budget = opt.work_budget / static_cast<double>(std::max<std::size_t>(nx, 1));
  if (core == 0.0 || static_cast<double>(core_node_count(core, width)) > budget) {
    tails = true;
    core = 64.0;
    while (core > 8.0 && static_cast<double>(core_node_count(core, width)) > budget) core *= 0.5;
  }
  const Nodes q = core_nodes(core, width);

  std::vector<cplx> acc(nx, 0.0), acc_res(nx, 0.0);
  const double x0 = grid.origin[0], h = grid.step[0];
  const double x1 = grid.coord(0, grid.count[0] - 1);
  // Mass of [x0, x1] from the same nodes: (1/pi) int Re[F (e^{-i x0 xi} - e^{-i x1 xi}) / (i xi)].
  double window_mass = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    const double xi = q.x[k];
    const cplx fp = F(xi) * q.w[k];
    const cplx fm = F(-xi) * q.w[k];
    window_mass += (fp * (std::polar(1.0, -x0 * xi) - std::polar(1.0, -x1 * xi)) / cplx(0.0, xi)).real();
    cplx z = std::polar(1.0, -x0 * xi);
    const cplx step = std::polar(1.0, -h * xi);
    for (std::size_t j = 0; j < nx; ++j) {
      acc[j] += fp * z;
      acc_res[j] += fm * std::conj(z);
      if ((j & 63u) == 63u)
        z = std::polar(1.0, -(x0 + static_cast<double>(j + 1) * h) * xi);
      else
        z *= step;
    }
  }

  DensityField f;
  f.layout = DensityField::Layout::lattice;
  f.grid = grid;
  f.dim = 1;
  f.t = t;
  f.xi_window = core;
  f.values.resize(nx);
  double tail_err = 0.0;
  for (std::size_t j = 0; j < nx; ++j) {
    double v = acc[j].real();
    const double im = (acc[j] + acc_res[j]).imag() / (2.0 * kPi);
    f.imag_residue = std::max(f.imag_residue, std::fabs(im));
    if (tails) {
      const double x = grid.coord(0, static_cast<int>(j));
      quad::Result r;
      if (x == 0.0) {
        r = quad::half_line_decaying([&](double xi) { return F(xi).real(); }, core, 1e-12);
      } else {
        auto g = [&](double xi) {
          const cplx e = F(xi) * std::polar(1.0, -x * xi);
          return e.real();
        };
        quad::OscillatoryOptions oo;
        oo.rel_tol = 1e-12;
        oo.abs_tol = 1e-15;
        const double hp = kPi / std::fabs(x);
        r = quad::oscillatory_tail(g, core, core + hp, hp, oo);
      }
      if (!r.converged) throw NumericalError("oscillatory tail of the inversion integral did not converge", r.error);
      v += r.value;
      tail_err = std::max(tail_err, r.error);
    }
    f.values[j] = v / kPi;
  }
  f.tail_bound = tail_err / kPi;
  if (!tails) f.tail_bound += std::exp(-L(core)) * core / kPi;
  window_mass /= kPi;
  double window_tail = 0.0;
  if (tails) window_tail = quad::half_line_decaying([&](double xi) { return 2.0 * std::abs(F(xi)) / xi; }, core, 1e-6).value / kPi;
  f.outside_mass = F(0.0).real() - window_mass;
  finish_mass_1d(f);
  f.mass_error += std::fabs(f.outside_mass) + window_tail;
  return f;
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

DensityField invert_2d(const ModelSpec& model, double t, const Grid& grid, const Weight* weight,
                       const InversionOptions& opt) {
  auto L = [&](double r) { return t * slowest_re_psi(model, r); };
  IntegrabilityProbe pr = ladder(L, 2);
  if (!pr.integrable) refuse(pr, 2, t);
  if (weight) {
    // Polynomial weights move the window out; probe the weighted integrand along the first axis.
    auto Lw = [&](double r) {
      const std::vector<double> v{r, 0.0};
      const double w = std::fabs((*weight)(v));
      return L(r) - (w > 0.0 ? std::log(w) : -kInf);
    };
    pr = ladder(Lw, 2);
    if (!pr.integrable) refuse(pr, 2, t);
  }
  if (pr.negligible_from == 0.0 || pr.negligible_from > 4096.0)
    throw Refusal("window insufficient", "e^{-t Re psi} does not fall below the window floor within |xi| <= 4096 at t=" +
                                             std::to_string(t) + "; the two-dimensional lattice inversion needs fast decay");
  const double R = pr.negligible_from;

  std::array<int, 2> over{}, M{};
  std::array<double, 2> hint{}, dxi{};
  for (int a = 0; a < 2; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    over[ua] = std::max(1, static_cast<int>(std::ceil(R * grid.step[ua] / kPi)));
    hint[ua] = grid.step[ua] / over[ua];
    std::size_t need = next_pow2(static_cast<std::size_t>(4 * grid.count[ua] * over[ua]));
    need = std::max<std::size_t>(need, std::min<std::size_t>(512, static_cast<std::size_t>(opt.max_fft)));
    while (need > static_cast<std::size_t>(opt.max_fft) && need > static_cast<std::size_t>(2 * grid.count[ua] * over[ua]))
      need >>= 1;
    if (need > static_cast<std::size_t>(opt.max_fft))
      throw NumericalError("two-dimensional inversion exceeds the FFT size cap", static_cast<double>(need));
    M[ua] = static_cast<int>(need);
    dxi[ua] = 2.0 * kPi / (M[ua] * hint[ua]);
  }

  // Radial models whose exponent needs quadrature are tabulated in |xi| once.
  std::function<cplx(double, double)> psi;
  std::unique_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline;
  const bool tabulate = model.isotropic() && model.radial() && !model.radial()->discrete() &&
                        std::holds_alternative<RadialFamily>(model.measure()) &&
                        std::get<RadialFamily>(model.measure()).kind != RadialFamilyKind::stable &&
                        std::get<RadialFamily>(model.measure()).kind != RadialFamilyKind::gamma_type;
  if (tabulate || (model.isotropic() && std::holds_alternative<RadialTable>(model.measure()))) {
    const double smax = std::hypot(0.5 * M[0] * dxi[0], 0.5 * M[1] * dxi[1]) * 1.001;
    const int ns = 8192;
    const double ds = smax / (ns - 1);
    std::vector<double> gs(ns);
    for (int i = 0; i < ns; ++i) gs[static_cast<std::size_t>(i)] = re_psi_radial(model, i * ds);
    spline = std::make_unique<boost::math::interpolators::cardinal_cubic_b_spline<double>>(gs.begin(), gs.end(), 0.0, ds);
    psi = [&spline](double a, double b) { return cplx((*spline)(std::hypot(a, b)), 0.0); };
  } else {
    psi = [&model](double a, double b) { return eval_psi(model, std::vector<double>{a, b}); };
  }

  const std::size_t total = static_cast<std::size_t>(M[0]) * static_cast<std::size_t>(M[1]);
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
  if (!buf) throw NumericalError("FFT buffer allocation failed", 0.0);
  double window_err = 0.0;
  cplx sum0 = 0.0;
  for (int a = 0; a < M[0]; ++a) {
    const int ka = a < M[0] / 2 ? a : a - M[0];
    const double xa = ka * dxi[0];
    for (int b = 0; b < M[1]; ++b) {
      const int kb = b < M[1] / 2 ? b : b - M[1];
      const double xb = kb * dxi[1];
      cplx e = std::exp(-t * psi(xa, xb));
      if (weight) e *= (*weight)(std::vector<double>{xa, xb});
      if (a == M[0] / 2 || b == M[1] / 2) window_err = std::max(window_err, std::abs(e));
      sum0 += e;
      const cplx v = e * std::polar(1.0, -(grid.origin[0] * xa + grid.origin[1] * xb));
      const std::size_t idx = static_cast<std::size_t>(a) * static_cast<std::size_t>(M[1]) + static_cast<std::size_t>(b);
      buf[idx][0] = v.real();
      buf[idx][1] = v.imag();
    }
  }
  fftw_plan plan = fftw_plan_dft_2d(M[0], M[1], buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  const double scale = dxi[0] * dxi[1] / (4.0 * kPi * kPi);
  DensityField f;
  f.layout = DensityField::Layout::lattice;
  f.grid = grid;
  f.dim = 2;
  f.t = t;
  f.xi_window = R;
  f.values.resize(grid.size());
  for (int i = 0; i < grid.count[0]; ++i)
    for (int j = 0; j < grid.count[1]; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i * over[0]) * static_cast<std::size_t>(M[1]) +
                              static_cast<std::size_t>(j * over[1]);
      f.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.count[1]) + static_cast<std::size_t>(j)] =
          buf[idx][0] * scale;
      f.imag_residue = std::max(f.imag_residue, std::fabs(buf[idx][1] * scale));
    }
  fftw_free(buf);

  // The lattice sum at x = 0 against the independent radial or polar value of p_t(0).
  f.tail_bound = window_err * M[0] * M[1] * scale;
  if (!weight) {
    const double p0 = pt_zero(model, t);
    const double alias = std::fabs(sum0.real() * scale - p0);
    if (alias > 1e-3 * p0) throw NumericalError("aliasing check failed for the two-dimensional lattice", alias / p0);
    // Images decay away from the origin, so twice the aliasing seen at 0 bounds the rest.
    f.tail_bound += 2.0 * alias;
  }

  const double hx = grid.step[0], hy = grid.step[1];
  const auto ny = static_cast<std::size_t>(grid.count[1]);
  double mass = 0.0;
  std::vector<double> rows(static_cast<std::size_t>(grid.count[0]));
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = trapezoid(f.values, 1, ny, i * ny, hy);
  mass = trapezoid(rows, 1, rows.size(), 0, hx);
  f.mass = mass;
  f.mass_error = f.tail_bound * (hx * (grid.count[0] - 1)) * (hy * (grid.count[1] - 1));
  return f;
}

DensityField invert_any(const ModelSpec& model, double t, const Grid& grid, const Weight* weight,
                        const InversionOptions& opt) {
  if (!(t > 0.0)) throw DomainError("inversion needs t > 0");
  refuse_if_bounded(model, t);
  if (grid.dim != model.dim()) throw DomainError("grid dimension does not match the model");
  if (grid.count[0] < 1 || (grid.dim == 2 && grid.count[1] < 1)) throw DomainError("empty grid");
  if (grid.dim == 1) return invert_1d(model, t, grid, weight, opt);
  if (grid.dim == 2) {
    if (!model.symmetric()) throw DomainError("asymmetric exponents are inverted in dimension one only");
    return invert_2d(model, t, grid, weight, opt);
  }
  throw DomainError("lattice inversion supports dimensions 1 and 2");
}

// int_0^inf e^{-L(r)} r^{n-1} dr after an integrability probe.
double radial_mass(const std::function<double(double)>& L, int n, double t) {
  const IntegrabilityProbe pr = ladder(L, n);
  if (!pr.integrable) refuse(pr, n, t);
  auto f = [&](double r) {
    if (r <= 0.0) return n == 1 ? 1.0 : 0.0;
    const double v = std::exp(-L(r)) * std::pow(r, n - 1);
    return std::isfinite(v) ? v : 0.0;
  };
  quad::KahanSum s;
  double lo = 0.0;
  for (int k = -40; k <= 0; ++k) {
    const double hi = std::ldexp(1.0, k);
    s.add(quad::gauss_kronrod(f, lo, hi, 1e-13).value);
    lo = hi;
  }
  const quad::Result tail = quad::half_line_decaying(f, 1.0, 1e-12, 2000);
  if (!tail.converged) throw NumericalError("tail of the p_t(0) integral did not converge", tail.error);
  s.add(tail.value);
  return s.value();
}

}  // namespace

Grid Grid::line(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw DomainError("grid needs lo <= hi and step > 0");
  Grid g;
  g.dim = 1;
  g.origin = {lo, 0.0};
  g.step = {step, 1.0};
  g.count = {static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1, 1};
  return g;
}

Grid Grid::square(double lo, double hi, double step) {
  Grid g = line(lo, hi, step);
  g.dim = 2;
  g.origin = {lo, lo};
  g.step = {step, step};
  g.count = {g.count[0], g.count[0]};
  return g;
}

std::size_t Grid::size() const {
  return dim == 1 ? static_cast<std::size_t>(count[0]) : static_cast<std::size_t>(count[0]) * static_cast<std::size_t>(count[1]);
}

double DensityField::at(double x) const {
  if (layout == Layout::radial) {
    for (std::size_t i = 0; i < radii.size(); ++i)
      if (radii[i] == x) return values[i];
    throw DomainError("radius is not a node of the field");
  }
  if (dim != 1) throw DomainError("DensityField::at needs a one-dimensional lattice");
  const double u = (x - grid.origin[0]) / grid.step[0];
  const long i = std::lround(u);
  if (i < 0 || i >= grid.count[0] || std::fabs(u - static_cast<double>(i)) > 1e-6)
    throw DomainError("x is not a node of the lattice");
  return values[static_cast<std::size_t>(i)];
}

IntegrabilityProbe probe_integrability(const ModelSpec& model, double t) {
  if (!(t > 0.0)) throw DomainError("integrability probe needs t > 0");
  if (bounded_re_psi(model)) {
    IntegrabilityProbe pr;
    pr.probed_to = kInf;
    return pr;
  }
  return ladder([&](double r) { return t * slowest_re_psi(model, r); }, model.dim());
}

DensityField invert_grid(const ModelSpec& model, double t, const Grid& grid, const InversionOptions& opt) {
  return invert_any(model, t, grid, nullptr, opt);
}

DensityField multiplier_apply(const ModelSpec& model, const Symbol& phi, int m, double t, const Grid& grid,
                              const InversionOptions& opt) {
  if (m < 0) throw DomainError("multiplier power must be nonnegative");
  if (m == 0) return invert_any(model, t, grid, nullptr, opt);
  if (phi.model().dim() != model.dim()) throw DomainError("symbol dimension does not match the model");
  const Weight w = [&phi, m](std::span<const double> xi) { return std::pow(phi(xi), m); };
  return invert_any(model, t, grid, &w, opt);
}

DensityField invert_radial(const ModelSpec& model, double t, const std::vector<double>& radii,
                           const InversionOptions& opt) {
  if (!model.isotropic()) throw DomainError("radial inversion needs an isotropic model");
  if (!(t > 0.0)) throw DomainError("inversion needs t > 0");
  refuse_if_bounded(model, t);
  for (double r : radii)
    if (!(r >= 0.0)) throw DomainError("radii must be nonnegative");
  const int n = model.dim();
  const double nu = 0.5 * (n - 2.0);
  auto L = [&](double r) { return t * re_psi_radial(model, r); };
  const IntegrabilityProbe pr = ladder(L, n);
  if (!pr.integrable) refuse(pr, n, t);

  double rho_max = 0.0;
  for (double r : radii) rho_max = std::max(rho_max, r);
  const double width = rho_max > 0.0 ? std::min(1.0, kPi / rho_max) : 1.0;
  double core = pr.negligible_from;
  bool tails = false;
  const double budget = opt.work_budget / static_cast<double>(std::max<std::size_t>(radii.size(), 1));
  if (core == 0.0 || static_cast<double>(core_node_count(core, width)) > budget) {
    tails = true;
    core = 64.0;
    while (core > 8.0 && static_cast<double>(core_node_count(core, width)) > budget) core *= 0.5;
  }
  const Nodes q = core_nodes(core, width);
  std::vector<double> e(q.x.size());
  for (std::size_t k = 0; k < q.x.size(); ++k) e[k] = std::exp(-L(q.x[k])) * std::pow(q.x[k], n - 1) * q.w[k];
  auto kernel = [&](double z) { return n == 1 ? std::cos(z) : specfun::h_kernel(nu, z); };

  const double pref = specfun::sphere_area(n) / std::pow(2.0 * kPi, n);
  DensityField f;
  f.layout = DensityField::Layout::radial;
  f.radii = radii;
  f.dim = n;
  f.t = t;
  f.xi_window = core;
  f.values.resize(radii.size());
  double tail_err = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double rho = radii[i];
    quad::KahanSum s;
    for (std::size_t k = 0; k < q.x.size(); ++k) s.add(e[k] * kernel(q.x[k] * rho));
    if (tails) {
      auto g = [&](double r) { return std::exp(-L(r)) * std::pow(r, n - 1) * kernel(r * rho); };
      quad::Result r;
      if (rho == 0.0) {
        r = quad::half_line_decaying(g, core, 1e-12);
      } else {
        quad::OscillatoryOptions oo;
        oo.rel_tol = 1e-12;
        oo.abs_tol = 1e-15;
        const double hp = kPi / rho;
        r = quad::oscillatory_tail(g, core, core + hp, hp, oo);
      }
      if (!r.converged) throw NumericalError("oscillatory tail of the radial inversion did not converge", r.error);
      s.add(r.value);
      tail_err = std::max(tail_err, r.error);
    }
    f.values[i] = pref * s.value();
  }
  f.tail_bound = pref * tail_err;
  if (!tails) f.tail_bound += pref * std::exp(-L(core)) * std::pow(core, n);
  // omega_{n-1} int p r^{n-1} dr over the given radii, trapezoid.
  const double omega = specfun::sphere_area(n);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const double a = radii[i], b = radii[i + 1];
    f.mass += 0.5 * (b - a) * omega * (f.values[i] * std::pow(a, n - 1) + f.values[i + 1] * std::pow(b, n - 1));
  }
  return f;
}

double pt_zero(const ModelSpec& model, double t) {
  if (!(t > 0.0)) throw DomainError("pt_zero needs t > 0");
  refuse_if_bounded(model, t);
  const int n = model.dim();
  if (n == 1) {
    auto L = [&](double r) { return t * re_psi_radial(model, r); };
    return radial_mass(L, 1, t) / kPi;
  }
  if (model.isotropic()) {
    auto L = [&](double r) { return t * re_psi_radial(model, r); };
    return specfun::sphere_area(n) * radial_mass(L, n, t) / std::pow(2.0 * kPi, n);
  }
  if (n != 2) throw DomainError("pt_zero for non-isotropic models supports dimension 2 only");
  const IntegrabilityProbe pr = probe_integrability(model, t);
  if (!pr.integrable) refuse(pr, n, t);
  // Re psi is even, so half the circle suffices; the periodic trapezoid rule is spectrally accurate.
  const int N = 64;
  quad::KahanSum s;
  for (int k = 0; k < N; ++k) {
    const double th = kPi * k / N;
    const double c = std::cos(th), sn = std::sin(th);
    auto L = [&](double r) { return t * eval_re_psi(model, std::vector<double>{r * c, r * sn}); };
    s.add(radial_mass(L, 2, t));
  }
  return 2.0 * (kPi / N) * s.value() / (4.0 * kPi * kPi);
}

const char* to_string(ClosedForm f) {
  switch (f) {
    case ClosedForm::gaussian: return "gaussian";
    case ClosedForm::cauchy: return "cauchy";
    case ClosedForm::gamma: return "gamma";
    case ClosedForm::sym_gamma_besselk: return "sym_gamma_besselk";
    case ClosedForm::laplace: return "laplace";
  }
  return "?";
}

ClosedForm closed_form_from_string(const std::string& s) {
  for (ClosedForm f : {ClosedForm::gaussian, ClosedForm::cauchy, ClosedForm::gamma, ClosedForm::sym_gamma_besselk,
                       ClosedForm::laplace})
    if (s == to_string(f)) return f;
  throw DomainError("unknown closed-form family '" + s + "'");
}

double closed_form(ClosedForm family, double t, double x, int n) {
  if (!(t > 0.0)) throw DomainError("closed_form needs t > 0");
  if (n < 1) throw DomainError("closed_form needs n >= 1");
  const double ax = std::fabs(x);
  switch (family) {
    case ClosedForm::gaussian:
      return std::pow(4.0 * kPi * t, -0.5 * n) * std::exp(-ax * ax / (4.0 * t));
    case ClosedForm::cauchy:
      return std::tgamma(0.5 * (n + 1)) * t / (std::pow(kPi, 0.5 * (n + 1)) * std::pow(t * t + ax * ax, 0.5 * (n + 1)));
    case ClosedForm::gamma:
      if (n != 1) throw DomainError("the gamma process lives in dimension one");
      if (x < 0.0) return 0.0;
      if (x == 0.0) {
        if (t < 1.0) throw DomainError("the gamma density has a pole at x = 0 for t < 1");
        return t == 1.0 ? 1.0 : 0.0;
      }
      return std::exp((t - 1.0) * std::log(x) - x - std::lgamma(t));
    case ClosedForm::laplace:
      if (n != 1) throw DomainError("the Laplace family lives in dimension one");
      [[fallthrough]];
    case ClosedForm::sym_gamma_besselk: {
      const double nu = t - 0.5 * n;
      if (!(nu > 0.0)) throw DomainError("the Bessel-K form needs t > n/2");
      const double pref = std::pow(2.0, 1.0 - n) / (std::pow(kPi, 0.5 * n) * std::tgamma(t));
      if (ax == 0.0) return pref * 0.5 * std::tgamma(nu);
      if (ax > 700.0) return 0.0;
      return pref * std::pow(0.5 * ax, nu) * specfun::bessel_k(nu, ax).value;
    }
  }
  return 0.0;
}

void write_csv(std::ostream& os, const DensityField& f, const std::map<std::string, std::string>& meta) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "# t=" << num(f.t) << "\n";
  os << "# mass=" << num(f.mass) << "\n";
  os << "# mass_error=" << num(f.mass_error) << "\n";
  os << "# tail_bound=" << num(f.tail_bound) << "\n";
  os << "# imag_residue=" << num(f.imag_residue) << "\n";
  os << "# xi_window=" << num(f.xi_window) << "\n";
  for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
  if (f.layout == DensityField::Layout::radial) {
    os << "r,p\n";
    for (std::size_t i = 0; i < f.radii.size(); ++i) os << num(f.radii[i]) << "," << num(f.values[i]) << "\n";
  } else if (f.dim == 1) {
    os << "x,p\n";
    for (int i = 0; i < f.grid.count[0]; ++i)
      os << num(f.grid.coord(0, i)) << "," << num(f.values[static_cast<std::size_t>(i)]) << "\n";
  } else {
    os << "x,y,p\n";
    for (int i = 0; i < f.grid.count[0]; ++i)
      for (int j = 0; j < f.grid.count[1]; ++j)
        os << num(f.grid.coord(0, i)) << "," << num(f.grid.coord(1, j)) << ","
           << num(f.values[static_cast<std::size_t>(i) * static_cast<std::size_t>(f.grid.count[1]) +
                           static_cast<std::size_t>(j)])
           << "\n";
  }
}

}  // namespace levy
