#include "levy/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "levy/errors.hpp"
#include "levy/inversion.hpp"
#include "levy/radial_measure.hpp"
#include "levy/rearrangement.hpp"
#include "levy/specfun.hpp"

namespace levy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void check_range(KRange k) {
  if (k.hi < k.lo) throw DomainError("empty k range");
}

// ln of the abscissa, oriented so that the limit lies at +infinity.
double log_abscissa(const LimitReport& r, std::size_t i) {
  const double a = r.probe_grid[i];
  return r.variable == "eps" ? -std::log(a) : std::log(a);
}

Trend trend_of(const LimitReport& r, const std::vector<std::size_t>& idx, const VerdictRule& rule, std::string label) {
  Trend tr;
  tr.label = std::move(label);
  if (idx.empty()) return tr;
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(rule.window, 2)), idx.size());
  const std::vector<std::size_t> tail(idx.end() - static_cast<std::ptrdiff_t>(w), idx.end());
  tr.trailing_min = std::numeric_limits<double>::infinity();
  tr.trailing_max = -std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i : tail) {
    const double v = r.values[i];
    tr.trailing_min = std::min(tr.trailing_min, v);
    tr.trailing_max = std::max(tr.trailing_max, v);
    if (v > 0.0 && std::isfinite(v)) {
      const double x = log_abscissa(r, i), y = std::log(v);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
  }
  if (m >= 2) {
    const double den = m * sxx - sx * sx;
    tr.slope = den > 0.0 ? (m * sxy - sx * sy) / den : 0.0;
  }
  if (tr.trailing_max == 0.0)
    tr.verdict = Verdict::vanishes;
  else if (tr.trailing_min > rule.diverge_floor && tr.slope > 0.0)
    tr.verdict = Verdict::diverges;
  else if (tr.trailing_max < rule.vanish_ceiling && tr.slope < 0.0)
    tr.verdict = Verdict::vanishes;
  else if (std::fabs(tr.slope) <= rule.flat_slope)
    tr.verdict = Verdict::bounded;
  else
    tr.verdict = Verdict::inconclusive;
  return tr;
}

LimitReport xi_report(std::string name, KRange k, double scale) {
  check_range(k);
  if (!(scale > 0.0)) throw DomainError("probe scale must be positive");
  LimitReport r;
  r.functional = std::move(name);
  r.variable = "xi";
  for (int j = k.lo; j <= k.hi; ++j) {
    r.k.push_back(j);
    r.probe_grid.push_back(scale * std::exp2(j));
  }
  return r;
}

LimitReport eps_report(std::string name, KRange k) {
  check_range(k);
  if (k.lo < 1) throw DomainError("eps = 2^{-k} needs k >= 1");
  LimitReport r;
  r.functional = std::move(name);
  r.variable = "eps";
  for (int j = k.lo; j <= k.hi; ++j) {
    r.k.push_back(j);
    r.probe_grid.push_back(std::exp2(-j));
  }
  return r;
}

bool radial_symbol(const ModelSpec& model) { return model.dim() == 1 || model.isotropic(); }

double symbol_min(const ModelSpec& model, const Symbol& phi, double r) {
  const int n = model.dim();
  if (radial_symbol(model) && radial_symbol(phi.model())) return re_psi_radial(model, r) / std::log1p(phi.radial(r));
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : direction_set(n)) {
    std::vector<double> xi(d);
    for (double& v : xi) v *= r;
    m = std::min(m, eval_re_psi(model, xi) / std::log1p(phi(xi)));
  }
  return m;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::diverges: return "diverges";
    case Verdict::bounded: return "bounded";
    case Verdict::vanishes: return "vanishes";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

void summarize(LimitReport& r, const VerdictRule& rule) {
  std::vector<std::size_t> all, even, odd;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    all.push_back(i);
    (r.k[i] % 2 == 0 ? even : odd).push_back(i);
  }
  const Trend t = trend_of(r, all, rule, "all");
  r.trailing_min = t.trailing_min;
  r.trailing_max = t.trailing_max;
  r.slope = t.slope;
  r.verdict = t.verdict;
  r.subsequences = {trend_of(r, even, rule, "even k"), trend_of(r, odd, rule, "odd k")};
}

LimitReport hw_functional(const ModelSpec& model, KRange k, std::optional<double> t, double scale,
                          const VerdictRule& rule) {
  LimitReport r = xi_report("hw", k, scale);
  for (double xi : r.probe_grid) r.values.push_back(slowest_re_psi(model, xi) / std::log1p(xi));
  summarize(r, rule);
  if (!radial_symbol(model)) r.warnings.push_back("anisotropic model: minimum over axes and diagonals");
  if (t) {
    if (!(*t > 0.0)) throw DomainError("t must be positive");
    ThresholdCompare c;
    c.t = *t;
    c.threshold = model.dim() / *t;
    c.estimate = r.trailing_min;
    c.pass = c.estimate > c.threshold;
    r.threshold_compare = c;
  }
  return r;
}

LimitReport kallenberg_functional(const ModelSpec& model, KRange k, const VerdictRule& rule) {
  if (model.dim() != 1 && !model.measure_radial()) throw DomainError("kallenberg_functional needs dim 1 or a radial measure");
  LimitReport r = eps_report("kallenberg", k);
  for (double eps : r.probe_grid) {
    const double m2 = small_jump_moment(model, eps);
    if (!std::isfinite(m2)) throw NumericalError("second moment near 0 did not converge", m2);
    r.values.push_back(m2 / (eps * eps * std::fabs(std::log(eps))));
  }
  summarize(r, rule);
  return r;
}

LimitReport tail_mass_functional(const ModelSpec& model, KRange k, const VerdictRule& rule) {
  if (!model.measure_radial()) throw DomainError("tail_mass_functional needs a radial measure");
  LimitReport r = eps_report("tail_mass", k);
  for (double eps : r.probe_grid) {
    const double m = large_jump_mass(model, eps);
    if (!std::isfinite(m)) throw NumericalError("tail mass did not converge", m);
    r.values.push_back(m / std::fabs(std::log(eps)));
  }
  summarize(r, rule);
  if (model.dim() == 1) r.warnings.push_back("dimension 1 lies outside the n >= 2 scope of the tail-mass equivalence");
  return r;
}

LimitReport hw_star_functional(const ModelSpec& model, KRange k, double scale, const VerdictRule& rule) {
  LimitReport r = xi_report("hw_star", k, scale);
  const int n = model.dim();
  const double Vn = specfun::ball_volume(n);
  if (nu_method(model) == NuMethod::radial_bisection) {
    for (double xi : r.probe_grid) r.values.push_back(nu_inverse(model, Vn * std::pow(xi, n)) / std::log1p(xi));
  } else {
    const SublevelLattice L = sublevel_lattice_on_box(model, r.probe_grid.back(), n == 1 ? (1 << 20) : 1024);
    double first_resolved = 0.0, first_unbounded = 0.0;
    for (double xi : r.probe_grid) {
      const double s = Vn * std::pow(xi, n);
      const double v = L.inverse(s, false);
      if (s < 100.0 * L.cell_volume) first_resolved = xi;
      if (v >= L.boundary_min && first_unbounded == 0.0) first_unbounded = xi;
      r.values.push_back(v / std::log1p(xi));
    }
    r.warnings.push_back(fmt("sublevel measure counted on a uniform lattice with cell size %.3g", L.cell_size));
    if (first_resolved > 0.0)
      r.warnings.push_back(fmt("fewer than 100 cells per sublevel set up to |xi| = %.3g", first_resolved));
    if (first_unbounded > 0.0)
      r.warnings.push_back(
          fmt("from |xi| = %.3g the sublevel sets reach the box boundary; values there are upper bounds",
              first_unbounded));
  }
  summarize(r, rule);
  return r;
}

LimitReport hw_phi_functional(const ModelSpec& model, const Symbol& phi, KRange k, double scale,
                              const VerdictRule& rule) {
  if (phi.model().dim() != model.dim()) throw DomainError("phi and the model have different dimensions");
  LimitReport r = xi_report("hw_phi", k, scale);
  for (double xi : r.probe_grid) {
    const double v = symbol_min(model, phi, xi);
    if (!std::isfinite(v)) throw NumericalError("phi evaluation failed", v);
    r.values.push_back(v);
  }
  summarize(r, rule);
  return r;
}

LimitReport re_psi_growth(const ModelSpec& model, KRange k, const VerdictRule& rule) {
  LimitReport r = xi_report("re_psi", k, 1.0);
  for (double xi : r.probe_grid)
    r.values.push_back(std::min(slowest_re_psi(model, xi), slowest_re_psi(model, kTwoPi * xi)));
  summarize(r, rule);
  return r;
}

Classification classify(const ModelSpec& model, const std::vector<double>& t_list, KRange k, const VerdictRule& rule) {
  Classification c;
  c.hw = hw_functional(model, k, std::nullopt, 1.0, rule);
  c.re_psi = re_psi_growth(model, k, rule);
  try {
    c.isotropic_monotone = model.isotropic() && nu_method(model) == NuMethod::radial_bisection;
  } catch (const DomainError&) {
    c.isotropic_monotone = false;
  }
  const int n = model.dim();
  for (double t : t_list) {
    if (!(t > 0.0)) throw DomainError("t must be positive");
    TimeVerdict tv;
    tv.t = t;
    tv.hw = {t, n / t, c.hw.trailing_min, c.hw.trailing_min > n / t};
    const IntegrabilityProbe p = probe_integrability(model, t);
    tv.probe_integrable = p.integrable;
    tv.probe_exponent = p.exponent;
    if (tv.hw.pass)
      tv.statement = "liminf exceeds n/t: density p_t in L1 and C_inf";
    else if (tv.probe_integrable)
      tv.statement = "liminf below n/t but e^{-t psi} is integrable on the probed window";
    else
      tv.statement = "e^{-t Re psi} not integrable on the probed window: no bounded density at this t";
    if (c.isotropic_monotone && tv.hw.pass != tv.probe_integrable)
      c.notes.push_back(fmt("t=%g: threshold verdict and integrability probe disagree (probe exponent %.3g)", t,
                            p.exponent));
    c.per_t.push_back(tv);
  }
  if (c.re_psi.verdict == Verdict::vanishes || c.re_psi.verdict == Verdict::bounded) {
    c.verdict = "no density (Re psi does not diverge)";
    const Trend& ev = c.re_psi.subsequences.front();
    c.notes.push_back(fmt("Re psi along 2^k and 2^k 2pi: trailing max %.4g, even-k trailing max %.4g",
                          c.re_psi.trailing_max, ev.trailing_max));
  } else if (c.hw.verdict == Verdict::diverges) {
    c.verdict = "smooth density for all t";
  } else if (c.hw.trailing_min > 0.0 && c.re_psi.verdict == Verdict::diverges) {
    c.verdict = fmt("density for t > %.4g", n / c.hw.trailing_min);
  } else {
    c.verdict = "inconclusive";
  }
  return c;
}

}  // namespace levy
