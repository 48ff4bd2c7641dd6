#include "levy/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "levy/errors.hpp"
#include "levy/inversion.hpp"
#include "levy/quadrature.hpp"

namespace levy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Above this log-log slope of nu(2x)/nu(x) the doubling ratio is treated as unbounded.
constexpr double kTrendLimit = 0.1;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LineFit f;
  const double dx = m * sxx - sx * sx, dy = m * syy - sy * sy;
  if (dx <= 0.0) return f;
  f.slope = (m * sxy - sx * sy) / dx;
  f.intercept = (sy - f.slope * sx) / m;
  f.r2 = dy > 0.0 ? std::pow(m * sxy - sx * sy, 2) / (dx * dy) : 1.0;
  return f;
}

std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  v.back() = hi;
  return v;
}

std::string fmt(const char* f, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

const char* to_string(AsymDirection d) { return d == AsymDirection::t_to_0 ? "t_to_0" : "t_to_inf"; }

AsymDirection asym_direction_from_string(const std::string& s) {
  if (s == "t_to_0" || s == "0") return AsymDirection::t_to_0;
  if (s == "t_to_inf" || s == "inf") return AsymDirection::t_to_inf;
  throw DomainError("unknown direction '" + s + "' (expected t_to_0 or t_to_inf)");
}

DoublingReport doubling_report(const RearrangementTable& table, double x_lo, double x_hi) {
  if (!(x_lo > 0.0) || !(x_hi >= x_lo)) throw DomainError("doubling window needs 0 < x_lo <= x_hi");
  if (table.x_nodes.front() > x_lo * (1 + 1e-12) || table.x_max() < 2.0 * x_hi * (1 - 1e-12))
    throw DomainError("table range insufficient for the doubling window");
  DoublingReport r;
  r.x.push_back(x_lo);
  for (double x : table.x_nodes)
    if (x > x_lo && x < x_hi) r.x.push_back(x);
  if (x_hi > x_lo) r.x.push_back(x_hi);
  std::vector<double> lx, lr;
  r.doubling_C = 0.0;
  for (double x : r.x) {
    const double a = table.nu(x), b = table.nu(std::min(2.0 * x, table.x_max()));
    const double q = a > 0.0 ? b / a : kInf;
    r.ratio.push_back(q);
    if (!(q <= r.doubling_C)) {
      r.doubling_C = q;
      r.worst_x = x;
    }
    if (std::isfinite(q) && q > 0.0) {
      lx.push_back(std::log(x));
      lr.push_back(std::log(q));
    }
  }
  if (lx.size() >= 2) r.ratio_trend = least_squares(lx, lr).slope;
  r.fails = !std::isfinite(r.doubling_C) || r.ratio_trend > kTrendLimit;
  r.alpha = std::isfinite(r.doubling_C) ? std::log(r.doubling_C) / std::log(2.0) : kInf;
  return r;
}

DoublingReport doubling_report(const ModelSpec& model, double x_lo, double x_hi) {
  const double lo = std::min(1e-3, x_lo);
  const int nodes = std::max(16, static_cast<int>(std::ceil(24.0 * std::log10(2.0 * x_hi / lo))) + 1);
  return doubling_report(build_table(model, 2.0 * x_hi, nodes, lo), x_lo, x_hi);
}

RegularVariationFit fit_regular_variation(const RearrangementTable& table, double x_lo, double x_hi, double x_edge) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < table.x_nodes.size(); ++i) {
    const double x = table.x_nodes[i], v = table.nu_values[i];
    if (x >= x_lo * (1 - 1e-12) && x <= x_hi * (1 + 1e-12) && v > 0.0 && std::isfinite(v)) {
      lx.push_back(std::log(x));
      ly.push_back(std::log(v));
    }
  }
  if (lx.size() < 8) throw DomainError("degenerate window: fewer than 8 usable table nodes");
  const LineFit f = least_squares(lx, ly);
  RegularVariationFit r;
  r.rho = 1.0 + f.slope;
  r.r2 = f.r2;
  r.nodes = static_cast<int>(lx.size());
  r.x_edge = x_edge;
  r.L_anchor = table.nu(x_edge) / std::pow(x_edge, f.slope);
  return r;
}

AsymptoticReport predict_pt0(const ModelSpec& model, AsymDirection direction, int samples) {
  if (samples < 2) throw DomainError("need at least two t samples");
  AsymptoticReport R;
  R.direction = direction;
  const double t_lo = direction == AsymDirection::t_to_0 ? 1e-3 : 10.0;
  const double t_hi = direction == AsymDirection::t_to_0 ? 1e-1 : 1e3;
  const IntegrabilityProbe probe = probe_integrability(model, t_lo);
  if (!probe.integrable)
    throw Refusal("not integrable", fmt("e^{-t Re psi} is not integrable at t=%g, the low end of the window", t_lo));
  R.t = log_space(t_lo, t_hi, samples);
  std::vector<double> lt, lp;
  for (double t : R.t) {
    const double p = pt_zero(model, t);
    R.observed.push_back(p);
    lt.push_back(std::log(t));
    lp.push_back(std::log(p));
  }
  R.t_exponent = least_squares(lt, lp).slope;

  const int n = model.dim();
  const double norm = std::pow(2.0 * std::numbers::pi, -n);
  const double x_lo = 1.0 / t_hi, x_hi = 1.0 / t_lo;
  const double tab_lo = std::min(1e-3, 0.5 * x_lo), tab_hi = 64.0 * x_hi;
  const int nodes = static_cast<int>(std::ceil(24.0 * std::log10(tab_hi / tab_lo))) + 1;
  const RearrangementTable table = build_table(model, tab_hi, nodes, tab_lo);

  R.fit = fit_regular_variation(table, x_lo, x_hi, direction == AsymDirection::t_to_0 ? x_hi : x_lo);
  R.pro1_emitted = R.fit.r2 > 0.999;
  std::vector<double> nu_t;
  for (double t : R.t) nu_t.push_back(table.nu(1.0 / t));
  if (R.pro1_emitted) {
    const double g = std::tgamma(R.fit.rho);
    R.pro1_ratio_min = kInf;
    R.pro1_ratio_max = 0.0;
    for (std::size_t i = 0; i < R.t.size(); ++i) {
      // Gamma(rho) t^{1-rho} L(1/t) with L(x) = nu(x) x^{1-rho}.
      const double pred = norm * g * nu_t[i];
      R.predicted.push_back(pred);
      const double q = R.observed[i] / pred;
      R.pro1_ratio_min = std::min(R.pro1_ratio_min, q);
      R.pro1_ratio_max = std::max(R.pro1_ratio_max, q);
    }
  } else {
    R.warnings.push_back(fmt("regular-variation fit not stable (R^2 = %.6f); Tauberian prediction withheld", R.fit.r2));
  }

  R.doubling = doubling_report(table, x_lo, 32.0 * x_hi);
  R.c1_observed = kInf;
  R.c2_observed = 0.0;
  for (std::size_t i = 0; i < R.t.size(); ++i) {
    const double q = R.observed[i] / nu_t[i];
    R.c1_observed = std::min(R.c1_observed, q);
    R.c2_observed = std::max(R.c2_observed, q);
  }
  if (!R.doubling.fails) {
    R.bounds_emitted = true;
    const double e1 = std::exp(-1.0);
    R.c1 = norm * e1;
    R.c2 = norm * (1.0 - e1 + R.doubling.doubling_C * boost::math::tgamma(R.doubling.alpha + 1.0, 1.0));
    R.brackets = true;
    for (std::size_t i = 0; i < R.t.size(); ++i) {
      R.lower.push_back(R.c1 * nu_t[i]);
      R.upper.push_back(R.c2 * nu_t[i]);
      if (R.observed[i] < R.lower.back() || R.observed[i] > R.upper.back()) R.brackets = false;
    }
  } else {
    R.warnings.push_back(fmt("volume doubling fails on the window (ratio trend %.3g); bounds withheld",
                             R.doubling.ratio_trend));
  }
  if (!R.pro1_emitted && !R.bounds_emitted)
    throw Refusal("doubling fails", "nu is neither regularly varying nor doubling on the window");
  return R;
}

PhiIntegrability phi_integrability(const Symbol& phi, double kappa, double x_max) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  if (!(x_max >= 4.0)) throw DomainError("x_max must be at least 4");
  PhiIntegrability out;
  out.kappa = kappa;
  // Nodes 2^{i/8} on [2^-10, 2 x_max], so 2x is a node whenever x is.
  const int top = static_cast<int>(std::ceil(8.0 * std::log2(x_max))) + 8;
  std::vector<double> x, level;
  for (int i = -80; i <= top; ++i) {
    x.push_back(std::exp2(i / 8.0));
    level.push_back(phi.transform() == SymbolTransform::log1p ? std::expm1(x.back()) : x.back());
  }
  std::vector<double> nu;
  for (double& v : level) v = std::isfinite(v) ? v : 1e308;
  nu = nu_dist(phi.model(), level);

  const std::size_t first = 80;  // x = 1
  const std::size_t last = x.size() - 9;
  out.doubling_C = 0.0;
  double worst = 0.0;
  std::vector<double> lx, lr;
  for (std::size_t i = first; i <= last; ++i) {
    if (!std::isfinite(nu[i + 8])) {
      out.failing_x = x[i + 8];
      out.reason = "nu_phi is infinite: sublevel sets of phi leave every evaluation window";
      return out;
    }
    const double q = nu[i + 8] / nu[i];
    if (q > out.doubling_C) {
      out.doubling_C = q;
      worst = x[i];
    }
    lx.push_back(std::log(x[i]));
    lr.push_back(std::log(q));
  }
  if (least_squares(lx, lr).slope > kTrendLimit) {
    out.failing_x = worst;
    out.reason = "nu_phi(2x)/nu_phi(x) grows across the window: no polynomial bound";
    return out;
  }
  out.lambda = std::log(out.doubling_C) / std::log(2.0);
  for (std::size_t i = first; i <= last; ++i) out.c = std::max(out.c, nu[i] / std::pow(x[i], out.lambda));
  out.ok = kappa > out.lambda;
  if (!out.ok) {
    out.reason = "kappa does not exceed lambda";
    return out;
  }
  RearrangementTable T;
  T.x_nodes = x;
  T.nu_values = nu;
  T.dim = phi.model().dim();
  auto f = [&](double s) { return kappa * std::pow(1.0 + s, -kappa - 1.0) * T.nu(s); };
  quad::KahanSum sum;
  sum.add(quad::gauss_kronrod(f, 0.0, x.front(), 1e-10).value);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) sum.add(quad::gauss_kronrod(f, x[i], x[i + 1], 1e-10).value);
  // Beyond the table: c x^lambda against (1 + x)^{-kappa-1}.
  const double X = x.back();
  sum.add(kappa * out.c * std::pow(X, out.lambda - kappa) / (kappa - out.lambda));
  out.l2_integral = sum.value();
  return out;
}

}  // namespace levy
