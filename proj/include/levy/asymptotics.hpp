#pragma once

#include <string>
#include <vector>

#include "levy/exponent.hpp"
#include "levy/model.hpp"
#include "levy/rearrangement.hpp"

namespace levy {

enum class AsymDirection { t_to_0, t_to_inf };

const char* to_string(AsymDirection d);
AsymDirection asym_direction_from_string(const std::string& s);

struct DoublingReport {
  // sup of nu(2x)/nu(x) over the window and alpha = ln C / ln 2.
  double doubling_C = 0.0;
  double alpha = 0.0;
  // The ratio keeps growing across the window, so no finite C is in sight.
  bool fails = false;
  // Log-log slope of nu(2x)/nu(x) against x over the window.
  double ratio_trend = 0.0;
  double worst_x = 0.0;
  std::vector<double> x;
  std::vector<double> ratio;
};

// Needs the table to cover [x_lo, 2 x_hi].
DoublingReport doubling_report(const RearrangementTable& table, double x_lo, double x_hi);
DoublingReport doubling_report(const ModelSpec& model, double x_lo, double x_hi);

struct RegularVariationFit {
  // nu(x) ~ x^{rho - 1} L(x).
  double rho = 0.0;
  double L_anchor = 0.0;
  double x_edge = 0.0;
  double r2 = 0.0;
  int nodes = 0;
};

// Least squares of ln nu against ln x over the table nodes in [x_lo, x_hi]; L is anchored at x_edge.
RegularVariationFit fit_regular_variation(const RearrangementTable& table, double x_lo, double x_hi, double x_edge);

struct AsymptoticReport {
  AsymDirection direction = AsymDirection::t_to_0;
  std::vector<double> t;
  std::vector<double> observed;
  // Least-squares slope of ln p_t(0) against ln t.
  double t_exponent = 0.0;
  RegularVariationFit fit;
  bool pro1_emitted = false;
  std::vector<double> predicted;
  double pro1_ratio_min = 0.0;
  double pro1_ratio_max = 0.0;
  DoublingReport doubling;
  bool bounds_emitted = false;
  // c1 nu(1/t) <= p_t(0) <= c2 nu(1/t), with c1 = e^{-1} (2 pi)^{-n} and
  // c2 = (2 pi)^{-n} (1 - e^{-1} + C Gamma(alpha + 1, 1)).
  double c1 = 0.0;
  double c2 = 0.0;
  // Envelope of p_t(0) / nu(1/t) over the window.
  double c1_observed = 0.0;
  double c2_observed = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
  bool brackets = false;
  std::vector<std::string> warnings;
};

// 16 log-spaced t in [1e-3, 1e-1] (t_to_0) or [10, 1e3] (t_to_inf).
AsymptoticReport predict_pt0(const ModelSpec& model, AsymDirection direction, int samples = 16);

struct PhiIntegrability {
  bool ok = false;
  double kappa = 0.0;
  // nu_phi(x) <= c x^lambda on the window.
  double c = 0.0;
  double lambda = 0.0;
  double doubling_C = 0.0;
  // First x where a polynomial bound breaks down, 0 when none.
  double failing_x = 0.0;
  // kappa int_0^inf (1 + x)^{-kappa-1} nu_phi(x) dx when ok.
  double l2_integral = 0.0;
  std::string reason;
};

// Sublevel measure of phi against polynomial growth on [1, x_max].
PhiIntegrability phi_integrability(const Symbol& phi, double kappa, double x_max = 1e3);

}  // namespace levy
