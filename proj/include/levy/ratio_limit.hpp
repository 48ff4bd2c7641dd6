#pragma once

#include <string>
#include <vector>

#include "levy/inversion.hpp"
#include "levy/model.hpp"

namespace levy {

// Mass of |chi_t| outside the ball of radius delta, chi_t = e^{-t psi} / ||e^{-t psi}||_1.
// Throws Refusal when e^{-t Re psi} is not integrable.
double chi_tail_mass(const ModelSpec& model, double t, double delta);

// ||e^{-t psi}||_1, and the same integral restricted to |xi| > delta.
double exp_psi_l1(const ModelSpec& model, double t);
double exp_psi_l1_outside(const ModelSpec& model, double t, double delta);

struct InfOutside {
  double value = 0.0;
  double argmin = 0.0;
  // Re psi comes close to zero away from the origin, as for a periodic exponent.
  bool periodic = false;
};

// inf of Re psi over |xi| > delta: a log grid on every ray of the direction set, the
// period candidates 2 pi k / a of atom radii, then local refinement of the best point.
InfOutside inf_re_psi_outside(const ModelSpec& model, double delta);

// p_t(x) / p_t(0) from one inversion pass.
double ratio_px_p0(const ModelSpec& model, double t, const std::vector<double>& x);

// Samples of f on a lattice in dimension one or two (row-major, first axis slowest).
struct SampledFunction {
  Grid grid;
  std::vector<double> values;

  // Trapezoid integral.
  double integral() const;
};

struct SemigroupRatio {
  // T_t f(x) / ||e^{-t psi}||_1 and (2 pi)^{-n} int f.
  double observed = 0.0;
  double target = 0.0;
  double semigroup_value = 0.0;
  double l1_norm = 0.0;
  // Frequency cutoff: the smaller of the decay window and the Nyquist limit of the samples.
  double xi_cutoff = 0.0;
};

// T_t f(x) = (2 pi)^{-n} int e^{-t psi(xi)} e^{i x.xi} int f(z) e^{-i z.xi} dz dxi.
SemigroupRatio semigroup_ratio(const ModelSpec& model, const SampledFunction& f, double t,
                               const std::vector<double>& x);

struct RatioRung {
  double t = 0.0;
  bool integrable = false;
  double l1_norm = 0.0;
  double tail_mass = 0.0;
  // e^{-(t - t0) m_delta} int_{|xi|>delta} e^{-t0 Re psi} / ||e^{-t psi}||_1 with t0 the first integrable rung.
  double tail_envelope = 0.0;
  bool envelope_holds = false;
  double px_p0 = 0.0;
  // (2 tail_mass + sup_{|xi|<=delta} |e^{i x.xi} - 1|) ||chi_t||_1 / |int chi_t|.
  double px_p0_envelope = 0.0;
  SemigroupRatio semigroup;
  // T_t f(x) / T_{t+s} f(0); tends to 1.
  double shifted_ratio = 0.0;
  std::string refusal;
};

struct RatioReport {
  std::vector<double> t_grid;
  double delta = 1.0;
  std::vector<double> x;
  double shift = 1.0;
  InfOutside m_delta;
  double t0 = 0.0;
  std::vector<RatioRung> rungs;
  double limit_px_p0 = 1.0;
  double limit_semigroup = 0.0;
  double limit_shifted = 1.0;
  std::vector<std::string> warnings;
};

RatioReport ratio_limit_report(const ModelSpec& model, const SampledFunction& f, const std::vector<double>& x,
                               double delta = 1.0, std::vector<double> t_grid = {1.0, 10.0, 100.0, 1000.0},
                               double shift = 1.0);

// e^{-|z|^2} on [-half_width, half_width]^n.
SampledFunction gaussian_bump(int dim, double half_width = 8.0, double step = 0.05);

}  // namespace levy
