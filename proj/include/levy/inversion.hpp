#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "levy/exponent.hpp"
#include "levy/model.hpp"

namespace levy {

// Uniform lattice in one or two dimensions.
struct Grid {
  int dim = 1;
  std::array<double, 2> origin{0.0, 0.0};
  std::array<double, 2> step{1.0, 1.0};
  std::array<int, 2> count{1, 1};

  // Nodes lo, lo + step, ... up to hi (inclusive within half a step).
  static Grid line(double lo, double hi, double step);
  static Grid square(double lo, double hi, double step);
  double coord(int axis, int i) const { return origin[static_cast<std::size_t>(axis)] + i * step[static_cast<std::size_t>(axis)]; }
  std::size_t size() const;
};

struct DensityField {
  enum class Layout { lattice, radial };
  Layout layout = Layout::lattice;
  Grid grid;
  std::vector<double> radii;
  int dim = 1;
  // Row-major with the first axis slowest on two-dimensional lattices.
  std::vector<double> values;
  double t = 0.0;
  // Trapezoid integral of the field over the lattice (or omega_{n-1} int p r^{n-1} dr over the radii).
  double mass = 0.0;
  // Bound on |mass - total mass|, including the mass outside the lattice.
  double mass_error = 0.0;
  // Mass of the process outside the lattice window, from the Fourier side (one dimension).
  double outside_mass = 0.0;
  // Estimated error of the xi-integral at each node.
  double tail_bound = 0.0;
  // Largest imaginary part seen before taking the real part.
  double imag_residue = 0.0;
  double xi_window = 0.0;

  double at(double x) const;
};

struct InversionOptions {
  // The xi-window ends where e^{-t Re psi} has dropped below this.
  double window_floor = 1e-14;
  // Upper bound on the core quadrature work (nodes times output points) in one dimension.
  double work_budget = 4e7;
  int max_fft = 2048;
};

// p_t(x) = (2 pi)^{-n} int e^{-t psi(xi)} e^{-i x.xi} dxi on a lattice, n in {1, 2}.
// Throws Refusal when e^{-t Re psi} is not integrable on the probed window.
DensityField invert_grid(const ModelSpec& model, double t, const Grid& grid, const InversionOptions& opt = {});

// p_t at the given radii of an isotropic model in any dimension.
DensityField invert_radial(const ModelSpec& model, double t, const std::vector<double>& radii,
                           const InversionOptions& opt = {});

// p_t(0) = (2 pi)^{-n} int e^{-t Re psi}.
double pt_zero(const ModelSpec& model, double t);

// phi(D)^m p_t = F^{-1}[phi^m e^{-t psi}]; m = 0 is invert_grid.
DensityField multiplier_apply(const ModelSpec& model, const Symbol& phi, int m, double t, const Grid& grid,
                              const InversionOptions& opt = {});

// Decay of e^{-t Re psi} along rays, as seen by the inversion routines.
struct IntegrabilityProbe {
  bool integrable = false;
  // Local power-law decay exponent of e^{-t Re psi} at the end of the ladder.
  double exponent = 0.0;
  // Radius beyond which the remaining mass is negligible, or 0 if none was found.
  double negligible_from = 0.0;
  double probed_to = 0.0;
};
IntegrabilityProbe probe_integrability(const ModelSpec& model, double t);

enum class ClosedForm { gaussian, cauchy, gamma, sym_gamma_besselk, laplace };

const char* to_string(ClosedForm f);
ClosedForm closed_form_from_string(const std::string& s);

// Reference densities at |x| in R^n: heat kernel for psi = |xi|^2, Cauchy for |xi|, the gamma
// process for ln(1 - i xi), and the symmetrised gamma process for ln(1 + |xi|^2) (t > n/2).
// laplace is the symmetrised gamma process in one dimension.
double closed_form(ClosedForm family, double t, double x, int n = 1);

void write_csv(std::ostream& os, const DensityField& f, const std::map<std::string, std::string>& meta = {});

}  // namespace levy
