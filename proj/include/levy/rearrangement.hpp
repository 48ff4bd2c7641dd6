#pragma once

#include <iosfwd>
#include <vector>

#include "levy/model.hpp"

namespace levy {

enum class NuMethod { radial_bisection, grid_count };

const char* to_string(NuMethod m);

// Sorted values of Re psi at the cell centres of a box [-B, B]^n, n in {1, 2}.
struct SublevelLattice {
  int dim = 1;
  double half_width = 0.0;
  int cells_per_axis = 0;
  double cell_size = 0.0;
  double cell_volume = 0.0;
  std::vector<double> sorted;
  // Smallest Re psi on the outermost cell layer; sublevel sets below it are interior.
  double boundary_min = 0.0;

  // Counted volume of {Re psi <= x}; +inf once the sublevel set reaches the box boundary.
  double volume(double x) const;
  // inf{x : volume(x) >= s}. With within_box false the counted volume is used even where
  // the sublevel set leaves the box, which overstates the inverse there.
  double inverse(double s, bool within_box = true) const;
};

SublevelLattice sublevel_lattice_on_box(const ModelSpec& model, double half_width, int cells_per_axis = 0);

// Lattice covering {Re psi <= x_max} when possible; grows the box by doubling.
SublevelLattice sublevel_lattice(const ModelSpec& model, double x_max, int cells_per_axis = 0);

// Lebesgue measure of {xi : Re psi(xi) <= x}.
double nu_dist(const ModelSpec& model, double x);
// nu at many points, choosing the method once.
std::vector<double> nu_dist(const ModelSpec& model, const std::vector<double>& x);
// inf{x : nu(x) >= s}.
double nu_inverse(const ModelSpec& model, double s);
// e^{-t nu^{-1}(s)}, the decreasing rearrangement of e^{-t Re psi}.
double u_star(const ModelSpec& model, double t, double s);
// t (2 pi)^{-n} int_0^inf nu(x) e^{-t x} dx.
double pt0_laplace(const ModelSpec& model, double t);

NuMethod nu_method(const ModelSpec& model);

struct RearrangementTable {
  std::vector<double> x_nodes;
  std::vector<double> nu_values;
  NuMethod method = NuMethod::radial_bisection;
  double cell_size = 0.0;
  int dim = 1;

  // Log-log interpolation between nodes, power-law extrapolation below the first node.
  double nu(double x) const;
  // Right-continuous generalized inverse of the interpolant.
  double inverse(double s) const;
  double x_max() const { return x_nodes.back(); }
};

// Nodes logarithmic in x over [x_min, x_max].
RearrangementTable build_table(const ModelSpec& model, double x_max, int nodes = 200, double x_min = 1e-3);

void write_csv(std::ostream& os, const RearrangementTable& table);

}  // namespace levy
