#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace levy {

struct PointAtom {
  std::vector<double> point;
  double mass = 0.0;
};

// Mass spread uniformly over the sphere of the given radius (a symmetric pair in one dimension).
struct ShellAtom {
  double radius = 0.0;
  double mass = 0.0;
};

using Atom = std::variant<PointAtom, ShellAtom>;

struct AtomsMeasure {
  std::vector<Atom> atoms;
};

enum class RadialFamilyKind { stable, tempered_stable, truncated_stable, log_kernel, gamma_type };

// Radial Levy densities k(|y|). stable is normalised so that Re psi(xi) = scale * |xi|^alpha;
// log_kernel is |y|^{-1} ln(1/|y|) on the unit ball; gamma_type is 2 (2 pi r)^{-n/2} K_{n/2}(r),
// for which psi(xi) = ln(1 + |xi|^2).
struct RadialFamily {
  RadialFamilyKind kind = RadialFamilyKind::stable;
  double alpha = 1.0;
  double lambda = 1.0;
  double radius = 1.0;
  double scale = 1.0;
};

enum class Interpolation { linear, loglog };

// Samples (r_i, k(r_i)) of a radial density; zero outside [r_0, r_last].
struct RadialTable {
  std::vector<double> radii;
  std::vector<double> density;
  Interpolation interpolation = Interpolation::loglog;
};

// One-sided density scale * e^{-y}/y on (0, inf), dimension one.
struct GammaSubordinator {
  double scale = 1.0;
};

struct NoJumps {};

using MeasureSpec = std::variant<NoJumps, AtomsMeasure, RadialFamily, RadialTable, GammaSubordinator>;

class RadialMeasure;

// A Levy triplet with dimension and isotropy flag. Immutable once created.
class ModelSpec {
 public:
  static ModelSpec create(int dim, std::vector<double> drift, std::vector<double> gaussian, MeasureSpec measure,
                          bool isotropic, std::string name = "");

  int dim() const { return dim_; }
  const std::vector<double>& drift() const { return drift_; }
  // Row-major n x n.
  const std::vector<double>& gaussian() const { return gaussian_; }
  const MeasureSpec& measure() const { return measure_; }
  bool isotropic() const { return isotropic_; }
  const std::string& name() const { return name_; }

  // Radial view of the jump measure, or null when the measure is not radial.
  const RadialMeasure* radial() const { return radial_.get(); }
  // True when the jump measure is rotation invariant.
  bool measure_radial() const { return measure_radial_; }
  // Zero drift and a jump measure invariant under y -> -y, so psi is real.
  bool symmetric() const;
  // Largest eigenvalue of Q.
  double gaussian_norm() const { return q_norm_; }
  // Q = q I with this q when Q is a multiple of the identity, else -1.
  double gaussian_scalar() const { return q_scalar_; }

 private:
  ModelSpec() = default;
  int dim_ = 1;
  std::vector<double> drift_;
  std::vector<double> gaussian_;
  MeasureSpec measure_;
  bool isotropic_ = false;
  bool measure_radial_ = false;
  std::string name_;
  std::shared_ptr<const RadialMeasure> radial_;
  double q_norm_ = 0.0;
  double q_scalar_ = -1.0;
};

}  // namespace levy
