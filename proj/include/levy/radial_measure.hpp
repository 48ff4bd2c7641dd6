#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "levy/model.hpp"

namespace levy {

// Distribution of |y| under a Levy measure on R^n. For continuous measures the profile
// f(r) = omega_{n-1} r^{n-1} k(r) is the density of nu(|y| in dr).
class RadialMeasure {
 public:
  virtual ~RadialMeasure() = default;

  int dim() const { return dim_; }
  virtual bool discrete() const = 0;
  virtual double profile(double r) const = 0;
  // nu(|y| > r).
  virtual double tail(double r) const = 0;
  // Integral of |y|^k over {|y| <= r}.
  virtual double moment(int k, double r) const = 0;
  virtual double support_end() const = 0;
  // Radii where the profile is not smooth.
  virtual std::vector<double> breakpoints() const { return {}; }
  // (radius, mass) pairs of a discrete measure, sorted by radius.
  virtual const std::vector<std::pair<double, double>>& shells() const;

 protected:
  explicit RadialMeasure(int dim) : dim_(dim) {}

 private:
  int dim_;
};

std::shared_ptr<const RadialMeasure> make_family_radial(int dim, const RadialFamily& fam);
std::shared_ptr<const RadialMeasure> make_table_radial(int dim, const RadialTable& table);
std::shared_ptr<const RadialMeasure> make_shell_radial(int dim, std::vector<std::pair<double, double>> shells);

// Normalising constant of the stable density: k(r) = stable_constant * r^{-n-alpha} gives Re psi = |xi|^alpha.
double stable_constant(int n, double alpha);

// Upper incomplete gamma Gamma(s, x) for s > -3, x > 0.
double upper_gamma(double s, double x);

}  // namespace levy
