#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "levy/model.hpp"
#include "levy/quadrature.hpp"

namespace levy {

std::complex<double> eval_psi(const ModelSpec& model, std::span<const double> xi, const quad::Tolerance& tol = {});
double eval_re_psi(const ModelSpec& model, std::span<const double> xi, const quad::Tolerance& tol = {});

// Re psi at |xi| = s along the first axis; for isotropic models this is g(s^2).
double re_psi_radial(const ModelSpec& model, double s, const quad::Tolerance& tol = {});

// -omega_{n-1} nu(B(0,r)^c).
double radial_G(const ModelSpec& model, double r);

struct RadialTail {
  std::function<double(double)> G;
  std::vector<double> nodes;
};
RadialTail radial_tail(const ModelSpec& model);

// Jump part g(u^2) through the polar-coordinate formula with the H kernel.
double iso_g(const ModelSpec& model, double u, const quad::Tolerance& tol = {});

// inf{v : g(v) >= x} for the full exponent g(|xi|^2) = Re psi(xi) of an isotropic model.
double g_inverse(const ModelSpec& model, double x, const quad::Tolerance& tol = {});

struct QuadraticMajorant {
  double c = 0.0;
  double d = 0.0;
};
// Re psi(xi) <= c |xi|^2 + d with c = (|Q| + int_{|y|<=R} |y|^2 nu)/2 and d = 2 nu(|y| > R).
QuadraticMajorant quadratic_majorant(const ModelSpec& model, double R);

// Integral of |y|^2 over {|y| <= eps} and nu(|y| > eps).
double small_jump_moment(const ModelSpec& model, double eps);
double large_jump_mass(const ModelSpec& model, double eps);

// Re psi of a radial model computed without Bessel functions: one-dimensional cosine
// transforms of the radial profile averaged over the sphere.
double lk_direct_re_psi(const ModelSpec& model, std::span<const double> xi, const quad::Tolerance& tol = {});

// Coordinate axes and the 2^{n-1} unit diagonals (up to sign).
std::vector<std::vector<double>> direction_set(int n);
// Smallest Re psi over the direction set at radius r (exact for isotropic models).
double slowest_re_psi(const ModelSpec& model, double r);

enum class SymbolTransform { identity, log1p };

// A real symbol phi(xi) built from a model: Re psi or ln(1 + Re psi).
class Symbol {
 public:
  explicit Symbol(ModelSpec model, SymbolTransform transform = SymbolTransform::identity)
      : model_(std::move(model)), transform_(transform) {}
  double operator()(std::span<const double> xi) const;
  double radial(double s) const;
  const ModelSpec& model() const { return model_; }
  SymbolTransform transform() const { return transform_; }

 private:
  ModelSpec model_;
  SymbolTransform transform_;
};

namespace detail {
enum class Kernel { cosine, bessel };
// int_0^inf (1 - K(r s)) profile(r) dr, K = cos or H_{(n-2)/2}, for a continuous radial measure.
quad::Result radial_transform(const RadialMeasure& m, double s, Kernel kernel, const quad::Tolerance& tol);
}  // namespace detail

}  // namespace levy
