#pragma once

#include <complex>

namespace levy::specfun {

enum class Method { series, asymptotic, recurrence, quadrature };

const char* to_string(Method m);

struct SpecFunResult {
  double value = 0.0;
  double est_error = 0.0;
  Method method = Method::series;
};

// Bessel function of the first kind, nu in [-1/2, 10], z >= 0.
SpecFunResult bessel_j(double nu, double z);

// Modified Bessel function of the third kind, z > 0.
SpecFunResult bessel_k(double nu, double z);

// Normalised kernel H_nu(z) = 2^nu Gamma(nu+1) z^{-nu} J_nu(z), H_nu(0) = 1.
SpecFunResult h_kernel_eval(double nu, double z);
double h_kernel(double nu, double z);

// 1 - H_nu(z) without cancellation for small z.
double one_minus_h_kernel(double nu, double z);
// H^{(1)}_nu(z) e^{-iz} from the Hankel expansion, z >= 20; non-oscillatory in z.
std::complex<double> hankel1_envelope(double nu, double z);

double gamma_fn(double x);

// Surface area of the unit sphere in R^n, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// Volume of the unit ball in R^n.
double ball_volume(int n);

}  // namespace levy::specfun
