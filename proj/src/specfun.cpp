#include "levy/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "levy/errors.hpp"

namespace levy::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

void check_nu(double nu) {
  if (!(nu >= -0.5 && nu <= 10.0))
    throw DomainError("Bessel order nu=" + std::to_string(nu) + " outside supported range [-1/2, 10]");
}

struct Partial {
  double value;
  double err;
};

// sum_k (-z^2/4)^k / (k! (nu+1)_k), i.e. H_nu(z).
Partial h_series(double nu, double z) {
  const double q = -0.25 * z * z;
  double term = 1.0, sum = 1.0, abs_sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    abs_sum += std::fabs(term);
    if (std::fabs(term) <= 0.25 * kEps * std::fabs(sum) && k * (nu + k) > -q) break;
  }
  return {sum, 2.0 * kEps * abs_sum + kEps * std::fabs(sum)};
}

// Hankel expansion of J_nu(z); error includes truncation, rounding and the phase.
Partial j_asymptotic(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0, q = 0.0, abs_sum = 1.0, prev = 1.0, trunc = 0.0;
  double term = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
    if (next == 0.0) {
      trunc = 0.0;
      break;
    }
    if (std::fabs(next) > std::fabs(prev) && k > 1) {
      trunc = std::fabs(prev);
      break;
    }
    term = next;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    abs_sum += std::fabs(term);
    prev = term;
    trunc = std::fabs(term);
    if (std::fabs(term) < 1e-3 * kEps) {
      trunc = 0.0;
      break;
    }
  }
  const double omega = z - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * z));
  const double value = amp * (p * std::cos(omega) - q * std::sin(omega));
  const double err = amp * (trunc + kEps * (abs_sum + z + 1.0));
  return {value, err};
}

double h_scale(double nu, double z) {
  return std::exp(nu * std::log(2.0 / z) + std::lgamma(nu + 1.0));
}

bool is_half_integer(double nu) {
  const double twice = 2.0 * nu;
  const double r = std::round(twice);
  return std::fabs(twice - r) < 1e-14 && std::fmod(std::fabs(r), 2.0) == 1.0;
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::asymptotic: return "asymptotic";
    case Method::recurrence: return "recurrence";
    case Method::quadrature: return "quadrature";
  }
  return "unknown";
}

SpecFunResult h_kernel_eval(double nu, double z) {
  check_nu(nu);
  if (!(z >= 0.0)) throw DomainError("H kernel needs z >= 0");
  if (z == 0.0) return {1.0, 0.0, Method::series};
  Partial ser{0.0, kInf};
  if (z <= 45.0) ser = h_series(nu, z);
  if (z >= 1.0) {
    const double scale = h_scale(nu, z);
    const Partial as = j_asymptotic(nu, z);
    if (scale * as.err < ser.err) return {scale * as.value, scale * as.err, Method::asymptotic};
  }
  return {ser.value, ser.err, Method::series};
}

double h_kernel(double nu, double z) { return h_kernel_eval(nu, z).value; }

std::complex<double> hankel1_envelope(double nu, double z) {
  if (!(z >= 20.0)) throw DomainError("hankel1_envelope needs z >= 20");
  const double mu = 4.0 * nu * nu;
  std::complex<double> sum = 1.0, term = 1.0;
  const std::complex<double> i(0.0, 1.0);
  double prev = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= i * (mu - odd * odd) / (8.0 * k * z);
    const double a = std::abs(term);
    if (a == 0.0) break;
    if (a > prev) break;
    sum += term;
    prev = a;
    if (a < 1e-17 * std::abs(sum)) break;
  }
  const double phase = -(0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * std::polar(1.0, phase) * sum;
}

double one_minus_h_kernel(double nu, double z) {
  check_nu(nu);
  if (z == 0.0) return 0.0;
  if (z < 1.0) {
    const double q = -0.25 * z * z;
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      term *= q / (k * (nu + k));
      sum += term;
      if (std::fabs(term) <= 0.1 * kEps * std::fabs(sum)) break;
    }
    return -sum;
  }
  return 1.0 - h_kernel(nu, z);
}

SpecFunResult bessel_j(double nu, double z) {
  check_nu(nu);
  if (!(z >= 0.0)) throw DomainError("bessel_j needs z >= 0");
  if (z == 0.0) {
    if (nu == 0.0) return {1.0, 0.0, Method::series};
    if (nu > 0.0) return {0.0, 0.0, Method::series};
    throw DomainError("J_nu(0) is singular for nu < 0");
  }
  const SpecFunResult h = h_kernel_eval(nu, z);
  const double inv_scale = 1.0 / h_scale(nu, z);
  return {h.value * inv_scale, h.est_error * inv_scale, h.method};
}

SpecFunResult bessel_k(double nu, double z) {
  if (!(z > 0.0)) throw DomainError("bessel_k needs z > 0");
  nu = std::fabs(nu);
  if (!(nu <= 30.0)) throw DomainError("bessel_k order outside supported range");
  if (is_half_integer(nu)) {
    double km = std::sqrt(kPi / (2.0 * z)) * std::exp(-z);  // K_{1/2}
    double k = km * (1.0 + 1.0 / z);                          // K_{3/2}
    if (nu < 1.0) return {km, 2.0 * kEps * km, Method::recurrence};
    int steps = 0;
    for (double mu = 1.5; mu < nu - 0.25; mu += 1.0, ++steps) {
      const double next = km + 2.0 * mu / z * k;
      km = k;
      k = next;
    }
    return {k, (4.0 + steps) * kEps * k, Method::recurrence};
  }
  if (z >= 15.0) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, trunc = kInf;
    for (int k = 1; k < 60; ++k) {
      const double next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
      if (std::fabs(next) > std::fabs(term)) break;
      term = next;
      sum += term;
      trunc = std::fabs(term);
      if (trunc < 0.1 * kEps * std::fabs(sum)) break;
    }
    if (trunc < 10.0 * kEps * std::fabs(sum)) {
      const double v = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) * sum;
      return {v, std::fabs(v) * (trunc / std::fabs(sum) + 4.0 * kEps), Method::asymptotic};
    }
  }
  // K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du, trapezoid on the even integrand.
  auto f = [&](double u) {
    const double c = -z * std::cosh(u);
    return 0.5 * (std::exp(c + nu * u) + std::exp(c - nu * u));
  };
  const double u_peak = std::asinh(nu / z);
  double h = 0.25;
  auto tail_sum = [&](double start, double step) {
    double s = 0.0;
    for (double u = start;; u += step) {
      const double v = f(u);
      s += v;
      if (u > u_peak && v < 1e-18 * s) break;
      if (u > 800.0) break;
    }
    return s;
  };
  double sum = 0.5 * f(0.0) + tail_sum(h, h);
  double prev = h * sum;
  double cur = prev;
  for (int level = 0; level < 10; ++level) {
    sum += tail_sum(0.5 * h, h);
    h *= 0.5;
    cur = h * sum;
    if (std::fabs(cur - prev) <= 1e-15 * std::fabs(cur)) break;
    prev = cur;
  }
  return {cur, std::fabs(cur - prev) + 8.0 * kEps * std::fabs(cur), Method::quadrature};
}

double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma_fn of NaN");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma_fn pole at x=" + std::to_string(x));
  const double v = std::tgamma(x);
  if (!std::isfinite(v)) throw DomainError("gamma_fn overflow at x=" + std::to_string(x));
  return v;
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  return 2.0 * std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n);
}

double ball_volume(int n) {
  if (n < 1) throw DomainError("dimension must be positive");
  return std::pow(kPi, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

}  // namespace levy::specfun
