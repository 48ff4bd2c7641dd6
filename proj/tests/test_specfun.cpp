#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/specfun.hpp"

using namespace levy::specfun;
using std::numbers::pi;

TEST_CASE("bessel_j closed forms") {
  CHECK(std::fabs(bessel_j(0.5, pi).value) < 1e-15);
  CHECK(bessel_j(0.0, 0.0).value == 1.0);
  CHECK(bessel_j(0.5, pi / 2).value == doctest::Approx(2.0 / pi).epsilon(1e-14));
}

TEST_CASE("bessel_j against the standard library") {
  for (double nu : {-0.5, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.7}) {
    for (double z = 0.01; z <= 1000.0; z *= 1.37) {
      const SpecFunResult r = bessel_j(nu, z);
      const double ref = nu < 0 ? std::sqrt(2.0 / (pi * z)) * std::cos(z) : std::cyl_bessel_j(nu, z);
      CHECK(std::fabs(r.value - ref) <= 1e-10);
      CHECK(r.est_error <= 1e-10);
      CHECK(std::isfinite(r.est_error));
    }
  }
}

TEST_CASE("bessel_j picks the series for small z and the expansion for large z") {
  CHECK(bessel_j(0.0, 1.0).method == Method::series);
  CHECK(bessel_j(0.0, 40.0).method == Method::asymptotic);
}

TEST_CASE("bessel_k") {
  CHECK(bessel_k(0.5, 1.0).value == doctest::Approx(std::sqrt(pi / 2) * std::exp(-1.0)).epsilon(1e-14));
  CHECK(bessel_k(0.5, 2.0).value == doctest::Approx(std::sqrt(pi / 4) * std::exp(-2.0)).epsilon(1e-14));
  const double scaled = bessel_k(0.3, 20.0).value * std::exp(20.0) * std::sqrt(20.0);
  CHECK(std::fabs(scaled - std::sqrt(pi / 2)) < 0.01);
  // Reference values from an independent 30-digit evaluation.
  CHECK(bessel_k(0.25, 1.0).value == doctest::Approx(0.43073977444858552).epsilon(1e-12));
  CHECK(bessel_k(1.0, 2.0).value == doctest::Approx(0.13986588181652243).epsilon(1e-12));
  CHECK(bessel_k(0.3, 0.01).value == doctest::Approx(6.8901026382927695).epsilon(1e-12));
  CHECK(bessel_k(2.7, 30.0).value == doctest::Approx(2.4030878842059365e-14).epsilon(1e-12));
  CHECK(bessel_k(0.75, 5.0).value == doctest::Approx(0.0038861592549742765).epsilon(1e-12));
  CHECK(bessel_k(2.5, 3.0).method == Method::recurrence);
  for (double nu : {0.0, 0.25, 1.0, 1.5, 2.3})
    for (double z = 0.05; z < 200.0; z *= 1.9)
      CHECK(bessel_k(nu, z).value == doctest::Approx(std::cyl_bessel_k(nu, z)).epsilon(1e-11));
  CHECK_THROWS_AS(bessel_k(0.5, 0.0), levy::DomainError);
}

TEST_CASE("h_kernel half-integer reductions") {
  for (double z = 0.05; z <= 50.0; z += 0.05) {
    CHECK(std::fabs(h_kernel(-0.5, z) - std::cos(z)) <= 1e-10);
    CHECK(std::fabs(h_kernel(0.5, z) - std::sin(z) / z) <= 1e-10);
  }
  CHECK(h_kernel(0.0, 0.0) == 1.0);
  CHECK(h_kernel(1.5, 0.0) == 1.0);
}

TEST_CASE("h_kernel small-z behaviour and bounds") {
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    const double z = 1e-4;
    CHECK(one_minus_h_kernel(nu, z) / (z * z) == doctest::Approx(1.0 / (4.0 * (nu + 1.0))).epsilon(1e-6));
    for (double x = 0.0; x < 100.0; x += 0.37) CHECK(std::fabs(h_kernel(nu, x)) <= 1.0 + 1e-14);
  }
}

TEST_CASE("h_kernel derivative identity") {
  for (double nu : {-0.5, 0.0, 0.5, 1.0}) {
    for (double z = 0.1; z <= 50.0; z += 0.7) {
      const double h = 1e-4;
      const double fd = (h_kernel(nu, z + h) - h_kernel(nu, z - h)) / (2 * h);
      CHECK(std::fabs(fd + z * h_kernel(nu + 1, z) / (2 * (nu + 1))) <= 1e-6);
    }
  }
}

TEST_CASE("h_kernel large-z envelope") {
  for (double nu : {-0.5, 0.0, 0.5, 1.0})
    for (double z = 50.0; z < 1000.0; z *= 1.11)
      CHECK(std::fabs(h_kernel(nu, z)) * std::pow(z, nu + 0.5) <=
            std::pow(2.0, nu) * std::tgamma(nu + 1) * std::sqrt(2.0 / pi) * 1.1);
}

TEST_CASE("gamma_fn") {
  CHECK(gamma_fn(1.0) == 1.0);
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-14));
  CHECK_THROWS_AS(gamma_fn(0.0), levy::DomainError);
  CHECK_THROWS_AS(gamma_fn(-3.0), levy::DomainError);
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(ball_volume(2) == doctest::Approx(pi));
}
