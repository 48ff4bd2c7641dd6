#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/inversion.hpp"
#include "levy/rearrangement.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

ModelSpec heat(int n) {
  std::vector<double> q(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i * n + i)] = 2.0;
  return ModelSpec::create(n, std::vector<double>(static_cast<std::size_t>(n), 0.0), q, NoJumps{}, true);
}
ModelSpec stable(int n, double a) { return ModelSpec::create(n, {}, {}, RadialFamily{RadialFamilyKind::stable, a}, true); }
ModelSpec sym_gamma() { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::gamma_type}, true); }
ModelSpec ellipse() { return ModelSpec::create(2, {0.0, 0.0}, {2.0, 0.0, 0.0, 8.0}, NoJumps{}, false); }

}  // namespace

TEST_CASE("distribution function and its inverse") {
  CHECK(nu_dist(heat(1), 4.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(nu_dist(stable(1, 1.0), 3.0) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(nu_dist(stable(2, 1.0), 2.0) == doctest::Approx(4 * pi).epsilon(1e-12));
  CHECK(nu_inverse(heat(1), 4.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(nu_inverse(heat(1), 0.0) == 0.0);
  CHECK(nu_inverse(stable(1, 1.0), 6.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(u_star(heat(1), 1.0, 4.0) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  CHECK(u_star(stable(1, 1.0), 2.0, 0.0) == 1.0);
  CHECK(u_star(stable(1, 1.0), 2.0, 6.0) == doctest::Approx(std::exp(-6.0)).epsilon(1e-12));
  CHECK(nu_method(heat(2)) == NuMethod::radial_bisection);
  CHECK(nu_method(ellipse()) == NuMethod::grid_count);
}

TEST_CASE("grid counting on an anisotropic Gaussian") {
  // Re psi = xi_1^2 + 4 xi_2^2, so nu(x) = pi x / 2.
  const SublevelLattice L = sublevel_lattice(ellipse(), 10.0);
  CHECK(L.boundary_min > 10.0);
  for (double x : {1.0, 4.0, 10.0}) {
    const double exact = pi * x / 2;
    const double layer = 2 * pi * std::sqrt(x) * 1.5 * L.cell_size;
    CHECK(std::fabs(L.volume(x) - exact) < layer);
    CHECK(nu_dist(ellipse(), x) == doctest::Approx(exact).epsilon(0.05));
  }
  CHECK(L.volume(1e6) == std::numeric_limits<double>::infinity());
  const double x = nu_inverse(ellipse(), pi);
  CHECK(x == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Laplace representation matches pt_zero") {
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(pt0_laplace(heat(1), t) == doctest::Approx(pt_zero(heat(1), t)).epsilon(1e-9));
    CHECK(pt0_laplace(stable(1, 1.0), t) == doctest::Approx(pt_zero(stable(1, 1.0), t)).epsilon(1e-9));
    CHECK(pt0_laplace(stable(1, 1.5), t) == doctest::Approx(pt_zero(stable(1, 1.5), t)).epsilon(1e-9));
    CHECK(pt0_laplace(stable(2, 1.5), t) == doctest::Approx(pt_zero(stable(2, 1.5), t)).epsilon(1e-9));
  }
  for (double t : {0.75, 1.0, 2.0}) CHECK(pt0_laplace(sym_gamma(), t) == doctest::Approx(pt_zero(sym_gamma(), t)).epsilon(1e-9));
  CHECK(pt0_laplace(heat(1), 1.0) == doctest::Approx(1 / (2 * std::sqrt(pi))).epsilon(1e-12));
  CHECK(pt0_laplace(stable(1, 1.0), 1.0) == doctest::Approx(1 / pi).epsilon(1e-12));
  CHECK(pt0_laplace(ellipse(), 1.0) == doctest::Approx(1 / (2 * pi * 4)).epsilon(1e-6));
  CHECK_THROWS_AS(pt0_laplace(sym_gamma(), 0.45), Refusal);
  const double c = pt0_laplace(stable(1, 1.5), 0.5) * std::pow(0.5, 1 / 1.5);
  for (double t : {1.0, 2.0}) CHECK(pt0_laplace(stable(1, 1.5), t) * std::pow(t, 1 / 1.5) == doctest::Approx(c).epsilon(1e-9));
}

TEST_CASE("table lookup and generalized inverse") {
  const RearrangementTable T = build_table(heat(1), 100.0, 120);
  CHECK(T.method == NuMethod::radial_bisection);
  for (std::size_t i = 1; i < T.nu_values.size(); ++i) CHECK(T.nu_values[i] >= T.nu_values[i - 1]);
  // nu = 2 sqrt(x) is a power law, so log-log interpolation is exact.
  for (double x : {1e-5, 0.0123, 3.3, 77.0}) CHECK(T.nu(x) == doctest::Approx(2 * std::sqrt(x)).epsilon(1e-10));
  for (std::size_t i = 0; i < T.x_nodes.size(); ++i) {
    const double x = T.x_nodes[i];
    CHECK(T.inverse(T.nu(x)) <= x * (1 + 1e-12));
    const double s = T.nu_values[i];
    CHECK(T.nu(T.inverse(s)) >= s * (1 - 1e-12));
  }
  CHECK_THROWS_AS(T.nu(200.0), DomainError);
  CHECK_THROWS_AS(T.inverse(1e6), DomainError);

  const RearrangementTable G = build_table(ellipse(), 20.0, 40);
  CHECK(G.method == NuMethod::grid_count);
  CHECK(G.cell_size > 0.0);
  for (std::size_t i = 0; i < G.x_nodes.size(); ++i) {
    CHECK(G.inverse(G.nu_values[i]) <= G.x_nodes[i]);
    CHECK(G.nu(G.inverse(G.nu_values[i])) >= G.nu_values[i]);
  }

  std::ostringstream os;
  write_csv(os, T);
  CHECK(os.str().rfind("# method=radial_bisection", 0) == 0);
  CHECK(os.str().find("x,nu\n") != std::string::npos);
}
