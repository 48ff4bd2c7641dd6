#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/inversion.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

ModelSpec gaussian(int n) {
  std::vector<double> q(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i * n + i)] = 2.0;
  return ModelSpec::create(n, std::vector<double>(static_cast<std::size_t>(n), 0.0), q, NoJumps{}, true);
}
ModelSpec stable(int n, double a) { return ModelSpec::create(n, {}, {}, RadialFamily{RadialFamilyKind::stable, a}, true); }
ModelSpec sym_gamma() { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::gamma_type}, true); }

}  // namespace

TEST_CASE("closed forms") {
  CHECK(closed_form(ClosedForm::gaussian, 1.0, 0.0) == doctest::Approx(0.28209479177387814).epsilon(1e-15));
  CHECK(closed_form(ClosedForm::cauchy, 1.0, 0.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(closed_form(ClosedForm::gamma, 2.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(closed_form(ClosedForm::sym_gamma_besselk, 1.0, 1.0) == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-13));
  CHECK(closed_form(ClosedForm::laplace, 1.0, -3.0) == doctest::Approx(0.5 * std::exp(-3.0)).epsilon(1e-13));
  // t = 2: (1 + |x|) e^{-|x|} / 4.
  for (double x : {0.0, 0.3, 2.0, 7.0})
    CHECK(closed_form(ClosedForm::laplace, 2.0, x) == doctest::Approx(0.25 * (1 + x) * std::exp(-x)).epsilon(1e-12));
  // n = 3, t = 2: the Bessel form reduces to e^{-|x|} / (8 pi).
  CHECK(closed_form(ClosedForm::sym_gamma_besselk, 2.0, 1.5, 3) == doctest::Approx(std::exp(-1.5) / (8 * pi)).epsilon(1e-12));
  CHECK_THROWS_AS(closed_form(ClosedForm::sym_gamma_besselk, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(closed_form(ClosedForm::gamma, 0.5, 0.0), DomainError);
  CHECK(closed_form(ClosedForm::gamma, 2.0, -1.0) == 0.0);
  CHECK(closed_form_from_string("laplace") == ClosedForm::laplace);
}

TEST_CASE("invert_grid against closed forms") {
  const Grid g = Grid::line(-10.0, 10.0, 0.1);
  for (double t : {0.5, 1.0, 2.0}) {
    const auto fg = invert_grid(gaussian(1), t, g);
    const auto fc = invert_grid(stable(1, 1.0), t, g);
    for (int i = 0; i < g.count[0]; ++i) {
      const double x = g.coord(0, i);
      CHECK(std::fabs(fg.values[static_cast<std::size_t>(i)] - closed_form(ClosedForm::gaussian, t, x)) < 1e-12);
      CHECK(std::fabs(fc.values[static_cast<std::size_t>(i)] - closed_form(ClosedForm::cauchy, t, x)) < 1e-12);
    }
    CHECK(fg.imag_residue < 1e-10);
    CHECK(std::fabs(fg.mass - 1.0) <= fg.mass_error + 1e-14);
    CHECK(std::fabs(fc.mass - 1.0) <= fc.mass_error + 1e-14);
  }
  CHECK(invert_grid(sym_gamma(), 1.0, Grid::line(1.0, 1.0, 1.0)).values[0] == doctest::Approx(0.18393972058572117).epsilon(1e-10));
}

TEST_CASE("smoothing in t") {
  const Grid g = Grid::line(-3.0, 3.0, 0.25);
  for (const auto& m : {gaussian(1), stable(1, 0.7), sym_gamma()}) {
    double prev = 1e300;
    for (double t : {1.0, 1.5, 2.0, 4.0}) {
      const auto f = invert_grid(m, t, g);
      const double p0 = f.at(0.0);
      CHECK(p0 <= prev);
      prev = p0;
      for (double v : f.values) CHECK(v <= p0 * (1 + 1e-12));
    }
  }
}

TEST_CASE("integrability refusal follows the 1/t threshold") {
  CHECK_THROWS_AS(pt_zero(sym_gamma(), 0.45), Refusal);
  CHECK_THROWS_AS(invert_grid(sym_gamma(), 0.45, Grid::line(-1, 1, 0.5)), Refusal);
  // (1/pi) int_0^inf (1 + xi^2)^{-t} = Gamma(t - 1/2) / (2 sqrt(pi) Gamma(t)).
  CHECK(pt_zero(sym_gamma(), 0.55) ==
        doctest::Approx(std::tgamma(0.05) / (2 * std::sqrt(pi) * std::tgamma(0.55))).epsilon(1e-8));
  const auto pr = probe_integrability(sym_gamma(), 0.45);
  CHECK(!pr.integrable);
  CHECK(pr.exponent == doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("radial inversion") {
  CHECK(invert_radial(gaussian(1), 1.0, {2.0}).values[0] == doctest::Approx(std::exp(-1.0) / std::sqrt(4 * pi)).epsilon(1e-12));
  CHECK(invert_radial(gaussian(3), 1.0, {0.0}).values[0] == doctest::Approx(std::pow(4 * pi, -1.5)).epsilon(1e-12));
  CHECK(invert_radial(stable(2, 1.0), 1.0, {0.0}).values[0] == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-12));
  for (int n : {2, 3})
    for (double r : {0.5, 2.0, 6.0})
      CHECK(invert_radial(stable(n, 1.0), 1.0, {r}).values[0] == doctest::Approx(closed_form(ClosedForm::cauchy, 1.0, r, n)).epsilon(1e-9));
  const Grid g = Grid::line(-6.0, 6.0, 0.5);
  std::vector<double> radii;
  for (int i = 0; i < g.count[0]; ++i) radii.push_back(std::fabs(g.coord(0, i)));
  for (const auto& m : {gaussian(1), stable(1, 1.0), stable(1, 1.5), sym_gamma()}) {
    const auto a = invert_grid(m, 1.0, g);
    const auto b = invert_radial(m, 1.0, radii);
    for (std::size_t i = 0; i < radii.size(); ++i) CHECK(std::fabs(a.values[i] - b.values[i]) <= 1e-8);
  }
  CHECK_THROWS_AS(invert_radial(ModelSpec::create(1, {1.0}, {}, NoJumps{}, false), 1.0, {0.0}), DomainError);
}

TEST_CASE("two-dimensional lattice") {
  const Grid g = Grid::square(-3.0, 3.0, 0.5);
  for (const auto& m : {gaussian(2), stable(2, 1.5)}) {
    const auto f = invert_grid(m, 1.0, g);
    std::vector<double> radii;
    for (int i = 0; i < g.count[0]; ++i)
      for (int j = 0; j < g.count[1]; ++j) radii.push_back(std::hypot(g.coord(0, i), g.coord(1, j)));
    const auto r = invert_radial(m, 1.0, radii);
    for (std::size_t k = 0; k < radii.size(); ++k) CHECK(std::fabs(f.values[k] - r.values[k]) <= std::max(1e-6, f.tail_bound));
    CHECK(f.imag_residue < 1e-10);
  }
}

TEST_CASE("pt_zero") {
  CHECK(pt_zero(gaussian(1), 4.0) == doctest::Approx(1.0 / (2 * std::sqrt(4 * pi))).epsilon(1e-10));
  CHECK(pt_zero(stable(1, 1.0), 2.0) == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-10));
  for (int n : {1, 2}) {
    const double base = pt_zero(stable(n, 1.5), 1.0);
    for (double t : {0.5, 2.0}) CHECK(pt_zero(stable(n, 1.5), t) * std::pow(t, n / 1.5) == doctest::Approx(base).epsilon(1e-6));
  }
  AtomsMeasure asym;
  asym.atoms.push_back(PointAtom{{0.5, -1.0}, 2.0});
  const auto aniso = ModelSpec::create(2, {0.0, 0.0}, {1.0, 0.2, 0.2, 0.5}, asym, false);
  const auto f = invert_grid(ModelSpec::create(2, {0.0, 0.0}, {1.0, 0.2, 0.2, 0.5}, NoJumps{}, false), 1.0, Grid::square(0.0, 0.0, 1.0));
  // Gaussian with covariance tQ: p(0) = 1 / (2 pi t sqrt(det Q)).
  CHECK(f.values[0] == doctest::Approx(1.0 / (2 * pi * std::sqrt(0.46))).epsilon(1e-9));
  CHECK(pt_zero(aniso, 1.0) > 0.0);
}

TEST_CASE("multiplier operator") {
  const Symbol phi(gaussian(1));
  const Grid g = Grid::line(-4.0, 4.0, 0.25);
  const auto f = multiplier_apply(gaussian(1), phi, 1, 1.0, g);
  CHECK(f.at(0.0) == doctest::Approx(0.28209479177387814 / 2).epsilon(1e-10));
  // -p'' for the heat kernel: p (1/(2t) - x^2/(4t^2)).
  for (int i = 0; i < g.count[0]; ++i) {
    const double x = g.coord(0, i);
    CHECK(f.values[static_cast<std::size_t>(i)] == doctest::Approx(closed_form(ClosedForm::gaussian, 1.0, x) * (0.5 - x * x / 4)).epsilon(1e-9));
  }
  CHECK(multiplier_apply(gaussian(1), phi, 0, 1.0, g).values == invert_grid(gaussian(1), 1.0, g).values);
  // phi = |xi|: sup norm of the output is at most (2 pi)^{-1} int |xi| e^{-xi^2} = 1 / (2 pi).
  const auto h = multiplier_apply(gaussian(1), Symbol(stable(1, 1.0)), 1, 1.0, g);
  for (double v : h.values) CHECK(std::fabs(v) <= 1.0 / (2 * pi) + 1e-12);
}

TEST_CASE("asymmetric gamma process") {
  const double cg = 0.621449624235813357;
  const auto m = ModelSpec::create(1, {-cg}, {}, GammaSubordinator{1.0}, false);
  const Grid g = Grid::line(0.25, 5.0, 0.05);
  const auto f = invert_grid(m, 2.0, g);
  for (int i = 0; i < g.count[0]; ++i)
    CHECK(std::fabs(f.values[static_cast<std::size_t>(i)] - closed_form(ClosedForm::gamma, 2.0, g.coord(0, i))) < 1e-9);
  // Large t: the phase t arctan(xi) dominates the panel width.
  const auto far = invert_grid(m, 1000.0, Grid::line(0.0, 1000.0, 500.0));
  CHECK(std::fabs(far.values[0]) < 1e-15);
  CHECK(far.values[2] == doctest::Approx(closed_form(ClosedForm::gamma, 1000.0, 1000.0)).epsilon(1e-9));
}

TEST_CASE("csv output") {
  const auto f = invert_grid(gaussian(1), 1.0, Grid::line(-1.0, 1.0, 1.0));
  std::ostringstream os;
  write_csv(os, f, {{"model", "gaussian"}});
  const std::string s = os.str();
  CHECK(s.find("# t=1\n") != std::string::npos);
  CHECK(s.find("# model=gaussian\n") != std::string::npos);
  CHECK(s.find("\n0,0.28209479177387") != std::string::npos);
}
