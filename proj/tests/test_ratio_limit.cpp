#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/quadrature.hpp"
#include "levy/ratio_limit.hpp"

using namespace levy;

namespace {

constexpr double kPi = std::numbers::pi;

ModelSpec heat() { return ModelSpec::create(1, {0.0}, {2.0}, NoJumps{}, true); }
ModelSpec cauchy() { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::stable, 1.0}, true); }
ModelSpec stable(double a) { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::stable, a}, true); }
ModelSpec cosine_pair() {
  AtomsMeasure m;
  m.atoms.push_back(ShellAtom{1.0, 1.0});
  return ModelSpec::create(1, {}, {}, m, true);
}

}  // namespace

TEST_CASE("tail mass of the normalised exponent") {
  const double g = chi_tail_mass(heat(), 100.0, 1.0);
  CHECK(g < 1e-20);
  CHECK(g == doctest::Approx(std::erfc(10.0)).epsilon(1e-6));
  CHECK(chi_tail_mass(cauchy(), 10.0, 1.0) == doctest::Approx(std::exp(-10.0)).epsilon(1e-8));
  CHECK(chi_tail_mass(stable(1.5), 3.0, 0.0) == 1.0);
  CHECK(chi_tail_mass(cauchy(), 100.0, 0.5) < chi_tail_mass(cauchy(), 10.0, 0.5));
  CHECK(exp_psi_l1(cauchy(), 4.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(chi_tail_mass(cosine_pair(), 1.0, 1.0), Refusal);
}

TEST_CASE("infimum of Re psi away from the origin") {
  CHECK(inf_re_psi_outside(heat(), 2.0).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(inf_re_psi_outside(cauchy(), 0.5).value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_FALSE(inf_re_psi_outside(cauchy(), 0.5).periodic);
  const InfOutside c = inf_re_psi_outside(cosine_pair(), 5.0);
  CHECK(c.periodic);
  CHECK(c.value == 0.0);
  CHECK(std::fabs(std::remainder(c.argmin, 2.0 * kPi)) < 1e-6);
}

TEST_CASE("p_t(x) / p_t(0)") {
  CHECK(std::fabs(ratio_px_p0(cauchy(), 100.0, {1.0}) - 1e4 / (1e4 + 1.0)) < 1e-6);
  CHECK(ratio_px_p0(heat(), 100.0, {2.0}) == doctest::Approx(std::exp(-0.01)).epsilon(1e-8));
  CHECK(ratio_px_p0(heat(), 100.0, {-2.0}) == doctest::Approx(std::exp(-0.01)).epsilon(1e-8));
  CHECK(ratio_px_p0(stable(1.5), 3.0, {0.0}) == 1.0);
  // psi = xi_1^2 + 4 xi_2^2.
  const ModelSpec aniso = ModelSpec::create(2, {}, {2.0, 0.0, 0.0, 8.0}, NoJumps{}, false);
  CHECK(ratio_px_p0(aniso, 1.0, {1.0, 1.0}) == doctest::Approx(std::exp(-0.25 - 1.0 / 16.0)).epsilon(1e-8));
  // Isotropic heat kernel in R^3.
  const ModelSpec h3 = ModelSpec::create(3, {}, {2, 0, 0, 0, 2, 0, 0, 0, 2}, NoJumps{}, true);
  CHECK(ratio_px_p0(h3, 2.0, {1.0, 0.0, 1.0}) == doctest::Approx(std::exp(-0.25)).epsilon(1e-8));
}

TEST_CASE("semigroup ratio") {
  const SampledFunction f = gaussian_bump(1);
  CHECK(f.integral() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  for (double t : {1.0, 100.0}) {
    // e^{-z^2} against the heat kernel of variance 2t.
    const SemigroupRatio r = semigroup_ratio(heat(), f, t, {0.0});
    const double exact = 1.0 / (std::sqrt(1.0 + 4.0 * t) * std::sqrt(kPi / t));
    CHECK(r.observed == doctest::Approx(exact).epsilon(1e-8));
    CHECK(r.target == doctest::Approx(std::sqrt(kPi) / (2.0 * kPi)).epsilon(1e-12));
  }
  CHECK(std::fabs(semigroup_ratio(heat(), f, 100.0, {0.0}).observed / (std::sqrt(kPi) / (2.0 * kPi)) - 1.0) < 0.01);
  {
    const double t = 20.0, x = 1.5;
    auto g = [&](double z) { return std::exp(-z * z) * t / (kPi * (t * t + (z - x) * (z - x))); };
    const double exact = quad::gauss_kronrod(g, -12.0, 12.0, 1e-14).value / 1.0;
    const SemigroupRatio r = semigroup_ratio(cauchy(), f, t, {x});
    CHECK(r.observed * r.l1_norm == doctest::Approx(exact).epsilon(1e-7));
    CHECK(r.l1_norm == doctest::Approx(2.0 / t).epsilon(1e-10));
  }
  SampledFunction odd = f;
  for (int i = 0; i < odd.grid.count[0]; ++i) odd.values[static_cast<std::size_t>(i)] *= odd.grid.coord(0, i);
  const SemigroupRatio o = semigroup_ratio(heat(), odd, 100.0, {0.0});
  CHECK(o.target == doctest::Approx(0.0));
  CHECK(std::fabs(o.observed) < 1e-12);
  // Two dimensions: the heat semigroup on e^{-|z|^2}.
  const ModelSpec h2 = ModelSpec::create(2, {}, {2.0, 0.0, 0.0, 2.0}, NoJumps{}, true);
  const SemigroupRatio r2 = semigroup_ratio(h2, gaussian_bump(2, 5.0, 0.1), 10.0, {0.0, 0.0});
  CHECK(r2.observed == doctest::Approx(1.0 / ((1.0 + 40.0) * (kPi / 10.0))).epsilon(1e-8));
}

TEST_CASE("ratio report") {
  const RatioReport r = ratio_limit_report(stable(1.5), gaussian_bump(1), {1.0});
  REQUIRE(r.rungs.size() == 4);
  CHECK(r.m_delta.value == doctest::Approx(1.0).epsilon(1e-10));
  for (const RatioRung& g : r.rungs) {
    CHECK(g.refusal.empty());
    CHECK(g.envelope_holds);
    CHECK(std::fabs(g.px_p0 - 1.0) <= g.px_p0_envelope);
  }
  CHECK(std::fabs(r.rungs.back().semigroup.observed / r.limit_semigroup - 1.0) < 0.01);
  CHECK(std::fabs(r.rungs.back().shifted_ratio - 1.0) < 0.01);
  CHECK(std::fabs(r.rungs.back().px_p0 - 1.0) < std::fabs(r.rungs.front().px_p0 - 1.0));
  const RatioReport c = ratio_limit_report(cosine_pair(), gaussian_bump(1), {1.0});
  CHECK(c.m_delta.periodic);
  for (const RatioRung& g : c.rungs) CHECK_FALSE(g.refusal.empty());
}
