#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "levy/diagnostics.hpp"
#include "levy/errors.hpp"

using namespace levy;

namespace {

ModelSpec heat() { return ModelSpec::create(1, {0.0}, {2.0}, NoJumps{}, true); }
ModelSpec stable(double a) { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::stable, a}, true); }
ModelSpec sym_gamma() { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::gamma_type}, true); }
ModelSpec log_kernel() { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::log_kernel}, true); }
ModelSpec poisson() {
  // Unit mass spread over 1 <= |y| <= 2.
  return ModelSpec::create(1, {}, {}, RadialTable{{1.0, 2.0}, {0.5, 0.5}, Interpolation::linear}, true);
}
ModelSpec exa4() {
  AtomsMeasure m;
  for (int j = 1; j <= 60; ++j) m.atoms.push_back(ShellAtom{std::exp2(-j), 1.0 / j});
  return ModelSpec::create(1, {}, {}, m, true);
}

}  // namespace

TEST_CASE("Hartman-Wintner quotient") {
  const LimitReport g = hw_functional(heat(), {});
  CHECK(g.verdict == Verdict::diverges);
  CHECK(g.values.size() == 37);
  const LimitReport s = hw_functional(sym_gamma(), {}, 1.0);
  CHECK(s.verdict == Verdict::bounded);
  CHECK(std::fabs(s.values.back() - 2.0) < 0.05);
  REQUIRE(s.threshold_compare);
  CHECK(s.threshold_compare->threshold == 1.0);
  CHECK(s.threshold_compare->pass);
  CHECK_FALSE(hw_functional(sym_gamma(), {}, 0.45).threshold_compare->pass);
  CHECK(hw_functional(sym_gamma(), {}, 0.55).threshold_compare->pass);
  const LimitReport l = hw_functional(log_kernel(), {});
  CHECK(l.verdict == Verdict::diverges);
  // Re psi ~ ln^2 xi, so the quotient grows like ln xi and the log-log slope like 1 / ln xi.
  const double mid = std::log(std::exp2(36.5));
  CHECK(l.slope == doctest::Approx(1.0 / mid).epsilon(0.3));
  CHECK_THROWS_AS(hw_functional(heat(), {5, 4}), DomainError);
}

TEST_CASE("Kallenberg and tail mass quotients") {
  const LimitReport k = kallenberg_functional(log_kernel(), {10, 30});
  for (std::size_t i = 0; i < k.k.size(); ++i)
    CHECK(std::fabs(k.values[i] - (1.0 + 1.0 / (2.0 * k.k[i] * std::log(2.0)))) < 1e-3);
  CHECK(k.verdict == Verdict::bounded);
  CHECK(kallenberg_functional(stable(1.0), {}).verdict == Verdict::diverges);
  CHECK(kallenberg_functional(poisson(), {}).verdict == Verdict::vanishes);
  CHECK(tail_mass_functional(stable(1.0), {}).verdict == Verdict::diverges);
  CHECK(tail_mass_functional(poisson(), {}).verdict == Verdict::vanishes);
  const LimitReport t = tail_mass_functional(log_kernel(), {});
  CHECK(t.verdict == Verdict::diverges);
  CHECK(t.values.back() == doctest::Approx(40 * std::log(2.0)).epsilon(1e-6));
  CHECK_FALSE(t.warnings.empty());
  CHECK(hw_functional(poisson(), {}).verdict == Verdict::vanishes);
}

TEST_CASE("rearranged and phi quotients") {
  for (const auto& m : {heat(), stable(1.5), sym_gamma()}) {
    const LimitReport a = hw_functional(m, {});
    const LimitReport b = hw_star_functional(m, {});
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(std::fabs(a.values[i] - b.values[i]) <= 1e-8 * a.values[i]);
    CHECK(a.verdict == b.verdict);
  }
  CHECK(hw_phi_functional(heat(), Symbol(heat()), {}).verdict == Verdict::diverges);
  CHECK(hw_phi_functional(log_kernel(), Symbol(log_kernel(), SymbolTransform::log1p), {}).verdict == Verdict::diverges);
  CHECK(hw_phi_functional(heat(), Symbol(stable(1.0)), {}).verdict == Verdict::diverges);
}

TEST_CASE("classification ladder") {
  const Classification g = classify(heat(), {0.01, 1.0});
  CHECK(g.verdict == "smooth density for all t");
  CHECK(g.per_t[0].probe_integrable);
  const Classification s = classify(sym_gamma(), {0.45, 0.55, 1.0});
  CHECK(s.isotropic_monotone);
  CHECK_FALSE(s.per_t[0].hw.pass);
  CHECK_FALSE(s.per_t[0].probe_integrable);
  CHECK(s.per_t[1].hw.pass);
  CHECK(s.per_t[1].probe_integrable);
  CHECK(s.notes.empty());
  CHECK(s.verdict.rfind("density for t > 0.5", 0) == 0);
  const Classification e = classify(exa4(), {1.0});
  CHECK(e.verdict == "no density (Re psi does not diverge)");
  CHECK(e.re_psi.trailing_max < 0.1);
}
