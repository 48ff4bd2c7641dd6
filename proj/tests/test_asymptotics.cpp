#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "levy/asymptotics.hpp"
#include "levy/errors.hpp"
#include "levy/inversion.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

ModelSpec heat(int n) {
  std::vector<double> q(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i * n + i)] = 2.0;
  return ModelSpec::create(n, std::vector<double>(static_cast<std::size_t>(n), 0.0), q, NoJumps{}, true);
}
ModelSpec stable(int n, double a) { return ModelSpec::create(n, {}, {}, RadialFamily{RadialFamilyKind::stable, a}, true); }
ModelSpec log_kernel() { return ModelSpec::create(1, {}, {}, RadialFamily{RadialFamilyKind::log_kernel}, true); }

}  // namespace

TEST_CASE("volume doubling") {
  const DoublingReport g = doubling_report(heat(1), 1.0, 100.0);
  CHECK(g.doubling_C == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  CHECK(g.alpha == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_FALSE(g.fails);
  for (double a : {1.0, 1.5}) {
    const DoublingReport s = doubling_report(stable(2, a), 0.1, 50.0);
    CHECK(s.doubling_C == doctest::Approx(std::pow(2.0, 2.0 / a)).epsilon(1e-9));
  }
  // Re psi ~ ln^2 |xi|: sublevel sets grow like e^{sqrt x}.
  const DoublingReport l = doubling_report(log_kernel(), 10.0, 400.0);
  CHECK(l.fails);
  const RearrangementTable T = build_table(heat(1), 10.0, 50);
  CHECK_THROWS_AS(doubling_report(T, 1.0, 8.0), DomainError);
}

TEST_CASE("regular variation fit") {
  const RearrangementTable a = build_table(heat(1), 100.0, 60);
  const RegularVariationFit fa = fit_regular_variation(a, 1.0, 100.0, 100.0);
  CHECK(fa.rho - 1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(fa.L_anchor == doctest::Approx(2.0).epsilon(1e-6));
  const RegularVariationFit fb = fit_regular_variation(build_table(stable(2, 1.0), 100.0, 60), 1.0, 100.0, 100.0);
  CHECK(fb.rho - 1 == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fb.L_anchor == doctest::Approx(pi).epsilon(1e-6));
  const RegularVariationFit fc = fit_regular_variation(build_table(heat(3), 100.0, 60), 1.0, 100.0, 100.0);
  CHECK(fc.rho - 1 == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(fc.L_anchor == doctest::Approx(4 * pi / 3).epsilon(1e-6));
  CHECK_THROWS_AS(fit_regular_variation(a, 1.0, 1.01, 1.0), DomainError);
}

TEST_CASE("p_t(0) asymptotics") {
  for (int n : {1, 2}) {
    for (double a : {1.0, 1.5, 2.0}) {
      const ModelSpec m = a == 2.0 ? heat(n) : stable(n, a);
      const AsymptoticReport r = predict_pt0(m, AsymDirection::t_to_0);
      CHECK(std::fabs(r.t_exponent + n / a) < 0.02);
      REQUIRE(r.pro1_emitted);
      CHECK(r.pro1_ratio_min == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(r.pro1_ratio_max == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(r.doubling.doubling_C == doctest::Approx(std::pow(2.0, n / a)).epsilon(1e-6));
      CHECK(r.bounds_emitted);
      CHECK(r.brackets);
    }
  }
  const AsymptoticReport c = predict_pt0(stable(1, 1.0), AsymDirection::t_to_inf);
  CHECK(c.brackets);
  CHECK(c.t_exponent == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(c.observed.size() == 16);
}

TEST_CASE("phi integrability") {
  const PhiIntegrability a = phi_integrability(Symbol(heat(1)), 1.0);
  CHECK(a.ok);
  CHECK(a.lambda == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(a.c == doctest::Approx(2.0).epsilon(1e-9));
  // kappa int (1 + x)^{-2} 2 sqrt(x) dx = pi.
  CHECK(a.l2_integral == doctest::Approx(pi).epsilon(1e-3));
  const PhiIntegrability b = phi_integrability(Symbol(stable(2, 1.0)), 3.0);
  CHECK(b.ok);
  CHECK(b.lambda == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(phi_integrability(Symbol(stable(2, 1.0)), 1.5).ok);
  const PhiIntegrability c = phi_integrability(Symbol(log_kernel(), SymbolTransform::log1p), 5.0);
  CHECK_FALSE(c.ok);
  CHECK(c.failing_x > 0.0);
}
