#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/exponent.hpp"
#include "levy/radial_measure.hpp"

using namespace levy;
using std::numbers::pi;

namespace {

ModelSpec family(int n, RadialFamilyKind kind, double alpha = 1.0, double lambda = 1.0, double radius = 1.0) {
  RadialFamily f;
  f.kind = kind;
  f.alpha = alpha;
  f.lambda = lambda;
  f.radius = radius;
  return ModelSpec::create(n, {}, {}, f, true);
}

ModelSpec gaussian1() { return ModelSpec::create(1, {0.0}, {2.0}, NoJumps{}, true); }

double psi1(const ModelSpec& m, double x) { return eval_re_psi(m, std::vector<double>{x}); }

}  // namespace

TEST_CASE("psi golden values") {
  CHECK(eval_psi(gaussian1(), std::vector<double>{3.0}) == std::complex<double>(9.0, 0.0));
  const auto gt = family(1, RadialFamilyKind::gamma_type);
  CHECK(psi1(gt, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  const auto cauchy = family(1, RadialFamilyKind::stable, 1.0);
  CHECK(psi1(cauchy, -5.0) == doctest::Approx(5.0));
  CHECK(psi1(cauchy, 0.0) == 0.0);
}

TEST_CASE("stable normalisation matches direct quadrature") {
  // Cauchy: (2/pi) int_0^inf (1 - cos(5 r)) r^{-2} dr = 5.
  const auto cauchy = family(1, RadialFamilyKind::stable, 1.0);
  CHECK(lk_direct_re_psi(cauchy, std::vector<double>{5.0}) == doctest::Approx(5.0).epsilon(1e-9));
  for (int n : {1, 2, 3})
    for (double a : {0.5, 1.0, 1.5, 1.9}) {
      const auto m = family(n, RadialFamilyKind::stable, a);
      for (double s : {0.1, 1.0, 7.0, 100.0}) CHECK(iso_g(m, s) == doctest::Approx(std::pow(s, a)).epsilon(1e-8));
    }
}

TEST_CASE("radial families against frozen reference values") {
  // 30-digit quadrature references.
  const auto trunc = family(1, RadialFamilyKind::truncated_stable, 1.0, 1.0, 1.0);
  CHECK(psi1(trunc, 10.0) == doctest::Approx(9.38657938117110660).epsilon(1e-9));
  const auto exa2 = family(1, RadialFamilyKind::log_kernel);
  CHECK(psi1(exa2, 100.0) == doctest::Approx(26.0348253154635365).epsilon(1e-9));
  CHECK(psi1(exa2, 10.0) == doctest::Approx(7.45267620342485931).epsilon(1e-9));
  const auto temp = family(1, RadialFamilyKind::tempered_stable, 1.5, 1.0);
  CHECK(psi1(temp, 2.0) == doctest::Approx(1.83887800343091246).epsilon(1e-12));
  CHECK(lk_direct_re_psi(temp, std::vector<double>{2.0}) == doctest::Approx(1.83887800343091246).epsilon(1e-9));
  for (int n : {2, 3}) {
    const auto g = family(n, RadialFamilyKind::gamma_type);
    CHECK(iso_g(g, 2.0) == doctest::Approx(std::log(5.0)).epsilon(1e-8));
  }
}

TEST_CASE("iso_g and the angular-average route agree") {
  for (int n : {1, 2, 3}) {
    for (auto kind : {RadialFamilyKind::stable, RadialFamilyKind::tempered_stable, RadialFamilyKind::truncated_stable}) {
      const auto m = family(n, kind, 1.3, 1.0, 1.0);
      for (double s : {0.1, 3.0, 100.0}) {
        const std::vector<double> xi = [&] {
          std::vector<double> v(static_cast<std::size_t>(n), 0.0);
          v[0] = s;
          return v;
        }();
        const double a = iso_g(m, s);
        const double b = lk_direct_re_psi(m, xi);
        CHECK(std::fabs(a - b) <= 1e-6 * std::fabs(b));
        CHECK(std::fabs(eval_re_psi(m, xi) - b) <= 1e-6 * std::fabs(b));
      }
    }
  }
}

TEST_CASE("iso_g on atoms") {
  AtomsMeasure pair;
  pair.atoms.push_back(ShellAtom{1.0, 1.0});
  const auto m1 = ModelSpec::create(1, {}, {}, pair, true);
  CHECK(iso_g(m1, pi) == doctest::Approx(2.0));
  const auto m3 = ModelSpec::create(3, {}, {}, pair, true);
  CHECK(iso_g(m3, pi) == doctest::Approx(1.0));
  CHECK(iso_g(m3, 0.0) == 0.0);
}

TEST_CASE("radial_G") {
  const auto cauchy = family(1, RadialFamilyKind::stable, 1.0);
  CHECK(radial_G(cauchy, 1.0) == doctest::Approx(-4.0 / pi).epsilon(1e-14));
  const auto trunc = family(2, RadialFamilyKind::truncated_stable, 1.2, 1.0, 2.0);
  CHECK(radial_G(trunc, 2.0) == 0.0);
  CHECK(radial_G(trunc, 3.0) == 0.0);
  CHECK(radial_G(family(2, RadialFamilyKind::log_kernel), 1.0) == doctest::Approx(0.0));
  const auto rt = radial_tail(family(3, RadialFamilyKind::tempered_stable, 0.7, 2.0));
  double prev = -1e300;
  for (double r : rt.nodes) {
    const double g = rt.G(r);
    CHECK(g <= 0.0);
    CHECK(g >= prev);
    prev = g;
  }
  CHECK(std::fabs(rt.nodes.front() * rt.nodes.front() * rt.G(rt.nodes.front())) < 1e-6);
}

TEST_CASE("g_inverse") {
  const auto g2 = family(1, RadialFamilyKind::stable, 1.0);
  CHECK(g_inverse(gaussian1(), 4.0) == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(g_inverse(g2, 3.0) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(g_inverse(family(1, RadialFamilyKind::gamma_type), std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-13));
  for (double x : {1e-6, 0.3, 2.0, 50.0}) {
    const double v = g_inverse(g2, x);
    CHECK(re_psi_radial(g2, std::sqrt(v)) >= x);
    const double gx = re_psi_radial(g2, x);
    CHECK(g_inverse(g2, gx) <= x * x * (1 + 1e-12));
  }
  AtomsMeasure pair;
  pair.atoms.push_back(ShellAtom{1.0, 1.0});
  const auto atoms = ModelSpec::create(1, {}, {}, pair, true);
  CHECK(g_inverse(atoms, 1.2) == doctest::Approx(std::pow(std::acos(-0.2), 2)));
  CHECK_THROWS_AS(g_inverse(atoms, 1.5), DomainError);
  CHECK_THROWS_AS(g_inverse(atoms, 3.9), DomainError);
}

TEST_CASE("exponent invariants") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  AtomsMeasure asym;
  asym.atoms.push_back(PointAtom{{0.5, -1.0}, 2.0});
  asym.atoms.push_back(PointAtom{{-0.1, 0.3}, 0.5});
  const std::vector<ModelSpec> models = {
      ModelSpec::create(2, {0.3, -1.0}, {1.0, 0.2, 0.2, 0.5}, asym, false),
      family(2, RadialFamilyKind::tempered_stable, 0.8, 0.5),
      family(2, RadialFamilyKind::truncated_stable, 1.5, 1.0, 0.7),
  };
  for (const auto& m : models) {
    CHECK(std::abs(eval_psi(m, std::vector<double>{0.0, 0.0})) == 0.0);
    for (int i = 0; i < 40; ++i) {
      const std::vector<double> a{u(rng), u(rng)}, b{u(rng), u(rng)};
      const std::vector<double> na{-a[0], -a[1]}, ab{a[0] + b[0], a[1] + b[1]};
      const auto pa = eval_psi(m, a);
      CHECK(pa.real() >= 0.0);
      const auto pn = eval_psi(m, na);
      CHECK(std::abs(pn - std::conj(pa)) <= 1e-9 * (1 + std::abs(pa)));
      CHECK(std::sqrt(std::abs(eval_psi(m, ab))) <=
            std::sqrt(std::abs(pa)) + std::sqrt(std::abs(eval_psi(m, b))) + 1e-9);
      if (m.symmetric()) CHECK(pa.imag() == 0.0);
    }
  }
}

TEST_CASE("quadratic majorant") {
  const auto qm = quadratic_majorant(gaussian1(), 3.0);
  CHECK(qm.c == 1.0);
  CHECK(qm.d == 0.0);
  AtomsMeasure pair;
  pair.atoms.push_back(ShellAtom{1.0, 1.0});
  const auto atoms = ModelSpec::create(1, {}, {}, pair, true);
  CHECK(quadratic_majorant(atoms, 2.0).c == doctest::Approx(0.5));
  CHECK(quadratic_majorant(atoms, 2.0).d == 0.0);
  const auto cauchy = family(1, RadialFamilyKind::stable, 1.0);
  CHECK(quadratic_majorant(cauchy, 1.0).d == doctest::Approx(4.0 / pi));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (const auto& m : {cauchy, atoms, family(1, RadialFamilyKind::log_kernel), family(1, RadialFamilyKind::tempered_stable, 1.2, 0.3)}) {
    const auto b = quadratic_majorant(m, 1.0);
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng) * std::pow(10.0, u(rng) / 25.0);
      if (psi1(m, x) > b.c * x * x + b.d) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(ModelSpec::create(1, {1.0}, {1.0}, NoJumps{}, true), ModelError);
  CHECK_THROWS_AS(ModelSpec::create(2, {}, {1.0, 2.0, 0.0, 1.0}, NoJumps{}, false), ModelError);
  CHECK_THROWS_AS(ModelSpec::create(1, {}, {-1.0}, NoJumps{}, false), ModelError);
  AtomsMeasure bad;
  bad.atoms.push_back(ShellAtom{-1.0, 1.0});
  CHECK_THROWS_AS(ModelSpec::create(1, {}, {}, bad, false), ModelError);
  CHECK_THROWS_AS(eval_psi(gaussian1(), std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("compact radial table at high frequency") {
  // Density 1/2 on 1 <= |y| <= 2: psi(s) = 1 - (sin 2s - sin s) / s.
  const ModelSpec m = ModelSpec::create(1, {}, {}, RadialTable{{1.0, 2.0}, {0.5, 0.5}, Interpolation::linear}, true);
  for (int k : {5, 12, 25, 40}) {
    const double s = std::exp2(k);
    CHECK(std::fabs(re_psi_radial(m, s) - (1.0 - (std::sin(2 * s) - std::sin(s)) / s)) < 1e-12);
  }
}
