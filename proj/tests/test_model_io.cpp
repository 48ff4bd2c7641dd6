#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "levy/errors.hpp"
#include "levy/exponent.hpp"
#include "levy/model_io.hpp"

using namespace levy;

TEST_CASE("builtin library") {
  const ModelSpec g = load_model("builtin:gaussian");
  CHECK(g.dim() == 1);
  CHECK(g.gaussian() == std::vector<double>{2.0});
  CHECK(g.drift() == std::vector<double>{0.0});
  CHECK(std::holds_alternative<NoJumps>(g.measure()));
  const double xi = 3.0;
  CHECK(eval_re_psi(g, std::span<const double>(&xi, 1)) == doctest::Approx(9.0));

  const ModelSpec gam = load_model("builtin:gamma");
  const double one = 1.0;
  const std::complex<double> p = eval_psi(gam, std::span<const double>(&one, 1));
  CHECK(p.real() == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-8));
  CHECK(std::fabs(p.imag()) == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-8));

  const ModelSpec e5 = load_model("builtin:exa5_atoms");
  const auto& atoms = std::get<AtomsMeasure>(e5.measure()).atoms;
  REQUIRE(atoms.size() == 60);
  CHECK(std::get<ShellAtom>(atoms[1]).mass == doctest::Approx(std::log(2.0)));
  CHECK(std::get<ShellAtom>(atoms[2]).mass == doctest::Approx(9.0));
  CHECK(std::get<ShellAtom>(atoms[59]).radius == std::exp2(-60));

  const ModelSpec s = builtin_model("stable(1.2, 2)");
  CHECK(s.dim() == 2);
  CHECK(std::get<RadialFamily>(s.measure()).alpha == 1.2);
  CHECK_THROWS_AS(builtin_model("nope"), ModelError);
  CHECK_THROWS_AS(builtin_model("stable(1.5,2,3)"), ModelError);
  CHECK_THROWS_AS(builtin_model("stable(x)"), ModelError);
}

TEST_CASE("canonical round trip") {
  for (const auto& b : builtin_catalog()) {
    const ModelSpec m = builtin_model(b.name);
    const std::string text = save_model(m);
    const ModelSpec back = parse_model(text);
    CHECK(save_model(back) == text);
    CHECK(model_hash(back) == model_hash(m));
    CHECK(model_hash(m).size() == 16);
  }
  CHECK(model_hash(builtin_model("stable(1.5)")) != model_hash(builtin_model("stable(1.6)")));
  const ModelSpec t = ModelSpec::create(1, {}, {}, RadialTable{{1.0, 2.0}, {0.5, 0.5}, Interpolation::linear}, true);
  CHECK(save_model(parse_model(save_model(t))) == save_model(t));
  const ModelSpec a = ModelSpec::create(2, {0.5, 0.0}, {1.0, 0.2, 0.2, 1.0}, AtomsMeasure{{PointAtom{{1.0, 0.0}, 2.0}}}, false);
  CHECK(save_model(parse_model(save_model(a))) == save_model(a));
}

TEST_CASE("malformed model files") {
  const std::string good = save_model(builtin_model("stable(1.5)"));
  auto error_of = [](const std::string& text) -> ModelError {
    try {
      parse_model(text);
    } catch (const ModelError& e) {
      return e;
    }
    FAIL("no error");
    return ModelError("", "");
  };
  std::string bad = good;
  bad.replace(bad.find("\"alpha\": 1.5"), 12, "\"alpha\": \"x\"");
  ModelError e = error_of(bad);
  CHECK(e.field() == "measure.params.alpha");
  CHECK(e.line() > 1);

  bad = good;
  bad.replace(bad.find("\"dim\""), 5, "\"dims\"");
  e = error_of(bad);
  CHECK(e.field() == "dims");

  e = error_of("{\n  \"dim\": 1,\n  \"measure\": \n}\n");
  CHECK(e.line() == 4);

  bad = good;
  bad.replace(bad.find("\"alpha\": 1.5"), 12, "\"alpha\": 2.5");
  e = error_of(bad);
  CHECK(e.field().rfind("measure", 0) == 0);

  e = error_of("{\"dim\": 2, \"gaussian\": [[1, 2], [0, 1]], \"measure\": {\"variant\": \"none\"}}");
  CHECK(e.field() == "gaussian");
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ModelError);
}
