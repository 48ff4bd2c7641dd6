#include "levy/model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "levy/errors.hpp"

namespace levy {

namespace {

using json = nlohmann::json;

constexpr double kGammaCompensator = 0.621449624235813357;  // int_0^inf e^{-y} / (1 + y^2) dy

const char* family_name(RadialFamilyKind k) {
  switch (k) {
    case RadialFamilyKind::stable: return "stable";
    case RadialFamilyKind::tempered_stable: return "tempered_stable";
    case RadialFamilyKind::truncated_stable: return "truncated_stable";
    case RadialFamilyKind::log_kernel: return "log_kernel";
    case RadialFamilyKind::gamma_type: return "gamma_type";
  }
  return "?";
}

// Keys each family carries besides "family".
std::vector<std::string> family_keys(RadialFamilyKind k) {
  switch (k) {
    case RadialFamilyKind::stable: return {"alpha", "scale"};
    case RadialFamilyKind::tempered_stable: return {"alpha", "lambda", "scale"};
    case RadialFamilyKind::truncated_stable: return {"alpha", "radius", "scale"};
    case RadialFamilyKind::log_kernel:
    case RadialFamilyKind::gamma_type: return {"scale"};
  }
  return {};
}

// Line of a dotted field path in the source text, found by walking the keys in order.
int locate(const std::string& text, const std::string& field) {
  if (text.empty() || field.empty()) return 0;
  std::size_t pos = 0;
  std::string key;
  std::vector<std::string> keys;
  for (char c : field) {
    if (c == '.' || c == '[') {
      if (!key.empty()) keys.push_back(key);
      key.clear();
      if (c == '[') key = "[";
    } else if (c == ']') {
      key.clear();
    } else if (key != "[" && key.rfind('[', 0) != 0) {
      key += c;
    }
  }
  if (!key.empty() && key[0] != '[') keys.push_back(key);
  std::size_t found = std::string::npos;
  for (const auto& k : keys) {
    const std::size_t p = text.find("\"" + k + "\"", pos);
    if (p == std::string::npos) break;
    found = p;
    pos = p + 1;
  }
  if (found == std::string::npos) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(found), '\n'));
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw ModelError(field, msg, locate(text_, field));
  }

  void only(const json& j, const std::string& field, const std::set<std::string>& allowed) const {
    if (!j.is_object()) fail(field, "expected an object");
    for (const auto& [k, v] : j.items())
      if (!allowed.count(k)) fail(field.empty() ? k : field + "." + k, "unknown key");
  }

  const json& at(const json& j, const std::string& parent, const std::string& key) const {
    const std::string f = parent.empty() ? key : parent + "." + key;
    if (!j.contains(key)) fail(f, "missing");
    return j.at(key);
  }

  double number(const json& j, const std::string& field) const {
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "must be finite");
    return v;
  }

  std::vector<double> numbers(const json& j, const std::string& field) const {
    if (!j.is_array()) fail(field, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }

  std::string string(const json& j, const std::string& field) const {
    if (!j.is_string()) fail(field, "expected a string");
    return j.get<std::string>();
  }

 private:
  const std::string& text_;
};

MeasureSpec read_measure(const Reader& r, const json& m) {
  r.only(m, "measure", {"variant", "atoms", "params"});
  const std::string v = r.string(r.at(m, "measure", "variant"), "measure.variant");
  if (v == "none") {
    r.only(m, "measure", {"variant"});
    return NoJumps{};
  }
  if (v == "atoms") {
    r.only(m, "measure", {"variant", "atoms"});
    const json& list = r.at(m, "measure", "atoms");
    if (!list.is_array()) r.fail("measure.atoms", "expected an array");
    AtomsMeasure am;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string f = "measure.atoms[" + std::to_string(i) + "]";
      const json& a = list[i];
      r.only(a, f, {"point", "radius", "mass"});
      const double mass = r.number(r.at(a, f, "mass"), f + ".mass");
      if (a.contains("point") == a.contains("radius")) r.fail(f, "needs exactly one of point and radius");
      if (a.contains("point")) {
        am.atoms.push_back(PointAtom{r.numbers(a.at("point"), f + ".point"), mass});
      } else {
        am.atoms.push_back(ShellAtom{r.number(a.at("radius"), f + ".radius"), mass});
      }
    }
    return am;
  }
  r.only(m, "measure", {"variant", "params"});
  const json& p = r.at(m, "measure", "params");
  if (v == "radial_family") {
    const std::string fam = r.string(r.at(p, "measure.params", "family"), "measure.params.family");
    RadialFamily rf;
    bool known = false;
    for (RadialFamilyKind k : {RadialFamilyKind::stable, RadialFamilyKind::tempered_stable,
                               RadialFamilyKind::truncated_stable, RadialFamilyKind::log_kernel,
                               RadialFamilyKind::gamma_type})
      if (fam == family_name(k)) {
        rf.kind = k;
        known = true;
      }
    if (!known) r.fail("measure.params.family", "unknown family '" + fam + "'");
    std::set<std::string> allowed{"family"};
    for (const auto& k : family_keys(rf.kind)) allowed.insert(k);
    r.only(p, "measure.params", allowed);
    for (const auto& k : family_keys(rf.kind)) {
      const double x = r.number(r.at(p, "measure.params", k), "measure.params." + k);
      if (k == "alpha") rf.alpha = x;
      if (k == "lambda") rf.lambda = x;
      if (k == "radius") rf.radius = x;
      if (k == "scale") rf.scale = x;
      const bool ok = k == "alpha" ? (x > 0.0 && x < 2.0) : k == "scale" ? x >= 0.0 : x > 0.0;
      if (!ok)
        r.fail("measure.params." + k, k == "alpha" ? "must lie in (0, 2)" : k == "scale" ? "must be >= 0" : "must be > 0");
    }
    return rf;
  }
  if (v == "radial_table") {
    r.only(p, "measure.params", {"radii", "density", "interpolation"});
    RadialTable t;
    t.radii = r.numbers(r.at(p, "measure.params", "radii"), "measure.params.radii");
    t.density = r.numbers(r.at(p, "measure.params", "density"), "measure.params.density");
    const std::string in = r.string(r.at(p, "measure.params", "interpolation"), "measure.params.interpolation");
    if (in == "linear") {
      t.interpolation = Interpolation::linear;
    } else if (in == "loglog") {
      t.interpolation = Interpolation::loglog;
    } else {
      r.fail("measure.params.interpolation", "expected linear or loglog");
    }
    return t;
  }
  if (v == "gamma_subordinator") {
    r.only(p, "measure.params", {"scale"});
    return GammaSubordinator{r.number(r.at(p, "measure.params", "scale"), "measure.params.scale")};
  }
  r.fail("measure.variant", "unknown variant '" + v + "'");
}

json measure_json(const MeasureSpec& ms) {
  json m = json::object();
  if (std::holds_alternative<NoJumps>(ms)) {
    m["variant"] = "none";
  } else if (const auto* at = std::get_if<AtomsMeasure>(&ms)) {
    m["variant"] = "atoms";
    json list = json::array();
    for (const auto& a : at->atoms) {
      json e = json::object();
      if (const auto* p = std::get_if<PointAtom>(&a)) {
        e["point"] = p->point;
        e["mass"] = p->mass;
      } else {
        const auto& s = std::get<ShellAtom>(a);
        e["radius"] = s.radius;
        e["mass"] = s.mass;
      }
      list.push_back(e);
    }
    m["atoms"] = list;
  } else if (const auto* f = std::get_if<RadialFamily>(&ms)) {
    m["variant"] = "radial_family";
    json p = json::object();
    p["family"] = family_name(f->kind);
    for (const auto& k : family_keys(f->kind)) {
      if (k == "alpha") p[k] = f->alpha;
      if (k == "lambda") p[k] = f->lambda;
      if (k == "radius") p[k] = f->radius;
      if (k == "scale") p[k] = f->scale;
    }
    m["params"] = p;
  } else if (const auto* t = std::get_if<RadialTable>(&ms)) {
    m["variant"] = "radial_table";
    m["params"] = {{"radii", t->radii},
                   {"density", t->density},
                   {"interpolation", t->interpolation == Interpolation::linear ? "linear" : "loglog"}};
  } else if (const auto* g = std::get_if<GammaSubordinator>(&ms)) {
    m["variant"] = "gamma_subordinator";
    m["params"] = {{"scale", g->scale}};
  }
  return m;
}

std::vector<double> parse_params(const std::string& spec, std::string& name) {
  const std::size_t open = spec.find('(');
  name = spec.substr(0, open);
  std::vector<double> out;
  if (open == std::string::npos) return out;
  if (spec.back() != ')') throw ModelError("builtin", "unbalanced parentheses in '" + spec + "'");
  std::stringstream ss(spec.substr(open + 1, spec.size() - open - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size() || item.empty()) throw ModelError("builtin", "bad parameter '" + item + "' in '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

int dim_param(const std::vector<double>& p, std::size_t i) {
  if (p.size() <= i) return 1;
  const double d = p[i];
  if (d != std::floor(d) || d < 1 || d > 16) throw ModelError("builtin", "dimension must be an integer in [1, 16]");
  return static_cast<int>(d);
}

std::vector<double> scalar_q(int n, double q) {
  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = q;
  return m;
}

ModelSpec radial(int n, RadialFamily f, const std::string& name) { return ModelSpec::create(n, {}, {}, f, true, name); }

ModelSpec dyadic_atoms(const std::vector<double>& b, const std::string& name) {
  AtomsMeasure m;
  for (std::size_t j = 1; j < b.size(); ++j) m.atoms.push_back(ShellAtom{std::exp2(-static_cast<double>(j)), b[j]});
  return ModelSpec::create(1, {}, {}, m, true, name);
}

void arity(const std::string& name, const std::vector<double>& p, std::size_t max) {
  if (p.size() > max) throw ModelError("builtin", name + " takes at most " + std::to_string(max) + " parameters");
}

}  // namespace

json model_to_json(const ModelSpec& model) {
  const int n = model.dim();
  json q = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int k = 0; k < n; ++k) row.push_back(model.gaussian()[static_cast<std::size_t>(i * n + k)]);
    q.push_back(row);
  }
  json j = json::object();
  j["dim"] = n;
  j["drift"] = model.drift();
  j["gaussian"] = q;
  j["isotropic"] = model.isotropic();
  j["measure"] = measure_json(model.measure());
  j["name"] = model.name();
  return j;
}

ModelSpec model_from_json(const json& j, const std::string& text) {
  const Reader r(text);
  r.only(j, "", {"dim", "drift", "gaussian", "isotropic", "measure", "name"});
  const json& dj = r.at(j, "", "dim");
  if (!dj.is_number_integer() || dj.get<long>() < 1) r.fail("dim", "expected a positive integer");
  const int n = dj.get<int>();
  std::vector<double> drift;
  if (j.contains("drift")) drift = r.numbers(j.at("drift"), "drift");
  std::vector<double> q;
  if (j.contains("gaussian")) {
    const json& g = j.at("gaussian");
    if (!g.is_array()) r.fail("gaussian", "expected an array of rows");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto row = r.numbers(g[i], "gaussian[" + std::to_string(i) + "]");
      if (row.size() != static_cast<std::size_t>(n)) r.fail("gaussian", "rows must have " + std::to_string(n) + " entries");
      q.insert(q.end(), row.begin(), row.end());
    }
  }
  bool iso = false;
  if (j.contains("isotropic")) {
    if (!j.at("isotropic").is_boolean()) r.fail("isotropic", "expected true or false");
    iso = j.at("isotropic").get<bool>();
  }
  std::string name;
  if (j.contains("name")) name = r.string(j.at("name"), "name");
  const MeasureSpec m = read_measure(r, r.at(j, "", "measure"));
  try {
    return ModelSpec::create(n, drift, q, m, iso, name);
  } catch (const ModelError& e) {
    if (e.line() == 0) r.fail(e.field(), e.message());
    throw;
  }
}

ModelSpec parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ModelError("", std::string("malformed JSON: ") + e.what(), line);
  }
  return model_from_json(j, text);
}

std::string save_model(const ModelSpec& model) { return model_to_json(model).dump(2) + "\n"; }

std::string model_hash(const ModelSpec& model) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : save_model(model)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const std::vector<BuiltinInfo>& builtin_catalog() {
  static const std::vector<BuiltinInfo> c{
      {"gaussian", "(n=1)", "Q = 2 I, psi = |xi|^2"},
      {"cauchy", "(n=1)", "stable with alpha = 1, Re psi = |xi|"},
      {"stable", "(alpha=1.5, n=1)", "isotropic alpha-stable, Re psi = |xi|^alpha"},
      {"tempered_stable", "(alpha=1.5, lambda=1, n=1)", "stable density times e^{-lambda |y|}"},
      {"truncated_stable", "(alpha=1.5, R=1, n=1)", "stable density restricted to |y| <= R"},
      {"gamma", "()", "gamma subordinator, psi = ln(1 - i xi)"},
      {"sym_gamma", "(n=1)", "symmetrised gamma process, psi = ln(1 + |xi|^2)"},
      {"exa2_logkernel", "(n=1)", "density |y|^{-1} ln(1/|y|) on the unit ball, Re psi ~ ln^2 |xi|"},
      {"exa3_atoms", "(a=2, b=1)", "symmetric atoms of mass b at +-a^j, j = -40..10"},
      {"exa4_atoms", "()", "symmetric atoms at +-2^{-j} with mass 1/j, j = 1..60"},
      {"exa5_atoms", "()", "symmetric atoms at +-2^{-j}, mass ln j (j even) or j^2 (j odd), j = 1..60"},
  };
  return c;
}

ModelSpec builtin_model(const std::string& spec) {
  std::string name;
  const std::vector<double> p = parse_params(spec, name);
  auto get = [&](std::size_t i, double def) { return p.size() > i ? p[i] : def; };
  if (name == "gaussian") {
    arity(name, p, 1);
    const int n = dim_param(p, 0);
    return ModelSpec::create(n, {}, scalar_q(n, 2.0), NoJumps{}, true, "gaussian");
  }
  if (name == "cauchy") {
    arity(name, p, 1);
    return radial(dim_param(p, 0), RadialFamily{RadialFamilyKind::stable, 1.0}, "cauchy");
  }
  if (name == "stable") {
    arity(name, p, 2);
    RadialFamily f{RadialFamilyKind::stable, get(0, 1.5)};
    return radial(dim_param(p, 1), f, "stable");
  }
  if (name == "tempered_stable") {
    arity(name, p, 3);
    RadialFamily f{RadialFamilyKind::tempered_stable, get(0, 1.5), get(1, 1.0)};
    return radial(dim_param(p, 2), f, "tempered_stable");
  }
  if (name == "truncated_stable") {
    arity(name, p, 3);
    RadialFamily f{RadialFamilyKind::truncated_stable, get(0, 1.5), 1.0, get(1, 1.0)};
    return radial(dim_param(p, 2), f, "truncated_stable");
  }
  if (name == "gamma") {
    arity(name, p, 0);
    return ModelSpec::create(1, {-kGammaCompensator}, {}, GammaSubordinator{1.0}, false, "gamma");
  }
  if (name == "sym_gamma") {
    arity(name, p, 1);
    return radial(dim_param(p, 0), RadialFamily{RadialFamilyKind::gamma_type}, "sym_gamma");
  }
  if (name == "exa2_logkernel") {
    arity(name, p, 1);
    return radial(dim_param(p, 0), RadialFamily{RadialFamilyKind::log_kernel}, "exa2_logkernel");
  }
  if (name == "exa3_atoms") {
    arity(name, p, 2);
    const double a = get(0, 2.0), b = get(1, 1.0);
    if (!(a >= 2.0)) throw ModelError("builtin", "exa3_atoms needs a >= 2");
    if (!(b >= 0.0)) throw ModelError("builtin", "exa3_atoms needs b >= 0");
    AtomsMeasure m;
    for (int j = -40; j <= 10; ++j) m.atoms.push_back(ShellAtom{std::pow(a, j), b});
    return ModelSpec::create(1, {}, {}, m, true, "exa3_atoms");
  }
  if (name == "exa4_atoms") {
    arity(name, p, 0);
    std::vector<double> b(61, 0.0);
    for (int j = 1; j <= 60; ++j) b[static_cast<std::size_t>(j)] = 1.0 / j;
    return dyadic_atoms(b, "exa4_atoms");
  }
  if (name == "exa5_atoms") {
    arity(name, p, 0);
    std::vector<double> b(61, 0.0);
    for (int j = 1; j <= 60; ++j) b[static_cast<std::size_t>(j)] = j % 2 == 0 ? std::log(j) : double(j) * j;
    return dyadic_atoms(b, "exa5_atoms");
  }
  throw ModelError("builtin", "unknown builtin '" + name + "'");
}

ModelSpec load_model(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_model(source.substr(prefix.size()));
  std::ifstream in(source, std::ios::binary);
  if (!in) throw ModelError("", "cannot open model file '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace levy
