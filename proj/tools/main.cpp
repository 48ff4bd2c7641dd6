#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"
#include "json.hpp"
#include "levy/asymptotics.hpp"
#include "levy/diagnostics.hpp"
#include "levy/errors.hpp"
#include "levy/exponent.hpp"
#include "levy/inversion.hpp"
#include "levy/model_io.hpp"
#include "levy/ratio_limit.hpp"
#include "levy/rearrangement.hpp"
#include "report_json.hpp"

using json = nlohmann::json;
using namespace levy;

namespace {

constexpr const char* kThreadsEnv = "LEVY_THREADS";

struct Options {
  std::string model;
  std::string format;
  std::string output;

  // psi
  std::vector<std::string> xi;
  std::string psi_grid;

  // density
  double t = 1.0;
  std::string grid;
  std::vector<double> radii;
  double window_floor = 1e-14;

  // diagnose
  std::string functional;
  std::string k_range = "4:40";
  std::optional<double> diag_t;
  double scale = 1.0;
  std::string phi;
  std::string phi_transform = "identity";

  // nu-dist
  double x_max = 100.0;
  int nodes = 200;
  double x_min = 1e-3;

  // asymptotics
  std::string direction = "t_to_0";
  int samples = 16;

  // ratio-limit
  std::vector<double> x{0.0};
  double delta = 1.0;
  std::vector<double> t_ladder{1.0, 10.0, 100.0, 1000.0};
  double shift = 1.0;
  std::string f_csv;

  // classify
  std::vector<double> t_list{0.5, 1.0, 2.0};

  // selftest
  std::vector<int> only;
};

std::vector<double> split_numbers(const std::string& s, char sep, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw DomainError(what + ": cannot read '" + tok + "' in '" + s + "'");
    }
  }
  return out;
}

KRange parse_k(const std::string& s) {
  const auto v = split_numbers(s, ':', "--k");
  if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
    throw DomainError("--k expects lo:hi with integers, got '" + s + "'");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

Grid parse_grid(const std::string& s, int dim) {
  const auto v = split_numbers(s, ':', "--grid");
  if (v.size() != 3) throw DomainError("--grid expects lo:hi:step, got '" + s + "'");
  if (dim == 1) return Grid::line(v[0], v[1], v[2]);
  if (dim == 2) return Grid::square(v[0], v[1], v[2]);
  throw DomainError("--grid needs a model of dimension 1 or 2; use --radii for isotropic models in dimension " +
                    std::to_string(dim));
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void csv_header(std::ostream& os, const json& config) {
  for (const auto& [k, v] : config.items()) {
    if (k == "model_json") continue;
    os << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

void emit_json(std::ostream& os, const json& config, const std::string& key, const json& body) {
  json out{{"config", config}, {key, body}};
  os << out.dump(2) << "\n";
}

// f sampled on a lattice: columns x,f in one dimension, x,y,f (first axis slowest) in two.
SampledFunction read_function_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open --f file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (rows.empty() && line.find_first_of("0123456789") != 0 && line[0] != '-' && line[0] != '.' && line[0] != '+')
      continue;
    auto v = split_numbers(line, ',', path + " line " + std::to_string(line_no));
    if (static_cast<int>(v.size()) != dim + 1)
      throw DomainError(path + " line " + std::to_string(line_no) + ": expected " + std::to_string(dim + 1) + " columns");
    rows.push_back(std::move(v));
  }
  if (rows.size() < 2) throw DomainError(path + ": need at least two samples");
  SampledFunction f;
  f.grid.dim = dim;
  if (dim == 1) {
    f.grid.origin[0] = rows[0][0];
    f.grid.step[0] = rows[1][0] - rows[0][0];
    f.grid.count[0] = static_cast<int>(rows.size());
  } else {
    std::size_t ny = 1;
    while (ny < rows.size() && rows[ny][0] == rows[0][0]) ++ny;
    if (ny < 2 || rows.size() % ny != 0) throw DomainError(path + ": samples do not form a lattice");
    f.grid.origin = {rows[0][0], rows[0][1]};
    f.grid.step = {rows[ny][0] - rows[0][0], rows[1][1] - rows[0][1]};
    f.grid.count = {static_cast<int>(rows.size() / ny), static_cast<int>(ny)};
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double expect0 = f.grid.coord(0, dim == 1 ? static_cast<int>(i) : static_cast<int>(i) / f.grid.count[1]);
    if (std::fabs(rows[i][0] - expect0) > 1e-9 * std::max(1.0, std::fabs(expect0)))
      throw DomainError(path + ": samples are not equally spaced");
    f.values.push_back(rows[i].back());
  }
  if (!(f.grid.step[0] > 0) || (dim == 2 && !(f.grid.step[1] > 0)))
    throw DomainError(path + ": coordinates must increase");
  return f;
}

json psi_run(const ModelSpec& m, const Options& o, std::vector<std::vector<double>>& points) {
  const int n = m.dim();
  if (!o.xi.empty()) {
    for (const auto& s : o.xi) {
      auto p = split_numbers(s, ',', "--xi");
      if (static_cast<int>(p.size()) != n)
        throw DomainError("--xi point '" + s + "' has " + std::to_string(p.size()) + " components, model has dimension " +
                          std::to_string(n));
      points.push_back(std::move(p));
    }
  } else {
    const auto v = split_numbers(o.psi_grid, ':', "--grid");
    if (v.size() != 3 || !(v[2] > 0)) throw DomainError("--grid expects lo:hi:step with step > 0");
    const int count = static_cast<int>(std::floor((v[1] - v[0]) / v[2] + 0.5)) + 1;
    for (int i = 0; i < count; ++i) {
      std::vector<double> p(static_cast<std::size_t>(n), 0.0);
      p[0] = v[0] + i * v[2];
      points.push_back(std::move(p));
    }
  }
  json rows = json::array();
  for (const auto& p : points) {
    const auto z = eval_psi(m, p);
    rows.push_back({{"xi", p}, {"re", z.real()}, {"im", z.imag()}});
  }
  return rows;
}

int run_subcommand(const std::string& sub, const Options& o) {
  if (sub == "selftest") {
    Output out(o.output);
    const auto results = acceptance::run(out.os(), o.only);
    int failed = 0;
    for (const auto& r : results) failed += r.pass ? 0 : 1;
    out.os() << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
  }

  const ModelSpec model = load_model(o.model);
  const char* threads = std::getenv(kThreadsEnv);
  json config{{"subcommand", sub},
              {"model", o.model},
              {"model_name", model.name()},
              {"model_hash", model_hash(model)},
              {"model_json", model_to_json(model)},
              {"format", o.format},
              {"output", o.output.empty() ? "-" : o.output},
              {"threads", threads ? threads : "1"}};

  Output out(o.output);
  std::ostream& os = out.os();
  try {
    if (sub == "psi") {
      config["xi"] = o.xi;
      config["grid"] = o.psi_grid;
      std::vector<std::vector<double>> pts;
      const json rows = psi_run(model, o, pts);
      if (o.format == "csv") {
        csv_header(os, config);
        for (int i = 0; i < model.dim(); ++i) os << "xi" << i + 1 << ",";
        os << "re,im\n";
        for (const auto& r : rows) {
          for (double c : r["xi"]) os << num(c) << ",";
          os << num(r["re"].get<double>()) << "," << num(r["im"].get<double>()) << "\n";
        }
      } else {
        emit_json(os, config, "psi", rows);
      }
    } else if (sub == "density") {
      config["t"] = o.t;
      config["window_floor"] = o.window_floor;
      InversionOptions opt;
      opt.window_floor = o.window_floor;
      DensityField f;
      if (!o.radii.empty()) {
        config["radii"] = o.radii;
        f = invert_radial(model, o.t, o.radii, opt);
      } else {
        config["grid"] = o.grid;
        f = invert_grid(model, o.t, parse_grid(o.grid, model.dim()), opt);
      }
      if (o.format == "json") {
        emit_json(os, config, "density", report::to_json(f));
      } else {
        std::map<std::string, std::string> meta;
        for (const auto& [k, v] : config.items())
          if (k != "model_json" && k != "t") meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
        write_csv(os, f, meta);
      }
    } else if (sub == "diagnose") {
      const KRange k = parse_k(o.k_range);
      config["functional"] = o.functional;
      config["k"] = o.k_range;
      config["t"] = o.diag_t ? json(*o.diag_t) : json(nullptr);
      config["scale"] = o.scale;
      LimitReport r;
      if (o.functional == "hw") {
        r = hw_functional(model, k, o.diag_t, o.scale);
      } else if (o.functional == "kallenberg") {
        r = kallenberg_functional(model, k);
      } else if (o.functional == "tail_mass") {
        r = tail_mass_functional(model, k);
      } else if (o.functional == "hw_star") {
        r = hw_star_functional(model, k, o.scale);
      } else if (o.functional == "re_psi") {
        r = re_psi_growth(model, k);
      } else {
        if (o.phi.empty()) throw DomainError("diagnose hw_phi needs --phi");
        config["phi"] = o.phi;
        config["phi_transform"] = o.phi_transform;
        const SymbolTransform tr = o.phi_transform == "log1p" ? SymbolTransform::log1p : SymbolTransform::identity;
        r = hw_phi_functional(model, Symbol(load_model(o.phi), tr), k, o.scale);
      }
      if (o.format == "csv") {
        csv_header(os, config);
        os << "# verdict=" << to_string(r.verdict) << "\n# trailing_min=" << num(r.trailing_min)
           << "\n# trailing_max=" << num(r.trailing_max) << "\n# slope=" << num(r.slope) << "\n";
        os << "k," << r.variable << ",value\n";
        for (std::size_t i = 0; i < r.values.size(); ++i)
          os << r.k[i] << "," << num(r.probe_grid[i]) << "," << num(r.values[i]) << "\n";
      } else {
        emit_json(os, config, "report", report::to_json(r));
      }
    } else if (sub == "nu-dist") {
      config["x_max"] = o.x_max;
      config["nodes"] = o.nodes;
      config["x_min"] = o.x_min;
      const RearrangementTable t = build_table(model, o.x_max, o.nodes, o.x_min);
      if (o.format == "json") {
        emit_json(os, config, "table", report::to_json(t));
      } else {
        csv_header(os, config);
        write_csv(os, t);
      }
    } else if (sub == "asymptotics") {
      config["direction"] = o.direction;
      config["samples"] = o.samples;
      const AsymptoticReport a = predict_pt0(model, asym_direction_from_string(o.direction), o.samples);
      if (o.format == "csv") {
        csv_header(os, config);
        os << "# t_exponent=" << num(a.t_exponent) << "\n# brackets=" << (a.brackets ? "true" : "false") << "\n";
        os << "t,observed,predicted,lower,upper\n";
        for (std::size_t i = 0; i < a.t.size(); ++i) {
          auto at = [&](const std::vector<double>& v) { return i < v.size() ? num(v[i]) : std::string(); };
          os << num(a.t[i]) << "," << num(a.observed[i]) << "," << at(a.predicted) << "," << at(a.lower) << ","
             << at(a.upper) << "\n";
        }
      } else {
        emit_json(os, config, "asymptotics", report::to_json(a));
      }
    } else if (sub == "ratio-limit") {
      if (static_cast<int>(o.x.size()) != model.dim())
        throw DomainError("--x needs " + std::to_string(model.dim()) + " components");
      config["x"] = o.x;
      config["delta"] = o.delta;
      config["t_ladder"] = o.t_ladder;
      config["shift"] = o.shift;
      config["f"] = o.f_csv.empty() ? "gaussian_bump" : o.f_csv;
      const SampledFunction f = o.f_csv.empty() ? gaussian_bump(model.dim()) : read_function_csv(o.f_csv, model.dim());
      const RatioReport r = ratio_limit_report(model, f, o.x, o.delta, o.t_ladder, o.shift);
      if (o.format == "csv") {
        csv_header(os, config);
        os << "# m_delta=" << num(r.m_delta.value) << "\n";
        for (const auto& w : r.warnings) os << "# warning=" << w << "\n";
        os << "t,integrable,tail_mass,tail_envelope,px_p0,px_p0_envelope,semigroup_observed,semigroup_target,"
              "shifted_ratio,refusal\n";
        for (const auto& g : r.rungs) {
          if (!g.refusal.empty()) {
            os << num(g.t) << ",0,,,,,,,,\"" << g.refusal << "\"\n";
            continue;
          }
          os << num(g.t) << ",1," << num(g.tail_mass) << "," << num(g.tail_envelope) << "," << num(g.px_p0) << ","
             << num(g.px_p0_envelope) << "," << num(g.semigroup.observed) << "," << num(g.semigroup.target) << ","
             << num(g.shifted_ratio) << ",\n";
        }
      } else {
        emit_json(os, config, "ratio_limit", report::to_json(r));
      }
    } else if (sub == "classify") {
      const KRange k = parse_k(o.k_range);
      config["t"] = o.t_list;
      config["k"] = o.k_range;
      const Classification c = classify(model, o.t_list, k);
      if (o.format == "csv") {
        csv_header(os, config);
        os << "# verdict=" << c.verdict << "\n";
        os << "t,threshold,liminf_estimate,threshold_pass,probe_integrable,statement\n";
        for (const auto& tv : c.per_t)
          os << num(tv.t) << "," << num(tv.hw.threshold) << "," << num(tv.hw.estimate) << "," << tv.hw.pass << ","
             << tv.probe_integrable << ",\"" << tv.statement << "\"\n";
      } else {
        emit_json(os, config, "classification", report::to_json(c));
      }
    }
  } catch (const Refusal& r) {
    emit_json(os, config, "refusal", {{"verdict", r.verdict()}, {"reason", r.reason()}});
    return 2;
  }
  return 0;
}

void add_model_options(CLI::App* sub, Options& o, const std::string& default_format) {
  sub->add_option("--model", o.model, "builtin:name(params) or a JSON model file")->required();
  o.format = default_format;
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--output,-o", o.output, "Output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levy process densities, smoothness diagnostics and ratio limits"};
  app.require_subcommand(0, 1);
  bool list_builtins = false;
  app.add_flag("--list-builtins", list_builtins, "Print the bundled model library");

  // One Options per subcommand keeps defaults independent.
  std::map<std::string, Options> opts;
  auto make = [&](const std::string& name, const std::string& help) {
    opts[name] = Options{};
    return app.add_subcommand(name, help);
  };

  {
    auto* s = make("psi", "Characteristic exponent at given frequencies");
    Options& o = opts["psi"];
    add_model_options(s, o, "json");
    auto* xi = s->add_option("--xi", o.xi, "Frequency point; components separated by commas (repeatable)");
    auto* g = s->add_option("--grid", o.psi_grid, "lo:hi:step along the first axis");
    xi->excludes(g);
    g->excludes(xi);
    s->callback([&o] {
      if (o.xi.empty() && o.psi_grid.empty()) throw CLI::RequiredError("--xi or --grid");
    });
  }
  {
    auto* s = make("density", "Invert e^{-t psi} on a lattice or at radii");
    Options& o = opts["density"];
    add_model_options(s, o, "csv");
    s->add_option("--t", o.t, "Time")->required();
    auto* g = s->add_option("--grid", o.grid, "lo:hi:step (a square lattice in dimension two)");
    auto* r = s->add_option("--radii", o.radii, "Radii for isotropic models")->delimiter(',');
    g->excludes(r);
    r->excludes(g);
    s->add_option("--window-floor", o.window_floor, "Frequency window ends where e^{-t Re psi} drops below this")
        ->capture_default_str();
    s->callback([&o] {
      if (o.grid.empty() && o.radii.empty()) throw CLI::RequiredError("--grid or --radii");
    });
  }
  {
    auto* s = make("diagnose", "Growth functionals along dyadic probes");
    Options& o = opts["diagnose"];
    add_model_options(s, o, "json");
    s->add_option("functional", o.functional, "Functional")
        ->required()
        ->check(CLI::IsMember({"hw", "kallenberg", "tail_mass", "hw_star", "hw_phi", "re_psi"}));
    s->add_option("--k", o.k_range, "lo:hi")->capture_default_str();
    s->add_option("--t", o.diag_t, "Compare the liminf of the hw quotient with 1/t");
    s->add_option("--scale", o.scale, "Probe points scale 2^k")->capture_default_str();
    s->add_option("--phi", o.phi, "Model whose exponent serves as phi (hw_phi)");
    s->add_option("--phi-transform", o.phi_transform, "identity or log1p")
        ->check(CLI::IsMember({"identity", "log1p"}))
        ->capture_default_str();
  }
  {
    auto* s = make("nu-dist", "Measure of sublevel sets of Re psi");
    Options& o = opts["nu-dist"];
    add_model_options(s, o, "csv");
    s->add_option("--x-max", o.x_max)->capture_default_str();
    s->add_option("--nodes", o.nodes)->capture_default_str();
    s->add_option("--x-min", o.x_min)->capture_default_str();
  }
  {
    auto* s = make("asymptotics", "p_t(0) as t -> 0 or t -> infinity");
    Options& o = opts["asymptotics"];
    add_model_options(s, o, "json");
    s->add_option("--direction", o.direction)->check(CLI::IsMember({"t_to_0", "t_to_inf"}))->capture_default_str();
    s->add_option("--samples", o.samples)->capture_default_str();
  }
  {
    auto* s = make("ratio-limit", "p_t(x)/p_t(0) and T_t f(x)/||e^{-t psi}||_1 along a t ladder");
    Options& o = opts["ratio-limit"];
    add_model_options(s, o, "json");
    s->add_option("--x", o.x, "Point x (comma separated)")->delimiter(',')->capture_default_str();
    s->add_option("--delta", o.delta)->capture_default_str();
    s->add_option("--t-ladder", o.t_ladder)->delimiter(',')->capture_default_str();
    s->add_option("--shift", o.shift)->capture_default_str();
    s->add_option("--f", o.f_csv, "CSV samples of f (x,f or x,y,f); default e^{-|z|^2}");
  }
  {
    auto* s = make("classify", "Density verdict from the functionals and the integrability probe");
    Options& o = opts["classify"];
    add_model_options(s, o, "json");
    s->add_option("--t", o.t_list)->delimiter(',')->capture_default_str();
    s->add_option("--k", o.k_range, "lo:hi")->capture_default_str();
  }
  {
    auto* s = make("selftest", "Run the acceptance suite");
    Options& o = opts["selftest"];
    s->add_option("--only", o.only, "Criterion ids")->delimiter(',');
    s->add_option("--output,-o", o.output);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (list_builtins) {
      for (const auto& b : builtin_catalog())
        std::cout << b.name << b.params << "  " << b.summary << "\n";
      return 0;
    }
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return 1;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    return run_subcommand(name, opts[name]);
  } catch (const Refusal& r) {
    std::cout << json{{"refusal", {{"verdict", r.verdict()}, {"reason", r.reason()}}}}.dump(2) << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
