#include "report_json.hpp"

namespace levy::report {

using json = nlohmann::json;

namespace {

json trend(const Trend& t) {
  return {{"label", t.label},
          {"trailing_min", t.trailing_min},
          {"trailing_max", t.trailing_max},
          {"slope", t.slope},
          {"verdict", to_string(t.verdict)}};
}

json doubling(const DoublingReport& d) {
  return {{"doubling_C", d.doubling_C}, {"alpha", d.alpha},         {"fails", d.fails},
          {"ratio_trend", d.ratio_trend}, {"worst_x", d.worst_x}, {"x", d.x},
          {"ratio", d.ratio}};
}

}  // namespace

json to_json(const LimitReport& r) {
  json j{{"functional", r.functional},     {"variable", r.variable}, {"k", r.k},
         {"grid", r.probe_grid},           {"values", r.values},     {"trailing_min", r.trailing_min},
         {"trailing_max", r.trailing_max}, {"slope", r.slope},       {"verdict", to_string(r.verdict)},
         {"warnings", r.warnings}};
  json subs = json::array();
  for (const auto& t : r.subsequences) subs.push_back(trend(t));
  j["subsequences"] = subs;
  if (r.threshold_compare) {
    const auto& c = *r.threshold_compare;
    j["threshold_compare"] = {{"t", c.t}, {"threshold", c.threshold}, {"estimate", c.estimate}, {"pass", c.pass}};
  } else {
    j["threshold_compare"] = nullptr;
  }
  return j;
}

json to_json(const Classification& c) {
  json per = json::array();
  for (const auto& tv : c.per_t)
    per.push_back({{"t", tv.t},
                   {"threshold", tv.hw.threshold},
                   {"liminf_estimate", tv.hw.estimate},
                   {"threshold_pass", tv.hw.pass},
                   {"probe_integrable", tv.probe_integrable},
                   {"probe_exponent", tv.probe_exponent},
                   {"statement", tv.statement}});
  return {{"verdict", c.verdict},
          {"hw", to_json(c.hw)},
          {"re_psi", to_json(c.re_psi)},
          {"per_t", per},
          {"isotropic_monotone", c.isotropic_monotone},
          {"notes", c.notes}};
}

json to_json(const DensityField& f) {
  json j{{"t", f.t},
         {"dim", f.dim},
         {"mass", f.mass},
         {"mass_error", f.mass_error},
         {"outside_mass", f.outside_mass},
         {"tail_bound", f.tail_bound},
         {"imag_residue", f.imag_residue},
         {"xi_window", f.xi_window},
         {"values", f.values}};
  if (f.layout == DensityField::Layout::radial) {
    j["layout"] = "radial";
    j["r"] = f.radii;
  } else {
    j["layout"] = "lattice";
    j["origin"] = std::vector<double>(f.grid.origin.begin(), f.grid.origin.begin() + f.grid.dim);
    j["step"] = std::vector<double>(f.grid.step.begin(), f.grid.step.begin() + f.grid.dim);
    j["count"] = std::vector<int>(f.grid.count.begin(), f.grid.count.begin() + f.grid.dim);
  }
  return j;
}

json to_json(const RearrangementTable& t) {
  return {{"method", to_string(t.method)}, {"dim", t.dim}, {"cell_size", t.cell_size}, {"x", t.x_nodes},
          {"nu", t.nu_values}};
}

json to_json(const AsymptoticReport& a) {
  return {{"direction", to_string(a.direction)},
          {"t", a.t},
          {"observed", a.observed},
          {"t_exponent", a.t_exponent},
          {"fit", {{"rho", a.fit.rho}, {"L_anchor", a.fit.L_anchor}, {"x_edge", a.fit.x_edge}, {"r2", a.fit.r2},
                   {"nodes", a.fit.nodes}}},
          {"pro1_emitted", a.pro1_emitted},
          {"predicted", a.predicted},
          {"pro1_ratio_min", a.pro1_ratio_min},
          {"pro1_ratio_max", a.pro1_ratio_max},
          {"doubling", doubling(a.doubling)},
          {"bounds_emitted", a.bounds_emitted},
          {"c1", a.c1},
          {"c2", a.c2},
          {"c1_observed", a.c1_observed},
          {"c2_observed", a.c2_observed},
          {"lower", a.lower},
          {"upper", a.upper},
          {"brackets", a.brackets},
          {"warnings", a.warnings}};
}

json to_json(const RatioReport& r) {
  json rungs = json::array();
  for (const auto& g : r.rungs) {
    json e{{"t", g.t}, {"integrable", g.integrable}};
    if (!g.refusal.empty()) {
      e["refusal"] = g.refusal;
    } else {
      e["l1_norm"] = g.l1_norm;
      e["tail_mass"] = g.tail_mass;
      e["tail_envelope"] = g.tail_envelope;
      e["envelope_holds"] = g.envelope_holds;
      e["px_p0"] = g.px_p0;
      e["px_p0_envelope"] = g.px_p0_envelope;
      e["semigroup_observed"] = g.semigroup.observed;
      e["semigroup_value"] = g.semigroup.semigroup_value;
      e["xi_cutoff"] = g.semigroup.xi_cutoff;
      e["shifted_ratio"] = g.shifted_ratio;
    }
    rungs.push_back(e);
  }
  return {{"t_grid", r.t_grid},
          {"delta", r.delta},
          {"x", r.x},
          {"shift", r.shift},
          {"m_delta", {{"value", r.m_delta.value}, {"argmin", r.m_delta.argmin}, {"periodic", r.m_delta.periodic}}},
          {"t0", r.t0},
          {"rungs", rungs},
          {"limits_expected",
           {{"px_p0", r.limit_px_p0}, {"semigroup", r.limit_semigroup}, {"shifted", r.limit_shifted}}},
          {"warnings", r.warnings}};
}

}  // namespace levy::report
