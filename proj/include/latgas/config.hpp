#pragma once
// Declarative experiment configuration: strict JSON schema (unknown keys
// rejected), canonical normalization for the config echo, and shipped presets.

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "latgas/lattice.hpp"
#include "latgas/params.hpp"

namespace latgas {

using json = nlohmann::json;

struct ExperimentConfig {
  std::string experiment;
  LatticeSpec lattice{1, 3, 1.0, Boundary::Periodic};
  HubbardParams params;
  JumpFamily family;
  int N = 2;                   // boson count / doublon count
  std::string rho0 = "mixed";  // mixed | bec | random
  // time grid (log- or linearly spaced), or explicit list
  double t_min = 0.1, t_max = 50.0;
  int t_points = 40;
  bool t_log = true;
  std::vector<double> t_list;
  // correlation settings
  int x_max = 0;  // 0 -> M/2 - 1
  std::vector<double> curve_times;  // negative entries mean "steady"
  double init_xi = 2.0;
  // relax initial condition
  double relax_x0 = -1.0;  // < 0 -> uniform default n M^d/(M^d-1)
  double relax_y0 = 0.0;
  std::uint64_t seed = 12345;
  int jobs = 1;
  int cap_D = 64;
};

inline const std::set<std::string>& experiment_kinds() {
  static const std::set<std::string> k = {"exact",         "meanfield", "depletion",
                                          "relax",         "lowdim-steady",
                                          "lowdim-evolve", "eta",       "darkstate"};
  return k;
}

namespace detail {
inline void check_keys(const json& j, const std::set<std::string>& allowed,
                       const std::string& ctx) {
  if (!j.is_object()) throw std::invalid_argument("config: '" + ctx + "' must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + ctx);
}
template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}
}  // namespace detail

inline JumpKind parse_jump_kind(const std::string& s) {
  if (s == "LinkBEC") return JumpKind::LinkBEC;
  if (s == "MomentumBEC") return JumpKind::MomentumBEC;
  if (s == "LambdaV") return JumpKind::LambdaV;
  if (s == "EtaFermion") return JumpKind::EtaFermion;
  throw std::invalid_argument("config: unknown jump family kind '" + s + "'");
}

inline ExperimentConfig parse_config(const json& j) {
  using detail::check_keys;
  using detail::get_if;
  check_keys(j, {"experiment", "lattice", "params", "family", "N", "rho0", "time", "x_max",
                 "curve_times", "init", "relax", "seed", "jobs", "cap_D"},
             "top level");
  ExperimentConfig c;
  if (!j.contains("experiment"))
    throw std::invalid_argument("config: missing required field 'experiment'");
  c.experiment = j.at("experiment").get<std::string>();
  if (!experiment_kinds().count(c.experiment))
    throw std::invalid_argument("config: unknown experiment '" + c.experiment + "'");
  if (j.contains("lattice")) {
    const json& l = j.at("lattice");
    check_keys(l, {"d", "M", "a", "boundary"}, "lattice");
    get_if(l, "d", c.lattice.d);
    get_if(l, "M", c.lattice.M);
    get_if(l, "a", c.lattice.a);
    if (l.contains("boundary")) {
      const std::string b = l.at("boundary").get<std::string>();
      if (b == "periodic")
        c.lattice.boundary = Boundary::Periodic;
      else if (b == "open")
        c.lattice.boundary = Boundary::Open;
      else
        throw std::invalid_argument("config: boundary must be 'periodic' or 'open'");
    }
    c.lattice.validate();
  }
  if (j.contains("params")) {
    const json& p = j.at("params");
    check_keys(p, {"J", "U", "kappa", "n", "n0"}, "params");
    get_if(p, "J", c.params.J);
    get_if(p, "U", c.params.U);
    get_if(p, "kappa", c.params.kappa);
    get_if(p, "n", c.params.n);
    get_if(p, "n0", c.params.n0);
    c.params.validate();
  }
  if (j.contains("family")) {
    const json& f = j.at("family");
    check_keys(f,
               {"kind", "kappa", "kappa_lambda_plus", "kappa_lambda_minus", "kappa_v_plus",
                "kappa_v_minus", "kappa1", "kappa2"},
               "family");
    if (f.contains("kind")) c.family.kind = parse_jump_kind(f.at("kind").get<std::string>());
    get_if(f, "kappa", c.family.kappa);
    get_if(f, "kappa_lambda_plus", c.family.kappa_lambda_plus);
    get_if(f, "kappa_lambda_minus", c.family.kappa_lambda_minus);
    get_if(f, "kappa_v_plus", c.family.kappa_v_plus);
    get_if(f, "kappa_v_minus", c.family.kappa_v_minus);
    get_if(f, "kappa1", c.family.kappa1);
    get_if(f, "kappa2", c.family.kappa2);
    c.family.validate();
  }
  get_if(j, "N", c.N);
  get_if(j, "rho0", c.rho0);
  if (c.rho0 != "mixed" && c.rho0 != "bec" && c.rho0 != "random")
    throw std::invalid_argument("config: rho0 must be mixed|bec|random");
  if (j.contains("time")) {
    const json& t = j.at("time");
    check_keys(t, {"min", "max", "points", "log", "list"}, "time");
    get_if(t, "min", c.t_min);
    get_if(t, "max", c.t_max);
    get_if(t, "points", c.t_points);
    get_if(t, "log", c.t_log);
    get_if(t, "list", c.t_list);
    if (c.t_points < 2) throw std::invalid_argument("config: time.points must be >= 2");
    if (c.t_list.empty() && (c.t_min <= 0.0 || c.t_max <= c.t_min))
      throw std::invalid_argument("config: need 0 < time.min < time.max");
  }
  get_if(j, "x_max", c.x_max);
  get_if(j, "curve_times", c.curve_times);
  if (j.contains("init")) {
    const json& i = j.at("init");
    check_keys(i, {"xi"}, "init");
    get_if(i, "xi", c.init_xi);
  }
  if (j.contains("relax")) {
    const json& r = j.at("relax");
    check_keys(r, {"x0", "y0"}, "relax");
    get_if(r, "x0", c.relax_x0);
    get_if(r, "y0", c.relax_y0);
  }
  get_if(j, "seed", c.seed);
  get_if(j, "jobs", c.jobs);
  get_if(j, "cap_D", c.cap_D);
  return c;
}

// Canonical normalized echo of a config (stable key order via nlohmann's
// sorted object representation).
inline json normalize(const ExperimentConfig& c) {
  json j;
  j["experiment"] = c.experiment;
  j["lattice"] = {{"d", c.lattice.d},
                  {"M", c.lattice.M},
                  {"a", c.lattice.a},
                  {"boundary", c.lattice.boundary == Boundary::Periodic ? "periodic" : "open"}};
  j["params"] = {{"J", c.params.J}, {"U", c.params.U}, {"kappa", c.params.kappa},
                 {"n", c.params.n}, {"n0", c.params.n0}};
  j["family"] = {{"kind", to_string(c.family.kind)},
                 {"kappa", c.family.kappa},
                 {"kappa_lambda_plus", c.family.kappa_lambda_plus},
                 {"kappa_lambda_minus", c.family.kappa_lambda_minus},
                 {"kappa_v_plus", c.family.kappa_v_plus},
                 {"kappa_v_minus", c.family.kappa_v_minus},
                 {"kappa1", c.family.kappa1},
                 {"kappa2", c.family.kappa2}};
  j["N"] = c.N;
  j["rho0"] = c.rho0;
  j["time"] = {{"min", c.t_min}, {"max", c.t_max}, {"points", c.t_points},
               {"log", c.t_log}, {"list", c.t_list}};
  j["x_max"] = c.x_max;
  j["curve_times"] = c.curve_times;
  j["init"] = {{"xi", c.init_xi}};
  j["relax"] = {{"x0", c.relax_x0}, {"y0", c.relax_y0}};
  j["seed"] = c.seed;
  j["jobs"] = c.jobs;
  j["cap_D"] = c.cap_D;
  return j;
}

inline std::vector<double> make_t_grid(const ExperimentConfig& c) {
  if (!c.t_list.empty()) return c.t_list;
  std::vector<double> t;
  t.reserve(c.t_points);
  for (int i = 0; i < c.t_points; ++i) {
    const double f = double(i) / (c.t_points - 1);
    t.push_back(c.t_log ? c.t_min * std::pow(c.t_max / c.t_min, f)
                        : c.t_min + (c.t_max - c.t_min) * f);
  }
  return t;
}

// Presets: one per acceptance-style workflow, loadable by name. The same
// JSON documents are shipped in presets/ for reference.
inline const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> p = {
      {"fig2", R"json({
  "experiment": "lowdim-evolve",
  "lattice": {"d": 2, "M": 256},
  "params": {"J": 1.0, "U": 1.3962634015954636, "kappa": 1.0, "n": 1.0},
  "curve_times": [0, 20, 200, 2000, 20000, 200000, 2000000, -1],
  "time": {"min": 5, "max": 2000000, "points": 40, "log": true},
  "init": {"xi": 2.0}
})json"},
      {"depletion3d", R"json({
  "experiment": "depletion",
  "lattice": {"d": 3, "M": 16},
  "params": {"J": 1.0, "U": 0.1, "kappa": 1.0, "n": 1.0}
})json"},
      {"relax-tails", R"json({
  "experiment": "relax",
  "lattice": {"d": 3, "M": 512},
  "params": {"J": 1.0, "U": 0.5, "kappa": 1.0, "n": 1.0},
  "time": {"min": 0.31622776601683794, "max": 100.0, "points": 51, "log": true}
})json"},
      {"eta-small", R"json({
  "experiment": "eta",
  "lattice": {"d": 1, "M": 3, "boundary": "open"},
  "params": {"J": 1.0, "U": 1.0, "kappa": 1.0, "n": 1.0},
  "N": 1,
  "family": {"kind": "EtaFermion", "kappa1": 1.0, "kappa2": 1.0},
  "time": {"min": 0.5, "max": 40.0, "points": 30, "log": true}
})json"}};
  return p;
}

}  // namespace latgas
