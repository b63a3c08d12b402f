// sim — command-line front end: runs any experiment from a declarative JSON
// config (with presets and flag overrides) and writes CSV + JSON-lines
// results plus a normalized config echo. Deterministic given config + seed.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "latgas/config.hpp"
#include "latgas/eta.hpp"
#include "latgas/fock.hpp"
#include "latgas/io.hpp"
#include "latgas/kernels.hpp"
#include "latgas/lindblad.hpp"
#include "latgas/meanfield.hpp"
#include "latgas/modes.hpp"
#include "latgas/ops.hpp"
#include "latgas/phase.hpp"

namespace fs = std::filesystem;
using namespace latgas;

namespace {

constexpr const char* kVersion = "1.0.0";

int g_verbosity = 1;  // 0 quiet, 1 normal, 2 verbose

void info(const std::string& msg) {
  if (g_verbosity >= 1) std::cout << msg << "\n";
}
void verbose(const std::string& msg) {
  if (g_verbosity >= 2) std::cout << msg << "\n";
}

void deep_merge(json& base, const json& over) {
  if (!base.is_object() || !over.is_object()) {
    base = over;
    return;
  }
  for (auto it = over.begin(); it != over.end(); ++it) {
    if (base.contains(it.key()))
      deep_merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

void emit_tables(const fs::path& out, const std::vector<Table>& tables) {
  fs::create_directories(out);
  for (const Table& t : tables) {
    write_csv((out / (t.name + ".csv")).string(), t);
    write_jsonl((out / (t.name + ".jsonl")).string(), t);
    verbose("wrote " + (out / t.name).string() + ".{csv,jsonl}");
  }
}

DMat initial_state(const ExperimentConfig& cfg, const BosonSector& sec) {
  if (cfg.rho0 == "mixed")
    return DMat::Identity(sec.dim(), sec.dim()) / double(sec.dim());
  if (cfg.rho0 == "bec") {
    DVec b = sec.bec_state();
    return b * b.adjoint();
  }
  if (cfg.rho0 == "random") {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> nd;
    DVec v(sec.dim());
    for (std::int64_t i = 0; i < sec.dim(); ++i) v[i] = cd(nd(rng), nd(rng));
    v.normalize();
    return v * v.adjoint();
  }
  throw std::invalid_argument("rho0 '" + cfg.rho0 + "' not applicable to bosonic sectors");
}

// ---- experiment runners ---------------------------------------------------

std::vector<Table> run_exact(const ExperimentConfig& cfg) {
  BosonSector sec(cfg.lattice, cfg.N);
  SpMat H = build_hamiltonian(sec, cfg.params);
  JumpFamily fam = cfg.family;
  if (fam.kind == JumpKind::EtaFermion)
    throw std::invalid_argument("exact: EtaFermion family requires the eta experiment");
  fam.kappa = fam.kappa > 0 ? fam.kappa : cfg.params.kappa;
  PreparedJumps pj = prepare_jumps(build_jump_operators(sec, fam));
  DMat rho0 = initial_state(cfg, sec);
  std::vector<double> ts = make_t_grid(cfg);
  EvolveResult er = evolve(rho0, H, pj, ts);
  DVec bec = sec.bec_state();
  Table t{"trajectory",
          {{"time", "1/J"},
           {"fidelity_bec", ""},
           {"purity", ""},
           {"condensate_fraction", ""},
           {"total_N", ""},
           {"trace_dev", ""}},
          {}};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const DMat& r = er.snapshots[i];
    Observables o = observables(r, sec, &bec);
    t.add_row({ts[i], o.fidelity, o.purity, o.condensate_fraction, o.total_N,
               std::abs(r.trace().real() - 1.0)});
  }
  return {t};
}

std::vector<Table> run_darkstate(const ExperimentConfig& cfg) {
  Table t{"darkstate",
          {{"annihilation_residual", ""},
           {"hamiltonian_residual", ""},
           {"dark", ""},
           {"kernel_dimension", ""}},
          {}};
  if (cfg.family.kind == JumpKind::EtaFermion) {
    FermionSector sec(cfg.lattice, cfg.N, cfg.N);
    EtaState st = build_eta_state(cfg.lattice, cfg.N);
    SpMat H = build_hamiltonian(sec, cfg.params);
    PreparedJumps pj = prepare_jumps(build_jump_operators(sec, cfg.family));
    DarkStateReport rep = dark_state_check(st.amp, H, pj);
    double kd = sec.dim() <= cfg.cap_D ? steady_state(H, pj, cfg.cap_D).kernel_dimension : -1;
    t.add_row({rep.annihilation_residual, rep.hamiltonian_residual,
               std::string(rep.dark ? "true" : "false"), kd});
  } else {
    BosonSector sec(cfg.lattice, cfg.N);
    SpMat H = build_hamiltonian(sec, cfg.params);
    PreparedJumps pj = prepare_jumps(build_jump_operators(sec, cfg.family));
    DarkStateReport rep = dark_state_check(sec.bec_state(), H, pj);
    double kd = sec.dim() <= cfg.cap_D ? steady_state(H, pj, cfg.cap_D).kernel_dimension : -1;
    t.add_row({rep.annihilation_residual, rep.hamiltonian_residual,
               std::string(rep.dark ? "true" : "false"), kd});
  }
  return {t};
}

std::vector<Table> run_meanfield(const ExperimentConfig& cfg) {
  const HubbardParams& p = cfg.params;
  Table modes{"modes",
              {{"k1", ""}, {"k2", ""}, {"k3", ""}, {"sigma", ""}, {"eps", "J"},
               {"kappa_q", "J"}, {"E_q", "J"}, {"theta", ""}, {"beta", ""},
               {"phi", ""}, {"x", ""}, {"re_y", ""}, {"im_y", ""}},
              {}};
  const double Un = p.U * p.n;
  for (const ModeIndex& mi : mode_grid(cfg.lattice, true)) {
    const double s = sin2_sum(mi.k, cfg.lattice.d, cfg.lattice.M);
    const double eps = 2.0 * p.J * s;
    const double kq = 16.0 * p.n * p.kappa * s;
    SqueezedSpec sq = steady_squeezing(eps, Un, kq);
    ModeMomentState mm = steady_moments(bogoliubov_mode(eps, Un, kq));
    modes.add_row({double(mi.k[0]), double(mi.k[1]), double(mi.k[2]), double(mi.sigma), eps, kq,
                   std::sqrt(eps * eps + 2.0 * Un * eps), sq.theta,
                   sq.pure ? Cell(std::string("pure")) : Cell(sq.beta), sq.phi, mm.x,
                   mm.y.real(), mm.y.imag()});
  }
  Table summary{"summary", {{"T_eff", "J"}, {"n_D", ""}}, {}};
  summary.add_row({0.5 * Un, depletion(p, cfg.lattice)});
  return {modes, summary};
}

std::vector<Table> run_depletion(const ExperimentConfig& cfg) {
  DepletionReport r = depletion_report(cfg.params, cfg.lattice);
  Table t{"depletion", {{"M", ""}, {"n_D", ""}}, {}};
  t.add_row({double(cfg.lattice.M), r.nD});
  t.add_row({double(2 * cfg.lattice.M), r.nD_2M});
  Table s{"summary", {{"growth_ratio", ""}, {"abs_diff", ""}}, {}};
  s.add_row({r.growth_ratio, std::abs(r.nD_2M - r.nD)});
  return {t, s};
}

std::vector<Table> run_relax(const ExperimentConfig& cfg) {
  RelaxationCurve rc = relax(cfg.params, cfg.lattice, make_t_grid(cfg), cfg.relax_x0,
                             cfg.relax_y0);
  Table t{"relaxation", {{"time", "1/J"}, {"n0", ""}, {"deviation", ""}}, {}};
  for (std::size_t i = 0; i < rc.times.size(); ++i)
    t.add_row({rc.times[i], rc.n0_of_t[i], rc.deviation[i]});
  Table f{"fit",
          {{"tail_exponent", ""}, {"tail_prefactor_t", ""}, {"local_slope_spread", ""},
           {"asymptotic", ""}, {"n0_inf", ""}},
          {}};
  f.add_row({rc.fitted_tail_exponent, rc.tail_prefactor_t, rc.local_slope_spread,
             std::string(rc.asymptotic ? "true" : "asymptotic regime not reached"), rc.n0_inf});
  return {t, f};
}

std::vector<double> make_x_grid(const ExperimentConfig& cfg) {
  const int xmax = cfg.x_max > 0 ? cfg.x_max : cfg.lattice.M / 2 - 1;
  std::vector<double> xs;
  for (int x = 1; x <= xmax; ++x) xs.push_back(x);
  return xs;
}

Table scales_table(const PhaseScales& s) {
  Table t{"scales",
          {{"c", "J a"}, {"K", ""}, {"T_KT", "J"}, {"T_eff", "J"}, {"ell_c", "a"},
           {"x0", "a"}, {"tau0", "1/J"}, {"xi_1d", "a"}, {"exponent", ""},
           {"teff_over_tkt", ""}, {"valid", ""}},
          {}};
  t.add_row({s.c, s.K, s.T_KT, s.T_eff, s.ell_c, s.x0, s.tau0, s.xi_1d, s.exponent,
             s.teff_over_tkt, std::string(s.valid ? "true" : "false")});
  return t;
}

std::vector<Table> run_lowdim_steady(const ExperimentConfig& cfg) {
  SteadyCorrelation sc = steady_correlation(cfg.params, cfg.lattice, make_x_grid(cfg));
  Table t{"correlation", {{"x", "a"}, {"G", ""}, {"companion", ""}, {"valid", ""}}, {}};
  for (std::size_t i = 0; i < sc.curve.x.size(); ++i)
    t.add_row({sc.curve.x[i], sc.curve.G[i], sc.companion[i],
               std::string(sc.curve.valid ? "true" : "false")});
  Table f{"fit",
          {{"window_lo", "a"}, {"window_hi", "a"}, {"slope", ""},
           {"max_abs_log_resid", ""}, {"xi_fit", "a"}},
          {}};
  f.add_row({sc.fit_window_lo, sc.fit_window_hi, sc.slope, sc.max_abs_log_resid, sc.xi_fit});
  return {t, f, scales_table(sc.scales)};
}

std::vector<Table> run_lowdim_evolve(const ExperimentConfig& cfg) {
  std::vector<double> curve_times = cfg.curve_times;
  if (curve_times.empty()) curve_times = {0.0, -1.0};
  EvolveCorrelations ec =
      evolve_correlations(InitialDisorderSpec{cfg.init_xi}, cfg.params, cfg.lattice,
                          make_t_grid(cfg), curve_times, make_x_grid(cfg), 8, cfg.jobs);
  Table curves{"curves", {{"t", "1/J"}, {"x", "a"}, {"G", ""}}, {}};
  for (const CorrelationCurve& cc : ec.curves)
    for (std::size_t i = 0; i < cc.x.size(); ++i)
      curves.add_row({cc.t < 0 ? Cell(std::string("inf")) : Cell(cc.t), cc.x[i], cc.G[i]});
  Table front{"front", {{"t", "1/J"}, {"x_t", "a"}}, {}};
  for (std::size_t i = 0; i < ec.ts.size(); ++i) front.add_row({ec.ts[i], ec.xt[i]});
  Table f{"fit",
          {{"xt_slope", ""}, {"xt_max_log_resid", ""}, {"init_C", ""}, {"init_m", ""},
           {"init_fit_rms", ""}},
          {}};
  f.add_row({ec.xt_fit.slope, ec.xt_fit.max_abs_resid, ec.fitted_C, ec.fitted_m,
             ec.init_fit_rms});
  return {curves, front, f, scales_table(derived_scales(cfg.params))};
}

std::vector<Table> run_eta(const ExperimentConfig& cfg) {
  JumpFamily fam = cfg.family;
  fam.kind = JumpKind::EtaFermion;
  EtaConvergence ec =
      simulate_eta_convergence(cfg.lattice, cfg.N, cfg.params, fam, make_t_grid(cfg), nullptr,
                               cfg.cap_D);
  Table t{"fidelity", {{"time", "1/J"}, {"fidelity", ""}}, {}};
  for (std::size_t i = 0; i < ec.times.size(); ++i) t.add_row({ec.times[i], ec.fidelity[i]});
  Table s{"summary", {{"eigen_residual", ""}, {"kernel_dimension", ""}}, {}};
  s.add_row({ec.eigen_residual, double(ec.kernel_dimension)});
  return {t, s};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sim — desk-scale simulations of driven-dissipative lattice gases"};
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list", list, "List available experiments and exit");

  struct Shared {
    std::string config_path, preset, out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 0;
    int quiet = 0, verb = 0;
    // flag overrides
    double J = 0, U = 0, kappa = 0, n = 0;
    int d = 0, M = 0, N = 0;
    std::string boundary, family, rho0;
    double t_min = 0, t_max = 0;
    int t_points = 0;
    double xi = 0;
  } sh;

  static const std::map<std::string, std::string> kinds_help = {
      {"exact", "exact density-matrix evolution on a fixed-N bosonic sector"},
      {"darkstate", "dark-state residuals and kernel dimension for a target state"},
      {"meanfield", "per-mode squeezed steady state, T_eff and depletion"},
      {"depletion", "condensate depletion at M and 2M with divergence diagnostic"},
      {"relax", "condensate relaxation curve with tail-exponent fit"},
      {"lowdim-steady", "steady spatial correlations (1D/2D phase model)"},
      {"lowdim-evolve", "correlation dynamics from a disordered initial state"},
      {"eta", "dissipative preparation of the doublon condensate (fermions)"}};

  std::vector<CLI::App*> subs;
  for (const auto& [kind, help] : kinds_help) {
    CLI::App* sc = app.add_subcommand(kind, help);
    sc->add_option("--config", sh.config_path, "JSON config file");
    sc->add_option("--preset", sh.preset, "Named preset (fig2, depletion3d, relax-tails, eta-small)");
    sc->add_option("--out", sh.out, "Output directory (default $SIM_OUT_DIR or ./out)");
    sc->add_option("--seed", sh.seed, "Random seed");
    sc->add_option("--jobs", sh.jobs, "Worker-thread cap");
    sc->add_flag("--quiet", sh.quiet, "Suppress progress output");
    sc->add_flag("--verbose", sh.verb, "Extra progress output");
    sc->add_option("--d", sh.d, "Lattice dimension override");
    sc->add_option("--M", sh.M, "Sites per axis override");
    sc->add_option("--N", sh.N, "Particle/doublon count override");
    sc->add_option("--boundary", sh.boundary, "periodic|open");
    sc->add_option("--J", sh.J, "Hopping override");
    sc->add_option("--U", sh.U, "Interaction override");
    sc->add_option("--kappa", sh.kappa, "Dissipative rate override");
    sc->add_option("--n", sh.n, "Filling override");
    sc->add_option("--family", sh.family, "Jump family kind override");
    sc->add_option("--rho0", sh.rho0, "Initial state: mixed|bec|random");
    sc->add_option("--t-min", sh.t_min, "Time-grid start");
    sc->add_option("--t-max", sh.t_max, "Time-grid end");
    sc->add_option("--t-points", sh.t_points, "Time-grid points");
    sc->add_option("--xi", sh.xi, "Initial correlation length");
    subs.push_back(sc);
  }

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& [kind, help] : kinds_help) std::cout << kind << " — " << help << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << "error: no experiment given (try --list)\n";
    return 2;
  }
  CLI::App* sc = app.get_subcommands().front();
  const std::string kind = sc->get_name();
  g_verbosity = sc->count("--quiet") ? 0 : (sc->count("--verbose") ? 2 : 1);

  try {
    // assemble config: defaults <- preset <- file <- flags
    json merged = json::object();
    merged["experiment"] = kind;
    if (!sh.preset.empty()) {
      auto it = presets().find(sh.preset);
      if (it == presets().end()) throw std::invalid_argument("unknown preset '" + sh.preset + "'");
      json pj = json::parse(it->second);
      if (pj.at("experiment") != kind)
        throw std::invalid_argument("preset '" + sh.preset + "' is for experiment '" +
                                    pj.at("experiment").get<std::string>() + "'");
      deep_merge(merged, pj);
    }
    if (!sh.config_path.empty()) {
      std::ifstream f(sh.config_path);
      if (!f) throw std::invalid_argument("cannot open config file " + sh.config_path);
      json fj = json::parse(f);
      deep_merge(merged, fj);
    }
    ExperimentConfig cfg = parse_config(merged);
    // flag overrides
    if (sc->count("--d")) cfg.lattice.d = sh.d;
    if (sc->count("--M")) cfg.lattice.M = sh.M;
    if (sc->count("--N")) cfg.N = sh.N;
    if (sc->count("--boundary"))
      cfg.lattice.boundary = sh.boundary == "open" ? Boundary::Open : Boundary::Periodic;
    if (sc->count("--J")) cfg.params.J = sh.J;
    if (sc->count("--U")) cfg.params.U = sh.U;
    if (sc->count("--kappa")) cfg.params.kappa = sh.kappa;
    if (sc->count("--n")) cfg.params.n = sh.n;
    if (sc->count("--family")) cfg.family.kind = parse_jump_kind(sh.family);
    if (sc->count("--rho0")) cfg.rho0 = sh.rho0;
    if (sc->count("--t-min")) cfg.t_min = sh.t_min;
    if (sc->count("--t-max")) cfg.t_max = sh.t_max;
    if (sc->count("--t-points")) cfg.t_points = sh.t_points;
    if (sc->count("--xi")) cfg.init_xi = sh.xi;
    if (sc->count("--seed")) cfg.seed = sh.seed;
    if (sc->count("--jobs")) cfg.jobs = sh.jobs;
    cfg.lattice.validate();
    cfg.params.validate();

    const char* env_out = std::getenv("SIM_OUT_DIR");
    fs::path out = !sh.out.empty() ? sh.out : (env_out ? env_out : "./out");

    const auto t_start = std::chrono::steady_clock::now();
    std::vector<Table> tables;
    if (kind == "exact") tables = run_exact(cfg);
    else if (kind == "darkstate") tables = run_darkstate(cfg);
    else if (kind == "meanfield") tables = run_meanfield(cfg);
    else if (kind == "depletion") tables = run_depletion(cfg);
    else if (kind == "relax") tables = run_relax(cfg);
    else if (kind == "lowdim-steady") tables = run_lowdim_steady(cfg);
    else if (kind == "lowdim-evolve") tables = run_lowdim_evolve(cfg);
    else if (kind == "eta") tables = run_eta(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    emit_tables(out, tables);
    json meta;
    meta["config"] = normalize(cfg);
    meta["version"] = kVersion;
    meta["kernel"] = kernels::active_name();
    meta["seed"] = cfg.seed;
    {
      std::ofstream mf(out / "metadata.json");
      mf << meta.dump(2) << "\n";
    }
    {
      std::ofstream lf(out / "run.log");  // wall time kept out of deterministic outputs
      lf << "experiment=" << kind << " wall_time_s=" << wall << "\n";
    }
    info("done: " + kind + " -> " + out.string());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
