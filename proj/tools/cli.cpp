#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cfrit/cfrit.hpp"
#include "cfrit/codec.hpp"
#include "cfrit/designer.hpp"
#include "cfrit/elgamal.hpp"
#include "cfrit/errors.hpp"
#include "cfrit/frit.hpp"
#include "cfrit/report.hpp"
#include "cfrit/scenario.hpp"
#include "cfrit/sweep.hpp"

namespace cfrit::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::string scenario;
  std::optional<double> epsilon;
  std::optional<double> gamma;
  std::optional<unsigned> kappa;
  std::optional<std::uint64_t> seed;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  bool injected_norms = false;
  bool reproducible = false;
};

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

report::RunManifest manifest(const std::string& command, const Common& c, std::uint64_t seed,
                             std::vector<std::string> outputs) {
  report::RunManifest m;
  m.command = command;
  m.scenario_path = c.scenario;
  m.seed = seed;
  m.outputs = std::move(outputs);
  if (c.epsilon) m.overrides["epsilon"] = g17(*c.epsilon);
  if (c.gamma) m.overrides["gamma"] = g17(*c.gamma);
  if (c.kappa) m.overrides["kappa"] = std::to_string(*c.kappa);
  if (c.injected_norms) m.overrides["injected_norms"] = "true";
  if (!c.reproducible) m.timestamp = report::utc_timestamp();
  return m;
}

std::uint64_t resolve_seed(const Common& c, std::ostream& err) {
  const std::uint64_t seed = c.seed ? *c.seed : entropy_seed();
  err << "seed = " << seed << '\n';
  return seed;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text << '\n';
  } else {
    write_file(path, text + '\n');
    out << "wrote " << path << '\n';
  }
}

std::vector<std::string> outputs_of(const std::string& path) {
  if (path.empty() || path == "-") return {"-"};
  return {path};
}

int cmd_keygen(const Common& c, std::ostream& out, std::ostream& err) {
  if (!c.kappa) throw std::runtime_error("keygen needs --kappa");
  const std::uint64_t seed = resolve_seed(c, err);
  SeededRandom rng(seed);
  const auto keys = elgamal::gen(*c.kappa, rng);
  const std::string prefix = c.out.empty() ? "cfrit_key" : c.out;
  std::ostringstream pub, sec;
  elgamal::write_public_key(pub, keys.pk);
  elgamal::write_secret_key(sec, keys.sk);
  write_file(prefix + ".pub", pub.str());
  write_file(prefix + ".sec", sec.str());
  out << "kappa = " << *c.kappa << "\nq = " << keys.pk.q.get_str() << "\np = " << keys.pk.p.get_str()
      << "\nwrote " << prefix << ".pub and " << prefix << ".sec\n";
  return 0;
}

int cmd_tune(const Common& c, const std::string& mode, bool fresh, std::ostream& out,
             std::ostream& err) {
  const Scenario sc = load_scenario(c.scenario);
  report::GainReport rep;
  rep.mode = mode;
  rep.epsilon = c.epsilon.value_or(sc.epsilon);
  std::uint64_t seed = 0;

  if (mode == "frit") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ds = sc.dataset();
    rep.f_star = frit::frit_gain(ds).F;
    rep.M = frit::term_count(ds.n, ds.N);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  } else {
    seed = resolve_seed(c, err);
    design::ProcedureOptions opt;
    opt.epsilon = c.epsilon;
    opt.gamma = c.gamma;
    opt.kappa = c.kappa;
    opt.use_injected_norms = c.injected_norms;
    opt.seed = seed;
    opt.cfrit.threads = c.threads;
    opt.cfrit.fresh_factor_encryption = fresh;
    const auto res = design::run_procedure(sc, opt);
    rep.f_star = res.f_star.F;
    rep.f_e_star = res.encrypted->gain.F;
    rep.l2_deviation = res.l2_deviation;
    rep.gamma = res.design.gamma_bar;
    rep.kappa = res.design.kappa_bar;
    rep.M = res.spec.M;
    const auto& ov = res.encrypted->overflow;
    rep.overflow = report::OverflowSummary{!ov.in_q, ov.observed, ov.overflowed_terms.size()};
    rep.wall_time = res.wall_seconds;
    err << "gamma = " << g17(*rep.gamma) << ", kappa = " << *rep.kappa
        << ", ||F_E - F*||_2 = " << g17(*rep.l2_deviation)
        << (ov.observed ? ", OVERFLOW observed" : "") << '\n';
  }
  if (c.reproducible) rep.wall_time = 0.0;
  rep.manifest = manifest("tune --mode " + mode, c, seed, outputs_of(c.out));
  emit(c.out, report::to_json(rep), out);
  return 0;
}

int cmd_design(const Common& c, std::ostream& out) {
  const Scenario sc = load_scenario(c.scenario);
  design::ProcedureOptions opt;
  opt.epsilon = c.epsilon;
  opt.gamma = c.gamma;
  opt.kappa = c.kappa;
  opt.use_injected_norms = c.injected_norms;
  opt.execute = false;
  const auto res = design::run_procedure(sc, opt);

  report::DesignReport rep;
  rep.gamma_bar = res.design.gamma_bar;
  rep.kappa_bar = res.design.kappa_bar;
  rep.gamma_threshold = res.design.gamma_threshold;
  rep.q_bound_bits = res.design.q_bound_bits();
  rep.q_bound = res.design.q_bound.get_str();
  rep.in_gamma = res.design.in_gamma;
  rep.in_q = res.design.in_q;
  rep.e_max = res.spec.e_max;
  rep.w_max = res.spec.w_max;
  rep.lambda_min = res.spec.lambda_min;
  rep.M = res.spec.M;
  rep.manifest = manifest("design", c, 0, outputs_of(c.out));
  if (!c.out.empty() && c.out != "-") {
    out << "gamma_bar = " << g17(rep.gamma_bar) << "\nkappa_bar = " << rep.kappa_bar << '\n';
  }
  emit(c.out, report::to_json(rep), out);
  return 0;
}

int cmd_sweep(const Common& c, bool linear, bool full, std::ostream& out, std::ostream& err) {
  if (c.out.empty()) throw std::runtime_error("sweep needs --out <csv>");
  const Scenario sc = load_scenario(c.scenario);
  const std::uint64_t seed = resolve_seed(c, err);
  const double eps = c.epsilon.value_or(sc.epsilon);
  auto grid = full ? sweep::full_grid(eps, seed, linear) : sweep::desk_grid(eps, seed, linear);
  if (c.kappa) grid.kappa_values = {*c.kappa};
  if (c.gamma) grid.gamma_values = {*c.gamma};

  const fs::path csv(c.out);
  fs::path script = csv;
  script.replace_extension(".py");
  // Fail on an unwritable path before spending minutes on the grid.
  write_file(csv.string(), "");

  sweep::SweepOptions opt;
  opt.threads = c.threads;
  std::size_t done = 0;
  const std::size_t total = grid.size();
  opt.on_point = [&](const sweep::SweepRecord& r) {
    err << "[" << ++done << "/" << total << "] kappa=" << r.kappa << " gamma=" << g17(r.gamma)
        << " error=" << g17(r.error) << " " << sweep::class_name(r.cls) << '\n';
  };
  auto records = sweep::run_sweep(sc.dataset(), grid, opt);
  if (c.reproducible)
    for (auto& r : records) r.wall_ms = 0.0;

  const auto m = manifest(full ? "sweep --full-grid" : "sweep", c, seed,
                          {csv.string(), script.string()});
  std::ostringstream body;
  sweep::write_csv(body, records, report::to_json(m));
  write_file(csv.string(), body.str());
  write_file(script.string(), "# " + report::to_json(m) + "\n" +
                                  sweep::plot_script(csv.string(), eps));

  std::size_t counts[4] = {};
  for (const auto& r : records) ++counts[static_cast<int>(r.cls)];
  for (int k = 0; k < 4; ++k) {
    out << sweep::class_name(static_cast<sweep::PointClass>(k)) << ": " << counts[k] << '\n';
  }
  out << "wrote " << csv.string() << " and " << script.string() << '\n';
  return 0;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

Check check_term_sum(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t N = 4 + trial % 3;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    plant::TuningDataset ds{std::vector<double>(n * N), linalg::Matrix(n * N, n), n, N};
    for (auto& e : ds.E) e = unit(rng);
    for (std::size_t r = 0; r < n * N; ++r)
      for (std::size_t l = 0; l < n; ++l) ds.W(r, l) = unit(rng);
    const frit::TermExpansion tx(ds);
    const auto f = frit::frit_gain(ds);
    for (std::size_t iota = 0; iota < n; ++iota) {
      double s = 0.0;
      tx.for_each_term(iota, [&](const frit::TermFactors& tf) { s += tf.value; });
      worst = std::max(worst, std::fabs(s - f[iota]) / std::max(1.0, std::fabs(f[iota])));
    }
  }
  return {"term-sum identity", worst <= 1e-8, "max relative error " + g17(worst)};
}

Check check_roundtrip(std::uint64_t seed) {
  const codec::QuantizationConfig cfg{1e3, modmath::largest_safe_q(32)};
  std::mt19937_64 rng(seed);
  const double bound = cfg.primes.q.get_d() / (2 * cfg.gamma);
  std::uniform_real_distribution<double> dist(-std::min(bound, 1e3), std::min(bound, 1e3));
  double worst = 0.0;
  bool ok = true;
  for (int i = 0; i < 10000; ++i) {
    const double x = i == 0 ? 0.0 : dist(rng);
    const double e = std::fabs(codec::dcd(codec::ecd(x, cfg), cfg) - x);
    worst = std::max(worst, e);
    ok = ok && e <= 1.0 / cfg.gamma + 1e-12 &&
         (cfg.gamma * std::fabs(x) < 0.5 || e <= 0.5 / cfg.gamma + 1e-12);
  }
  return {"quantizer roundtrip", ok, "max error " + g17(worst) + " at gamma 1e3, kappa 32"};
}

Check check_soundness(std::uint64_t seed, unsigned threads) {
  const auto ds = random_toy_scenario(seed, 2, 6).dataset();
  sweep::SweepGrid grid{{48, 56, 64, 72, 80}, sweep::log_spaced(10.0, 1e4, 5), 1e-3, seed};
  sweep::SweepOptions opt;
  opt.threads = threads;
  const auto recs = sweep::run_sweep(ds, grid, opt);
  std::size_t bad = 0, proven = 0;
  for (const auto& r : recs) {
    proven += r.theory_ok;
    bad += r.theory_ok && r.observed_overflow;
  }
  return {"overflow-free guarantee on toy grid", bad == 0,
          std::to_string(proven) + " proven points, " + std::to_string(bad) + " overflowed"};
}

std::vector<Check> check_scenario(const Common& c) {
  std::vector<Check> out;
  const Scenario sc = load_scenario(c.scenario);
  const auto ds = sc.dataset();
  const auto spec = design::DesignSpec::from_dataset(ds, c.epsilon.value_or(sc.epsilon));
  if (sc.reference) {
    const auto& r = *sc.reference;
    auto near = [&](const char* name, std::optional<double> want, double got, double tol) {
      if (!want) return;
      out.push_back({std::string("scenario ") + name, std::fabs(got - *want) <= tol,
                     "got " + g17(got) + ", expected " + g17(*want) + " +- " + g17(tol)});
    };
    near("E_max", r.e_max, spec.e_max, r.norm_tolerance);
    near("W_max", r.w_max, spec.w_max, r.w_max_tolerance);
    near("lambda_min", r.lambda_min, spec.lambda_min, r.norm_tolerance);
    if (r.kappa_bar) {
      const unsigned k = design::choose_kappa(spec, design::gamma_lower_bound(spec));
      const unsigned diff = k > *r.kappa_bar ? k - *r.kappa_bar : *r.kappa_bar - k;
      out.push_back({"scenario kappa_bar", diff <= r.kappa_tolerance,
                     "got " + std::to_string(k) + ", expected " + std::to_string(*r.kappa_bar)});
    }
  }
  if (c.kappa) {
    const double gamma = c.gamma.value_or(design::gamma_lower_bound(spec));
    const auto bound = design::q_requirement(spec, gamma);
    const bool ok = design::in_q(modmath::largest_safe_q(*c.kappa).q, bound);
    out.push_back({"kappa override admissible", ok,
                   "kappa " + std::to_string(*c.kappa) + " vs bound of " +
                       std::to_string(modmath::bit_length(bound)) + " bits"});
  }
  return out;
}

int cmd_verify(const Common& c, std::ostream& out, std::ostream& err) {
  const std::uint64_t seed = resolve_seed(c, err);
  std::vector<Check> checks;
  auto run = [&](const std::string& name, const std::function<std::vector<Check>()>& fn) {
    try {
      for (auto& ch : fn()) checks.push_back(std::move(ch));
    } catch (const std::exception& e) {
      checks.push_back({name, false, e.what()});
    }
  };
  run("term-sum identity", [&] { return std::vector{check_term_sum(seed)}; });
  run("quantizer roundtrip", [&] { return std::vector{check_roundtrip(seed)}; });
  run("overflow-free guarantee", [&] { return std::vector{check_soundness(seed, c.threads)}; });
  if (!c.scenario.empty()) run("scenario", [&] { return check_scenario(c); });

  bool all = true;
  for (const auto& ch : checks) {
    out << (ch.pass ? "PASS " : "FAIL ") << ch.name << " (" << ch.detail << ")\n";
    all = all && ch.pass;
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all ? 0 : 1;
}

void add_common(CLI::App* app, Common& c, bool scenario_required) {
  auto* s = app->add_option("--scenario", c.scenario, "Scenario JSON file");
  if (scenario_required) s->required();
  app->add_option("--epsilon", c.epsilon, "Tolerance on ||F_E - F*||_2");
  app->add_option("--gamma", c.gamma, "Quantization gain override")->check(CLI::PositiveNumber);
  app->add_option("--kappa", c.kappa, "Security parameter (bit length of q)")->check(CLI::Range(3u, 4096u));
  app->add_option("--seed", c.seed, "RNG seed (random and printed when omitted)");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--out", c.out, "Output path");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Encrypted FRIT gain tuning over ElGamal"};
  app.name("cfrit");
  app.require_subcommand(1);

  Common c;
  std::string mode = "cfrit";
  bool fresh = false, linear = false, full = false;

  auto* keygen = app.add_subcommand("keygen", "Generate an ElGamal key pair");
  add_common(keygen, c, false);

  auto* tune = app.add_subcommand("tune", "Tune the gain in plaintext (frit) or encrypted (cfrit)");
  add_common(tune, c, true);
  tune->add_option("--mode", mode, "frit or cfrit")->check(CLI::IsMember({"frit", "cfrit"}));
  tune->add_flag("--injected-norms", c.injected_norms, "Design with the scenario's injected norms");
  tune->add_flag("--fresh", fresh, "Encrypt every factor of every term afresh");
  tune->add_flag("--reproducible", c.reproducible, "Zero timings and omit the timestamp");

  auto* sw = app.add_subcommand("sweep", "Classify a (kappa, gamma) grid");
  add_common(sw, c, true);
  sw->add_flag("--grid-linear", linear, "Linearly spaced gamma values");
  sw->add_flag("--full-grid", full, "kappa 250..300 step 1 with 51 gamma values");
  sw->add_flag("--reproducible", c.reproducible, "Zero timings and omit the timestamp");

  auto* verify = app.add_subcommand("verify", "Run the built-in consistency checks");
  add_common(verify, c, false);

  auto* des = app.add_subcommand("design", "Choose (gamma, kappa) without running encryption");
  add_common(des, c, true);
  des->add_flag("--injected-norms", c.injected_norms, "Use the scenario's injected norms");
  des->add_flag("--reproducible", c.reproducible, "Omit the timestamp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (keygen->parsed()) return cmd_keygen(c, out, err);
    if (tune->parsed()) return cmd_tune(c, mode, fresh, out, err);
    if (sw->parsed()) return cmd_sweep(c, linear, full, out, err);
    if (verify->parsed()) return cmd_verify(c, out, err);
    if (des->parsed()) return cmd_design(c, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace cfrit::cli
