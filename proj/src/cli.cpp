#include "isac/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "isac/experiments.hpp"
#include "isac/parallel.hpp"
#include "isac/units.hpp"

namespace isac::cli {

namespace {

namespace fs = std::filesystem;

std::string utc_stamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
  return buf;
}

// Append-only output naming: <experiment>_<timestamp>.csv, bumping a counter
// instead of ever overwriting.
struct OutPaths {
  fs::path csv;
  fs::path manifest;
};

OutPaths reserve_paths(const std::string& out_dir, const std::string& experiment) {
  fs::create_directories(out_dir);
  const std::string stamp = utc_stamp();
  for (int k = 0; k < 10000; ++k) {
    std::string base = experiment + "_" + stamp;
    if (k > 0) base += "_" + std::to_string(k);
    OutPaths p{fs::path(out_dir) / (base + ".csv"),
               fs::path(out_dir) / (base + ".manifest.json")};
    if (!fs::exists(p.csv) && !fs::exists(p.manifest)) return p;
  }
  fail("unit out of range", "cannot allocate an unused output name");
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    // from:step:to, inclusive of the endpoint when it lands on the grid
    double from = 0, step = 0, to = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &from, &step, &to) != 3 ||
        step <= 0)
      fail("unit out of range", "sweep range must be from:step:to");
    for (double v = from; v <= to + step * 1e-9; v += step) out.push_back(v);
    return out;
  }
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> v;
  for (int db = 0; db <= 80; ++db) v.push_back(db);
  return v;
}

nlohmann::json base_manifest(const RunConfig& rc, int trials) {
  nlohmann::json m;
  m["experiment"] = rc.experiment;
  m["seed"] = rc.seed;
  m["trials"] = trials;
  m["workers"] = rc.workers;
  m["include_rr"] = rc.include_rr;
  m["dinkelbach_variant"] =
      rc.dinkelbach.truncated_rule ? "truncated" : "linearized";
  m["config"] = nlohmann::json::parse(config_json(rc.raw));
  m["config_digest"] = config_digest(rc.raw);
  return m;
}

void write_manifest(const fs::path& path, const nlohmann::json& m) {
  std::ofstream os(path);
  os << m.dump(2) << '\n';
}

SweepSpec make_spec(const RunConfig& rc, int trials) {
  SweepSpec spec;
  spec.variable = rc.sweep_variable;
  spec.values = rc.sweep_values;
  spec.base = rc.raw;
  spec.mc_trials = trials;
  spec.seed = rc.seed;
  spec.workers = rc.workers;
  spec.include_rr = rc.include_rr;
  spec.dinkelbach = rc.dinkelbach;
  return spec;
}

int run_sinr_sweep(const RunConfig& rc) {
  const int trials = rc.trials.value_or(500);
  SweepSpec spec = make_spec(rc, trials);
  if (spec.values.empty()) {
    if (spec.variable != "alpha_max_db")
      fail("missing required field",
           "sweep_values is required when sweep_variable is not alpha_max_db");
    spec.values = default_alpha_grid();
  }
  const SweepResult result = sweep_sensing_sinr(spec);
  const OutPaths paths = reserve_paths(rc.out_dir, rc.experiment);
  {
    std::ofstream os(paths.csv);
    write_sweep_csv(os, result);
  }
  nlohmann::json m = base_manifest(rc, trials);
  m["sweep_variable"] = spec.variable;
  m["sweep_points"] = spec.values.size();
  m["outputs"] = {paths.csv.filename().string()};
  nlohmann::json errs = nlohmann::json::array();
  for (const SweepRow& row : result.rows)
    if (!row.error.empty()) errs.push_back({{"value", row.value}, {"error", row.error}});
  m["row_errors"] = errs;
  write_manifest(paths.manifest, m);
  std::cout << "sinr-sweep: " << result.rows.size() << " rows -> "
            << paths.csv.string() << '\n';
  return 0;
}

int run_activation(const RunConfig& rc) {
  SweepSpec spec = make_spec(rc, 0);
  if (spec.values.empty()) spec.values = default_alpha_grid();
  const auto rows = activation_threshold(spec);
  const OutPaths paths = reserve_paths(rc.out_dir, rc.experiment);
  {
    std::ofstream os(paths.csv);
    write_activation_csv(os, rows);
  }
  nlohmann::json m = base_manifest(rc, 0);
  m["outputs"] = {paths.csv.filename().string()};
  write_manifest(paths.manifest, m);
  std::cout << "activation: " << rows.size() << " rows -> "
            << paths.csv.string() << '\n';
  return 0;
}

int run_roc(const RunConfig& rc) {
  const int trials = rc.trials.value_or(5000);
  const SweepSpec spec = make_spec(rc, trials);
  const auto set = roc_experiment(spec);
  const OutPaths paths = reserve_paths(rc.out_dir, rc.experiment);
  {
    std::ofstream os(paths.csv);
    write_roc_set_csv(os, set);
  }
  nlohmann::json m = base_manifest(rc, trials);
  nlohmann::json curves = nlohmann::json::array();
  for (const RocSetEntry& entry : set)
    curves.push_back({{"n_repeaters", entry.n_repeaters},
                      {"alpha_max_db", entry.alpha_max_db},
                      {"points", entry.curve.thresholds.size()}});
  m["curves"] = curves;
  m["outputs"] = {paths.csv.filename().string()};
  write_manifest(paths.manifest, m);
  std::cout << "roc: " << set.size() << " curves -> " << paths.csv.string()
            << '\n';
  return 0;
}

int run_optimize_once(const RunConfig& rc) {
  const Scenario s = to_scenario(rc.raw);
  const Layout lay = build_layout(s);
  const OptimizerResult opt = optimize(s, lay, rc.dinkelbach);

  std::cout.precision(10);
  std::cout << "power split: rho_s=" << opt.power.rho_s
            << " W, rho_c=" << opt.power.rho_c << " W\n"
            << "lambda_star=" << opt.lambda_star
            << "  gamma_s=" << lin_to_db(opt.gamma_s) << " dB"
            << "  gamma_ue=" << lin_to_db(opt.gamma_ue) << " dB\n"
            << "iterations=" << opt.iterations
            << " converged=" << (opt.converged ? "yes" : "no") << '\n';
  std::cout << "alpha =";
  for (Eigen::Index n = 0; n < opt.alpha.size(); ++n)
    std::cout << ' ' << opt.alpha[n];
  std::cout << "\nactive_set (" << opt.active_set.size() << "):";
  for (const int n : opt.active_set) std::cout << ' ' << n;
  std::cout << '\n';

  const OutPaths paths = reserve_paths(rc.out_dir, rc.experiment);
  {
    std::ofstream os(paths.csv);
    os.precision(17);
    os << "rho_s_w,rho_c_w,lambda_star,gamma_s_db,gamma_ue_db,active_count,"
          "iterations,converged\n"
       << opt.power.rho_s << ',' << opt.power.rho_c << ',' << opt.lambda_star
       << ',' << lin_to_db(opt.gamma_s) << ',' << lin_to_db(opt.gamma_ue)
       << ',' << opt.active_set.size() << ',' << opt.iterations << ','
       << (opt.converged ? 1 : 0) << '\n';
  }
  nlohmann::json m = base_manifest(rc, 0);
  m["alpha"] = std::vector<double>(opt.alpha.data(),
                                   opt.alpha.data() + opt.alpha.size());
  m["active_set"] = opt.active_set;
  m["residuals"] = opt.residuals;
  m["outputs"] = {paths.csv.filename().string()};
  write_manifest(paths.manifest, m);
  return 0;
}

int run_validate_sinr(const RunConfig& rc) {
  const int trials = rc.trials.value_or(2000);
  const Scenario s = to_scenario(rc.raw);
  const Layout lay = build_layout(s);
  const OptimizerResult opt = optimize(s, lay, rc.dinkelbach);
  const SinrReport rep = build_sinr_report(s, lay, opt.power, opt.alpha,
                                           trials, rc.seed, rc.workers);

  std::cout.precision(6);
  std::cout << "gamma_s closed form:    " << lin_to_db(rep.gamma_s_approx)
            << " dB\n"
            << "gamma_s MC (no loop):   " << lin_to_db(rep.gamma_s_norr)
            << " dB  (stderr " << rep.mc_stderr << ", trials " << trials
            << ")\n"
            << "self-loop mean power:   " << rep.norr_detail.mean_self_loop
            << " W (dropped by the closed form)\n"
            << "MC excluding self-loop: "
            << lin_to_db(rep.norr_detail.estimate_excluding_self_loop)
            << " dB\n"
            << "user SINR closed/MC:    " << lin_to_db(rep.gamma_ue_closed)
            << " / " << lin_to_db(rep.norr_detail.user_sinr_mc) << " dB\n"
            << "coupling radius:        " << rep.stability.spectral_radius
            << (rep.stability.stable ? " (stable)" : " (unstable)") << '\n';
  if (rep.gamma_s_full)
    std::cout << "gamma_s MC (coupled):   " << lin_to_db(*rep.gamma_s_full)
              << " dB\n";

  const OutPaths paths = reserve_paths(rc.out_dir, rc.experiment);
  {
    std::ofstream os(paths.csv);
    os.precision(17);
    os << "gamma_ue_closed_db,gamma_s_approx_db,gamma_s_mc_db,mc_stderr,"
          "mean_self_loop_w,gamma_s_mc_excl_loop_db,user_sinr_mc_db,"
          "coupling_radius,gamma_s_full_db,trials\n";
    os << lin_to_db(rep.gamma_ue_closed) << ','
       << lin_to_db(rep.gamma_s_approx) << ',' << lin_to_db(rep.gamma_s_norr)
       << ',' << rep.mc_stderr << ',' << rep.norr_detail.mean_self_loop << ','
       << lin_to_db(rep.norr_detail.estimate_excluding_self_loop) << ','
       << lin_to_db(rep.norr_detail.user_sinr_mc) << ','
       << rep.stability.spectral_radius << ',';
    if (rep.gamma_s_full) os << lin_to_db(*rep.gamma_s_full);
    os << ',' << trials << '\n';
  }
  nlohmann::json m = base_manifest(rc, trials);
  m["outputs"] = {paths.csv.filename().string()};
  write_manifest(paths.manifest, m);
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
  RunConfig rc;
  std::string config_path;
  std::vector<std::string> sets;
  std::string variant = "linearized";

  CLI::App app{"swarm-repeater ISAC simulator"};
  app.name("isacsim");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--experiment", rc.experiment,
                 "sinr-sweep | activation | roc | optimize-once | validate-sinr");
  app.add_option("--set", sets, "KEY=VALUE override (repeatable)");
  app.add_option("--seed", rc.seed, "master RNG seed");
  int trials = -1;
  app.add_option("--trials", trials, "MC trials (per-experiment default)");
  app.add_option("--out", rc.out_dir, "output directory");
  app.add_option("--workers", rc.workers, "worker threads (0 = cores)");
  app.add_flag("--include-rr", rc.include_rr,
               "resolve the inter-repeater coupling exactly");
  app.add_option("--dinkelbach-variant", variant, "linearized | truncated");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return 0;
    std::cerr << R"({"error":"unit out of range","detail":"bad command line"})"
              << '\n';
    return 1;
  }

  try {
    if (variant == "truncated") rc.dinkelbach.truncated_rule = true;
    else if (variant != "linearized")
      fail("unit out of range", "dinkelbach-variant must be linearized or truncated");
    if (trials >= 0) rc.trials = trials;
    if (rc.workers <= 0) rc.workers = default_workers();

    if (!config_path.empty()) rc.raw = parse_config_file(config_path);
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        fail("missing required field", "--set needs KEY=VALUE, got " + kv);
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if (key == "sweep_variable") rc.sweep_variable = value;
      else if (key == "sweep_values") rc.sweep_values = parse_values(value);
      else apply_set(rc.raw, key, value);
    }

    if (rc.experiment == "sinr-sweep") return run_sinr_sweep(rc);
    if (rc.experiment == "activation") return run_activation(rc);
    if (rc.experiment == "roc") return run_roc(rc);
    if (rc.experiment == "optimize-once") return run_optimize_once(rc);
    if (rc.experiment == "validate-sinr") return run_validate_sinr(rc);
    fail("unknown experiment", rc.experiment);
  } catch (const Error& e) {
    nlohmann::json rec{{"error", e.code()}, {"detail", e.what()}};
    std::cerr << rec.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json rec{{"error", "internal"}, {"detail", e.what()}};
    std::cerr << rec.dump() << '\n';
    return 2;
  }
  return 0;
}

} // namespace isac::cli
