#include "isac/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "isac/parallel.hpp"
#include "isac/units.hpp"

namespace isac {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_ms(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start)
      .count();
}

void check_values(const std::vector<double>& values) {
  if (values.empty())
    fail("unit out of range", "sweep values must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] <= values[i - 1])
      fail("unit out of range", "sweep values must be strictly increasing");
}

// A bad variable name poisons every row the same way, so it is rejected
// before any row runs rather than recorded per row.
void check_variable(const std::string& variable) {
  if (variable != "alpha_max_db" && variable != "N" && variable != "l_AD")
    fail("unknown key", "sweep variable " + variable);
}

RawConfig with_value(const SweepSpec& spec, double value) {
  RawConfig raw = spec.base;
  if (spec.variable == "alpha_max_db") {
    raw.alpha_max_db = value;
  } else if (spec.variable == "N") {
    const int n = static_cast<int>(value);
    if (static_cast<double>(n) != value)
      fail("unit out of range", "N sweep values must be integers");
    raw.N = n;
  } else if (spec.variable == "l_AD") {
    raw.l_ad_m = value;
  } else {
    fail("unknown key", "sweep variable " + spec.variable);
  }
  return raw;
}

std::string describe(const Error& e) { return e.what(); }

void csv_quoted(std::ostream& os, const std::string& text) {
  os << '"';
  for (const char c : text) {
    if (c == '"') os << "\"\"";
    else os << c;
  }
  os << '"';
}

} // namespace

SweepResult sweep_sensing_sinr(const SweepSpec& spec) {
  check_variable(spec.variable);
  check_values(spec.values);
  SweepResult result;
  result.variable = spec.variable;
  result.rows.resize(spec.values.size());
  parallel_for(spec.values.size(), spec.workers, [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.value = spec.values[i];
    const auto start = clock_type::now();
    try {
      const Scenario s = to_scenario(with_value(spec, row.value));
      const Layout lay = build_layout(s);
      const OptimizerResult opt = optimize(s, lay, spec.dinkelbach);
      const McSensingEstimate mc =
          sensing_sinr_mc(s, lay, opt.power, opt.alpha, spec.include_rr,
                          spec.mc_trials, spec.seed, 1);
      row.gamma_s_approx_db = lin_to_db(opt.gamma_s);
      row.gamma_s_mc_db = lin_to_db(mc.estimate);
      row.mc_stderr = mc.stderr_;
      row.active_count = static_cast<int>(opt.active_set.size());
      row.lambda_star = opt.lambda_star;
    } catch (const Error& e) {
      row.error = describe(e);
    }
    row.runtime_ms = elapsed_ms(start);
  });
  return result;
}

std::vector<ActivationRow> activation_threshold(const SweepSpec& spec) {
  check_values(spec.values);
  std::vector<ActivationRow> rows(spec.values.size());
  parallel_for(spec.values.size(), spec.workers, [&](std::size_t i) {
    ActivationRow& row = rows[i];
    row.alpha_max_db = spec.values[i];
    const auto start = clock_type::now();
    try {
      RawConfig raw = spec.base;
      raw.alpha_max_db = row.alpha_max_db;
      const Scenario s = to_scenario(raw);
      const Layout lay = build_layout(s);
      row.n_repeaters = s.N;
      if (s.N == 0) {
        row.applicable = false;
      } else {
        const OptimizerResult opt = optimize(s, lay, spec.dinkelbach);
        row.active_count = static_cast<int>(opt.active_set.size());
        row.fraction = static_cast<double>(row.active_count) / s.N;
      }
    } catch (const Error& e) {
      row.error = describe(e);
    }
    row.runtime_ms = elapsed_ms(start);
  });
  return rows;
}

std::vector<RocSetEntry> roc_experiment(const SweepSpec& spec) {
  std::vector<int> counts;
  counts.push_back(0);
  if (spec.base.N > 0) {
    counts.push_back(spec.base.N);
    counts.push_back(2 * spec.base.N);
  }
  std::vector<RocSetEntry> set(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    RawConfig raw = spec.base;
    raw.N = counts[i];
    const Scenario s = to_scenario(raw);
    const Layout lay = build_layout(s);
    const OptimizerResult opt = optimize(s, lay, spec.dinkelbach);
    const HypothesisSamples samples =
        run_hypothesis_mc(s, lay, opt.power, opt.alpha, spec.include_rr,
                          spec.mc_trials, spec.seed, spec.workers);
    set[i].n_repeaters = counts[i];
    set[i].alpha_max_db = spec.base.alpha_max_db;
    set[i].curve = build_roc(samples);
  }
  return set;
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os.precision(17);
  os << result.variable
     << ",gamma_s_approx_db,gamma_s_mc_db,mc_stderr,active_count,lambda_star,"
        "runtime_ms,error\n";
  for (const SweepRow& row : result.rows) {
    os << row.value << ',';
    if (row.error.empty())
      os << row.gamma_s_approx_db << ',' << row.gamma_s_mc_db << ','
         << row.mc_stderr << ',' << row.active_count << ',' << row.lambda_star;
    else
      os << ",,,,";
    os << ',' << row.runtime_ms << ',';
    csv_quoted(os, row.error);
    os << '\n';
  }
}

void write_activation_csv(std::ostream& os,
                          const std::vector<ActivationRow>& rows) {
  os.precision(17);
  os << "alpha_max_db,fraction_at_full_gain,active_count,n_repeaters,"
        "runtime_ms,error\n";
  for (const ActivationRow& row : rows) {
    os << row.alpha_max_db << ',';
    if (!row.error.empty()) os << ",,";
    else if (!row.applicable) os << "n/a,0,0";
    else
      os << row.fraction << ',' << row.active_count << ',' << row.n_repeaters;
    os << ',' << row.runtime_ms << ',';
    csv_quoted(os, row.error);
    os << '\n';
  }
}

void write_roc_set_csv(std::ostream& os, const std::vector<RocSetEntry>& set) {
  os.precision(17);
  os << "n_repeaters,alpha_max_db,threshold,p_fa,p_d\n";
  for (const RocSetEntry& entry : set) {
    for (Eigen::Index i = 0; i < entry.curve.thresholds.size(); ++i)
      os << entry.n_repeaters << ',' << entry.alpha_max_db << ','
         << entry.curve.thresholds[i] << ',' << entry.curve.p_fa[i] << ','
         << entry.curve.p_d[i] << '\n';
  }
}

} // namespace isac
