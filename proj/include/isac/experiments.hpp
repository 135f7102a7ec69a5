#pragma once

#include <iosfwd>

#include "isac/config.hpp"
#include "isac/detection.hpp"

namespace isac {

// One experiment run: a base configuration (dB domain, so each row passes
// through the same conversion boundary as user input), the quantity to vary,
// and MC controls. Rows may run in parallel; results are keyed by row index
// and fully determined by (seed, row config).
struct SweepSpec {
  std::string variable = "alpha_max_db";  // alpha_max_db | N | l_AD
  std::vector<double> values;
  RawConfig base;
  int mc_trials = 500;
  std::uint64_t seed = kDefaultSeed;
  int workers = 1;
  bool include_rr = false;
  DinkelbachOptions dinkelbach;
};

struct SweepRow {
  double value = 0.0;
  double gamma_s_approx_db = 0.0;
  double gamma_s_mc_db = 0.0;
  double mc_stderr = 0.0;   // linear scale
  int active_count = 0;
  double lambda_star = 0.0;
  double runtime_ms = 0.0;
  std::string error;        // empty on success; failed rows keep their slot
};

struct SweepResult {
  std::string variable;
  std::vector<SweepRow> rows;
};

// Per value: rebuild scenario and layout, optimize gains and power, then
// evaluate the closed form and the MC estimator at the optimum.
SweepResult sweep_sensing_sinr(const SweepSpec& spec);

struct ActivationRow {
  double alpha_max_db = 0.0;
  double fraction = 0.0;    // |active_set| / N; meaningless when !applicable
  int active_count = 0;
  int n_repeaters = 0;
  bool applicable = true;   // false for N = 0 (printed as n/a)
  double runtime_ms = 0.0;
  std::string error;
};

// values are alpha_max_db points regardless of spec.variable.
std::vector<ActivationRow> activation_threshold(const SweepSpec& spec);

struct RocSetEntry {
  int n_repeaters = 0;
  double alpha_max_db = 0.0;
  RocCurve curve;
};

// Detection curves for repeater counts {0, N, 2N} at the base alpha_max,
// each with optimized gains; a shared seed keeps the curves CRN-paired.
std::vector<RocSetEntry> roc_experiment(const SweepSpec& spec);

void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_activation_csv(std::ostream& os,
                          const std::vector<ActivationRow>& rows);
void write_roc_set_csv(std::ostream& os, const std::vector<RocSetEntry>& set);

} // namespace isac
