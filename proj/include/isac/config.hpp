#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isac/geometry.hpp"
#include "isac/optimizer.hpp"

namespace isac {

inline constexpr std::uint64_t kDefaultSeed = 12345;

// Flat configuration, dB-domain fields exactly as users write them. This
// is the only place dB exists; to_scenario() is the only conversion.
// alpha_db_scale picks how alpha_max_db becomes an amplitude: "power"
// (10^(dB/10), the default) or "amplitude" (10^(dB/20)).
struct RawConfig {
  int M = 100;
  int N = 50;
  double f_c_hz = 15e9;
  double l_ad_m = 500.0;
  double l_au_m = 100.0;
  double l_a1_m = 250.0;
  std::optional<double> d_m;       // default 400/N
  double theta_rad = kPi / 6.0;
  double rcs_dbsm = -10.0;
  double noise_r_dbm = -124.0;
  double noise_ap_dbm = -110.0;
  double noise_ue_dbm = -110.0;
  double ue_sinr_req_db = 15.0;
  double rho_max_dbm = 33.0;
  double alpha_max_db = 60.0;
  std::string alpha_db_scale = "power";
};

Scenario to_scenario(const RawConfig& raw);

// JSON object with RawConfig keys; unknown keys rejected, null values are
// "missing required field". Both accept a subset; absent keys keep defaults.
RawConfig parse_config_json(const std::string& json_text);
RawConfig parse_config_file(const std::string& path);

// KEY=VALUE override, same key set as the JSON file.
void apply_set(RawConfig& raw, const std::string& key, const std::string& value);

// Canonical JSON rendering of a config (sorted keys) and a short digest of
// it for manifests.
std::string config_json(const RawConfig& raw);
std::string config_digest(const RawConfig& raw);

struct RunConfig {
  RawConfig raw;
  std::string experiment = "validate-sinr";
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> trials;       // per-experiment default when unset
  std::string out_dir = "out";
  int workers = 0;                 // 0 = available cores
  bool include_rr = false;
  DinkelbachOptions dinkelbach;
  // sweep controls (sinr-sweep and activation): variable plus either an
  // explicit value list or from/step/to
  std::string sweep_variable = "alpha_max_db";
  std::vector<double> sweep_values;
};

} // namespace isac
