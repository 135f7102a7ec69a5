#include "isac/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isac/units.hpp"

namespace isac {

Scenario to_scenario(const RawConfig& raw) {
  Scenario s;
  s.M = raw.M;
  s.N = raw.N;
  s.f_c = raw.f_c_hz;
  s.l_AD = raw.l_ad_m;
  s.l_AU = raw.l_au_m;
  s.l_A1 = raw.l_a1_m;
  s.spacing = raw.d_m ? *raw.d_m : (raw.N > 0 ? 400.0 / raw.N : 0.0);
  s.theta = raw.theta_rad;
  s.rcs_mean = dbsm_to_sqm(raw.rcs_dbsm);
  s.noise_r = dbm_to_watt(raw.noise_r_dbm);
  s.noise_ap = dbm_to_watt(raw.noise_ap_dbm);
  s.noise_ue = dbm_to_watt(raw.noise_ue_dbm);
  s.ue_sinr_req = db_to_lin(raw.ue_sinr_req_db);
  s.power_budget = dbm_to_watt(raw.rho_max_dbm);
  if (raw.alpha_db_scale == "power")
    s.alpha_max = db_to_amplitude_power_scale(raw.alpha_max_db);
  else if (raw.alpha_db_scale == "amplitude")
    s.alpha_max = db_to_amplitude_field_scale(raw.alpha_max_db);
  else
    fail("unit out of range",
         "alpha_db_scale must be \"power\" or \"amplitude\", got \"" +
             raw.alpha_db_scale + "\"");
  validate(s);
  return s;
}

namespace {

double parse_number(const std::string& key, const std::string& value) {
  if (value.empty()) fail("missing required field", key + " has no value");
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    fail("unit out of range", key + ": cannot parse \"" + value + "\"");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const double d = parse_number(key, value);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    fail("unit out of range", key + " must be an integer");
  return i;
}

} // namespace

void apply_set(RawConfig& raw, const std::string& key,
               const std::string& value) {
  if (key == "M") raw.M = parse_int(key, value);
  else if (key == "N") raw.N = parse_int(key, value);
  else if (key == "f_c_hz") raw.f_c_hz = parse_number(key, value);
  else if (key == "l_ad_m") raw.l_ad_m = parse_number(key, value);
  else if (key == "l_au_m") raw.l_au_m = parse_number(key, value);
  else if (key == "l_a1_m") raw.l_a1_m = parse_number(key, value);
  else if (key == "d_m") raw.d_m = parse_number(key, value);
  else if (key == "theta_rad") raw.theta_rad = parse_number(key, value);
  else if (key == "rcs_dbsm") raw.rcs_dbsm = parse_number(key, value);
  else if (key == "noise_r_dbm") raw.noise_r_dbm = parse_number(key, value);
  else if (key == "noise_ap_dbm") raw.noise_ap_dbm = parse_number(key, value);
  else if (key == "noise_ue_dbm") raw.noise_ue_dbm = parse_number(key, value);
  else if (key == "ue_sinr_req_db") raw.ue_sinr_req_db = parse_number(key, value);
  else if (key == "rho_max_dbm") raw.rho_max_dbm = parse_number(key, value);
  else if (key == "alpha_max_db") raw.alpha_max_db = parse_number(key, value);
  else if (key == "alpha_db_scale") {
    if (value.empty()) fail("missing required field", key + " has no value");
    raw.alpha_db_scale = value;
  } else {
    fail("unknown key", key);
  }
}

RawConfig parse_config_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail("unit out of range", std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("unit out of range", "config root must be an object");

  RawConfig raw;
  for (const auto& [key, val] : doc.items()) {
    if (val.is_null()) fail("missing required field", key + " is null");
    std::string text;
    if (val.is_string()) text = val.get<std::string>();
    else if (val.is_number() || val.is_boolean()) {
      std::ostringstream os;
      os.precision(17);
      os << val;
      text = os.str();
    } else {
      fail("unit out of range", key + " has unsupported JSON type");
    }
    apply_set(raw, key, text);
  }
  return raw;
}

RawConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("missing required field", "cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

std::string config_json(const RawConfig& raw) {
  nlohmann::json doc;
  doc["M"] = raw.M;
  doc["N"] = raw.N;
  doc["f_c_hz"] = raw.f_c_hz;
  doc["l_ad_m"] = raw.l_ad_m;
  doc["l_au_m"] = raw.l_au_m;
  doc["l_a1_m"] = raw.l_a1_m;
  if (raw.d_m) doc["d_m"] = *raw.d_m;
  doc["theta_rad"] = raw.theta_rad;
  doc["rcs_dbsm"] = raw.rcs_dbsm;
  doc["noise_r_dbm"] = raw.noise_r_dbm;
  doc["noise_ap_dbm"] = raw.noise_ap_dbm;
  doc["noise_ue_dbm"] = raw.noise_ue_dbm;
  doc["ue_sinr_req_db"] = raw.ue_sinr_req_db;
  doc["rho_max_dbm"] = raw.rho_max_dbm;
  doc["alpha_max_db"] = raw.alpha_max_db;
  doc["alpha_db_scale"] = raw.alpha_db_scale;
  return doc.dump(2);
}

std::string config_digest(const RawConfig& raw) {
  // FNV-1a over the canonical rendering; enough to spot config drift
  const std::string text = config_json(raw);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a-%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

} // namespace isac
