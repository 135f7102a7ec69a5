#pragma once

#include <cmath>

namespace isac {

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double dbsm_to_sqm(double dbsm) { return std::pow(10.0, dbsm / 10.0); }

// Amplitude gains are specified in dB. Two readings are in circulation for
// the repeater gain cap; both are supported and the choice is made in the
// config (alpha_db_scale). "power" reads the dB figure on the power scale
// and uses it directly as the amplitude, "amplitude" applies the
// conventional 20*log10 rule.
inline double db_to_amplitude_power_scale(double db) { return std::pow(10.0, db / 10.0); }
inline double db_to_amplitude_field_scale(double db) { return std::pow(10.0, db / 20.0); }

} // namespace isac
