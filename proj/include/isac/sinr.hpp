#pragma once

#include <cstdint>
#include <optional>

#include "isac/signal.hpp"

namespace isac {

// gamma_UE = rho_c M beta_AU / (rho_s beta_AU + sigma_UE^2). Charges the
// user the full sensing power even though the shipped precoder nulls the
// user-side leakage exactly; the power split is solved against this form,
// so the measured user SINR (McSensingEstimate::user_sinr_mc) runs higher.
double user_sinr_closed(const Scenario& s, const PowerSplit& pw);

// (beta_AD + sum t_n beta_An beta_ADn) / (sigma_r^2 sum t_n beta_An +
// sigma_AP^2), the linear-fractional core shared by the closed form and the
// gain optimizer. t = alpha squared elementwise.
double sensing_gain_ratio(const PathGains& g, double noise_r, double noise_ap,
                          const Vec& t);

// Closed-form sensing SINR approximation: (rho_s M + rho_c)
// times the ratio above, with path gains taken at the Swerling-1 mean RCS.
// Drops the AP->repeater->AP self-loop entirely.
double sensing_sinr_approx(const Scenario& s, const PathGains& g,
                           const PowerSplit& pw, const Vec& alpha);

struct McSensingEstimate {
  double estimate = 0.0;   // mean ||useful||^2 over mean ||interference||^2
  double stderr_ = 0.0;    // delta-method standard error of the ratio
  int trials = 0;
  double mean_useful = 0.0;
  double mean_interference = 0.0;
  // the term the closed form drops, measured: mean ||self loop||^2 and the
  // estimate recomputed with that component removed from the interference
  double mean_self_loop = 0.0;
  double estimate_excluding_self_loop = 0.0;
  // measured comm SINR (noise expectation taken analytically), and the
  // worst sensing-beam leakage into the user channel seen across trials
  double user_sinr_mc = 0.0;
  double max_null_leakage = 0.0;
};

// Monte-Carlo sensing SINR: fresh Swerling draw, user channel, symbols and
// noises each trial; signal is the drone echo plus the forwarded drone
// bounce, everything else is interference. include_rr picks the exact
// coupling resolve (throws "unstable repeater loop" beyond the stability
// bound) versus the decoupled model. Per-trial RNG substreams make the
// result independent of `workers` and bitwise reproducible for a seed.
McSensingEstimate sensing_sinr_mc(const Scenario& s, const Layout& lay,
                                  const PowerSplit& pw, const Vec& alpha,
                                  bool include_rr, int trials,
                                  std::uint64_t seed, int workers = 1);

// Aggregated view used by the validate-sinr experiment. gamma_s_full is the
// coupled-loop estimate and is absent when the loop is unstable at this
// gain vector.
struct SinrReport {
  double gamma_ue_closed = 0.0;
  std::optional<double> gamma_s_full;
  double gamma_s_norr = 0.0;
  double gamma_s_approx = 0.0;
  int mc_trials = 0;
  double mc_stderr = 0.0;
  McSensingEstimate norr_detail;
  std::optional<McSensingEstimate> full_detail;
  StabilityReport stability;
};

SinrReport build_sinr_report(const Scenario& s, const Layout& lay,
                             const PowerSplit& pw, const Vec& alpha,
                             int trials, std::uint64_t seed, int workers = 1);

} // namespace isac
