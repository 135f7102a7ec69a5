#include "isac/sinr.hpp"

#include <cmath>

#include "isac/parallel.hpp"
#include "isac/trial.hpp"

namespace isac {

double user_sinr_closed(const Scenario& s, const PowerSplit& pw) {
  const double beta_AU = std::pow(s.wavelength() / (4.0 * kPi * s.l_AU), 2);
  return pw.rho_c * s.M * beta_AU / (pw.rho_s * beta_AU + s.noise_ue);
}

double sensing_gain_ratio(const PathGains& g, double noise_r, double noise_ap,
                          const Vec& t) {
  double num = g.beta_AD;
  double den = noise_ap;
  for (Eigen::Index n = 0; n < t.size(); ++n) {
    num += t[n] * g.beta_An[n] * g.beta_ADn[n];
    den += noise_r * t[n] * g.beta_An[n];
  }
  return num / den;
}

double sensing_sinr_approx(const Scenario& s, const PathGains& g,
                           const PowerSplit& pw, const Vec& alpha) {
  const Vec t = alpha.array().square();
  return (pw.rho_s * s.M + pw.rho_c) *
         sensing_gain_ratio(g, s.noise_r, s.noise_ap, t);
}

namespace {

struct TrialStats {
  double useful = 0.0;
  double interference = 0.0;
  double self_loop = 0.0;
  double interference_no_loop = 0.0;
  double ue_signal = 0.0;
  double ue_interference = 0.0;
  double leakage = 0.0;
};

// Delta-method standard error of mean(u)/mean(v) from paired samples.
double ratio_stderr(const Vec& u, const Vec& v) {
  const auto n = static_cast<double>(u.size());
  if (n < 2) return 0.0;
  const double mu = u.mean();
  const double mv = v.mean();
  const double var_u = (u.array() - mu).square().sum() / (n - 1.0);
  const double var_v = (v.array() - mv).square().sum() / (n - 1.0);
  const double cov =
      ((u.array() - mu) * (v.array() - mv)).sum() / (n - 1.0);
  const double rel2 =
      var_u / (mu * mu) + var_v / (mv * mv) - 2.0 * cov / (mu * mv);
  const double r = mu / mv;
  return std::abs(r) * std::sqrt(std::max(rel2, 0.0) / n);
}

} // namespace

McSensingEstimate sensing_sinr_mc(const Scenario& s, const Layout& lay,
                                  const PowerSplit& pw, const Vec& alpha,
                                  bool include_rr, int trials,
                                  std::uint64_t seed, int workers) {
  if (trials < 100) fail("unit out of range", "mc trials must be >= 100");
  if (include_rr) {
    // fail fast; the per-trial receive would throw the same error anyway
    const auto rep =
        check_stability(realize_channels(s, lay, s.rcs_mean,
                                         CVec::Zero(s.M))
                            .H_RR,
                        alpha);
    if (!rep.stable)
      fail("unstable repeater loop",
           "spectral radius " + std::to_string(rep.spectral_radius));
  }

  std::vector<TrialStats> stats(static_cast<std::size_t>(trials));
  const CVec a_th = steering(s.M, s.theta);
  parallel_for(stats.size(), workers, [&](std::size_t i) {
    Rng rng(seed, i);
    const TrialDraw d = draw_trial(s, rng);
    const TrialResult r = run_trial(s, lay, pw, alpha, include_rr, d);
    TrialStats& st = stats[i];
    st.useful = (r.ap.drone_echo + r.ap.repeater_useful).squaredNorm();
    const CVec noise_only = r.ap.repeater_noise + r.ap.ap_noise;
    st.interference_no_loop = noise_only.squaredNorm();
    st.interference = (r.ap.repeater_self_loop + noise_only).squaredNorm();
    st.self_loop = r.ap.repeater_self_loop.squaredNorm();
    const cplx to_c = d.h_AU.transpose() * r.prec.w_c;
    const cplx to_s = d.h_AU.transpose() * r.prec.w_s;
    st.ue_signal = pw.rho_c * std::norm(to_c);
    st.ue_interference = pw.rho_s * std::norm(to_s) + s.noise_ue;
    st.leakage = std::norm(to_s) / d.h_AU.squaredNorm();
  });

  const auto n = static_cast<Eigen::Index>(trials);
  Vec useful(n), interference(n), loop(n), no_loop(n), ue_s(n), ue_i(n);
  double max_leak = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const TrialStats& st = stats[static_cast<std::size_t>(i)];
    useful[i] = st.useful;
    interference[i] = st.interference;
    loop[i] = st.self_loop;
    no_loop[i] = st.interference_no_loop;
    ue_s[i] = st.ue_signal;
    ue_i[i] = st.ue_interference;
    max_leak = std::max(max_leak, st.leakage);
  }

  McSensingEstimate out;
  out.trials = trials;
  out.mean_useful = useful.mean();
  out.mean_interference = interference.mean();
  out.mean_self_loop = loop.mean();
  out.estimate = out.mean_useful / out.mean_interference;
  out.estimate_excluding_self_loop = out.mean_useful / no_loop.mean();
  out.stderr_ = ratio_stderr(useful, interference);
  out.user_sinr_mc = ue_s.mean() / ue_i.mean();
  out.max_null_leakage = max_leak;
  return out;
}

SinrReport build_sinr_report(const Scenario& s, const Layout& lay,
                             const PowerSplit& pw, const Vec& alpha,
                             int trials, std::uint64_t seed, int workers) {
  SinrReport rep;
  rep.gamma_ue_closed = user_sinr_closed(s, pw);
  rep.gamma_s_approx = sensing_sinr_approx(
      s, path_gains(s, lay, s.rcs_mean), pw, alpha);
  rep.norr_detail =
      sensing_sinr_mc(s, lay, pw, alpha, false, trials, seed, workers);
  rep.gamma_s_norr = rep.norr_detail.estimate;
  rep.mc_trials = trials;
  rep.mc_stderr = rep.norr_detail.stderr_;

  const ChannelSet probe = realize_channels(s, lay, s.rcs_mean, CVec::Zero(s.M));
  rep.stability = check_stability(probe.H_RR, alpha);
  if (rep.stability.stable && s.N > 0) {
    rep.full_detail =
        sensing_sinr_mc(s, lay, pw, alpha, true, trials, seed, workers);
    rep.gamma_s_full = rep.full_detail->estimate;
  }
  return rep;
}

} // namespace isac
