#include "isac/optimizer.hpp"

#include <bit>
#include <cmath>

namespace isac {

PowerSplit power_split(const Scenario& s) {
  const double beta_AU = std::pow(s.wavelength() / (4.0 * kPi * s.l_AU), 2);
  const double a = s.ue_sinr_req / s.M;
  const double b = s.ue_sinr_req * s.noise_ue / (s.M * beta_AU);
  if (s.power_budget < b)
    fail("infeasible UE requirement",
         "budget " + std::to_string(s.power_budget) + " W < required " +
             std::to_string(b) + " W");
  PowerSplit pw;
  pw.rho_c = (a * s.power_budget + b) / (1.0 + a);
  pw.rho_s = s.power_budget - pw.rho_c;
  return pw;
}

namespace {

struct Ratio {
  double num;
  double den;
};

Ratio eval_ratio(const PathGains& g, double noise_r, double noise_ap,
                 const Vec& t) {
  Ratio r{g.beta_AD, noise_ap};
  for (Eigen::Index n = 0; n < t.size(); ++n) {
    r.num += t[n] * g.beta_An[n] * g.beta_ADn[n];
    r.den += noise_r * t[n] * g.beta_An[n];
  }
  return r;
}

} // namespace

OptimizerResult dinkelbach(const Scenario& s, const PathGains& g,
                           const PowerSplit& pw, const DinkelbachOptions& opts) {
  if (opts.tol <= 0) fail("unit out of range", "tol must be positive");
  const auto N = g.beta_An.size();
  const double t_max = s.alpha_max * s.alpha_max;

  OptimizerResult res;
  res.power = pw;
  res.t = Vec::Zero(N);

  double lam = g.beta_AD / s.noise_ap;
  for (int k = 1; k <= opts.max_iter; ++k) {
    res.iterations = k;
    for (Eigen::Index n = 0; n < N; ++n) {
      const bool on = opts.truncated_rule
                          ? g.beta_An[n] * g.beta_ADn[n] > lam * g.beta_An[n]
                          : g.beta_An[n] * g.beta_ADn[n] >
                                lam * s.noise_r * g.beta_An[n];
      res.t[n] = on ? t_max : 0.0;
    }
    const Ratio r = eval_ratio(g, s.noise_r, s.noise_ap, res.t);
    const double residual = r.num - lam * r.den;
    res.residuals.push_back(residual);
    const double lam_next = r.num / r.den;
    if (!opts.truncated_rule && lam_next < lam)
      fail("internal", "Dinkelbach ratio decreased");
    const bool small_residual =
        residual <= opts.tol * std::max(1.0, lam * r.den);
    const bool fixed_point =
        std::abs(lam_next - lam) <= opts.tol * std::max(lam_next, 1e-300);
    lam = lam_next;
    if (small_residual && fixed_point) {
      res.converged = true;
      break;
    }
  }

  res.lambda_star = lam;
  res.alpha = res.t.array().sqrt();
  for (Eigen::Index n = 0; n < N; ++n)
    if (res.t[n] > 0.0) res.active_set.push_back(static_cast<int>(n));
  res.gamma_s = (pw.rho_s * s.M + pw.rho_c) * lam;
  return res;
}

std::pair<Vec, double> brute_force_oracle(const Scenario& s, const PathGains& g,
                                          const PowerSplit& pw) {
  const auto N = g.beta_An.size();
  if (N > 20) fail("unit out of range", "brute force oracle limited to N <= 20");
  const double t_max = s.alpha_max * s.alpha_max;
  const double scale = pw.rho_s * s.M + pw.rho_c;

  Vec best_t = Vec::Zero(N);
  double best_v = -1.0;
  int best_pop = 0;
  Vec t(N);
  for (std::uint64_t mask = 0; mask < (1ULL << N); ++mask) {
    for (Eigen::Index n = 0; n < N; ++n)
      t[n] = (mask >> n) & 1ULL ? t_max : 0.0;
    const Ratio r = eval_ratio(g, s.noise_r, s.noise_ap, t);
    const double v = scale * r.num / r.den;
    const int pop = std::popcount(mask);
    if (v > best_v || (v == best_v && pop < best_pop)) {
      best_v = v;
      best_t = t;
      best_pop = pop;
    }
  }
  return {best_t, best_v};
}

OptimizerResult optimize(const Scenario& s, const Layout& lay,
                         const DinkelbachOptions& opts) {
  const PowerSplit pw = power_split(s);
  const PathGains g = path_gains(s, lay, s.rcs_mean);
  OptimizerResult res = dinkelbach(s, g, pw, opts);
  res.gamma_ue = user_sinr_closed(s, res.power);

  const double t_max = s.alpha_max * s.alpha_max;
  for (Eigen::Index n = 0; n < res.t.size(); ++n)
    if (res.t[n] < 0.0 || res.t[n] > t_max)
      fail("internal", "gain bound violated");
  if (res.gamma_ue < s.ue_sinr_req * (1.0 - 1e-9))
    fail("internal", "UE constraint violated at optimum");
  if (res.power.total() > s.power_budget * (1.0 + 1e-12))
    fail("internal", "power budget violated at optimum");
  return res;
}

} // namespace isac
