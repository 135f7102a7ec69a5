#include "isac/detection.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <vector>

#include "isac/parallel.hpp"
#include "isac/trial.hpp"

namespace isac {

HypothesisSamples run_hypothesis_mc(const Scenario& s, const Layout& lay,
                                    const PowerSplit& pw, const Vec& alpha,
                                    bool include_rr, int trials,
                                    std::uint64_t seed, int workers) {
  if (trials < 1) fail("unit out of range", "trials must be >= 1");
  HypothesisSamples out;
  out.seed = seed;
  out.t_h1.resize(trials);
  out.t_h0.resize(trials);
  const CVec v = combiner(s.M, s.theta);
  parallel_for(static_cast<std::size_t>(trials), workers, [&](std::size_t i) {
    Rng rng(seed, i);
    const TrialDraw d = draw_trial(s, rng);
    const TrialResult r = run_trial(s, lay, pw, alpha, include_rr, d);
    const CVec y1 = r.ap.total();
    const CVec y0 = y1 - r.ap.drone_echo - r.ap.repeater_useful;
    const auto idx = static_cast<Eigen::Index>(i);
    out.t_h1[idx] = std::norm(v.dot(y1));
    out.t_h0[idx] = std::norm(v.dot(y0));
  });
  return out;
}

namespace {

double frac_above(const std::vector<double>& sorted, double tau) {
  const auto it = std::upper_bound(sorted.begin(), sorted.end(), tau);
  return static_cast<double>(sorted.end() - it) /
         static_cast<double>(sorted.size());
}

} // namespace

RocCurve build_roc(const HypothesisSamples& samples, int grid_size) {
  if (samples.t_h1.size() == 0 || samples.t_h0.size() == 0)
    fail("unit out of range", "empty hypothesis samples");
  if (grid_size < 2) fail("unit out of range", "grid_size must be >= 2");

  std::vector<double> pooled;
  pooled.reserve(samples.t_h1.size() + samples.t_h0.size());
  for (Eigen::Index i = 0; i < samples.t_h1.size(); ++i)
    pooled.push_back(samples.t_h1[i]);
  for (Eigen::Index i = 0; i < samples.t_h0.size(); ++i)
    pooled.push_back(samples.t_h0[i]);
  std::sort(pooled.begin(), pooled.end());

  std::vector<double> taus;
  taus.reserve(2 * grid_size + 2);
  const auto P = pooled.size();
  for (int k = 0; k < grid_size; ++k) {
    const std::size_t idx =
        static_cast<std::size_t>(static_cast<double>(k) /
                                 (grid_size - 1) * static_cast<double>(P - 1));
    taus.push_back(pooled[idx]);
  }
  const double lo = pooled.front();
  const double hi = pooled.back();
  for (int k = 0; k < grid_size; ++k)
    taus.push_back(lo + (hi - lo) * k / (grid_size - 1));
  taus.push_back(0.0);
  taus.push_back(hi * (1.0 + 1e-9) + std::numeric_limits<double>::min());
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  std::vector<double> h1(samples.t_h1.data(),
                         samples.t_h1.data() + samples.t_h1.size());
  std::vector<double> h0(samples.t_h0.data(),
                         samples.t_h0.data() + samples.t_h0.size());
  std::sort(h1.begin(), h1.end());
  std::sort(h0.begin(), h0.end());

  RocCurve roc;
  roc.trials = static_cast<int>(samples.t_h1.size());
  roc.seed = samples.seed;
  roc.thresholds.resize(static_cast<Eigen::Index>(taus.size()));
  roc.p_fa.resize(roc.thresholds.size());
  roc.p_d.resize(roc.thresholds.size());
  for (Eigen::Index i = 0; i < roc.thresholds.size(); ++i) {
    const double tau = taus[static_cast<std::size_t>(i)];
    roc.thresholds[i] = tau;
    roc.p_fa[i] = frac_above(h0, tau);
    roc.p_d[i] = frac_above(h1, tau);
  }
  return roc;
}

double pd_at_pfa(const RocCurve& roc, double pfa) {
  // p_fa decreases along the curve; walk it from the high-threshold end so
  // the abscissa is increasing for interpolation
  const Eigen::Index n = roc.thresholds.size();
  if (n == 0) fail("unit out of range", "empty ROC");
  double prev_x = roc.p_fa[n - 1];
  double prev_y = roc.p_d[n - 1];
  if (pfa <= prev_x) return prev_y;
  for (Eigen::Index i = n - 2; i >= 0; --i) {
    const double x = roc.p_fa[i];
    const double y = roc.p_d[i];
    if (pfa <= x) {
      if (x == prev_x) return std::max(y, prev_y);
      const double w = (pfa - prev_x) / (x - prev_x);
      return prev_y + w * (y - prev_y);
    }
    prev_x = x;
    prev_y = y;
  }
  return roc.p_d[0];
}

void write_roc_csv(std::ostream& os, const RocCurve& roc) {
  os << "threshold,p_fa,p_d\n";
  os.precision(17);
  for (Eigen::Index i = 0; i < roc.thresholds.size(); ++i)
    os << roc.thresholds[i] << ',' << roc.p_fa[i] << ',' << roc.p_d[i] << '\n';
}

} // namespace isac
