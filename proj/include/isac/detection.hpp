#pragma once

#include <cstdint>
#include <iosfwd>

#include "isac/sinr.hpp"

namespace isac {

// Unit-norm spatial matched filter pointed at the sensing direction.
inline CVec combiner(int M, double theta) {
  return steering(M, theta) / std::sqrt(static_cast<double>(M));
}

// Energy detector statistic T = |v^H y|^2.
inline double test_statistic(const CVec& y_ap, double theta) {
  const CVec v = combiner(static_cast<int>(y_ap.size()), theta);
  return std::norm(v.dot(y_ap));
}

struct HypothesisSamples {
  Vec t_h1;
  Vec t_h0;
  std::uint64_t seed = 0;
};

// One statistic pair per trial from a single draw: the H0 snapshot removes
// the two target-path components (drone echo and forwarded bounce) and keeps
// everything else, so hypotheses share channel, symbol, and noise randomness
// exactly. The repeater gains are the H1-optimized ones in both branches:
// the detector cannot know the hypothesis.
HypothesisSamples run_hypothesis_mc(const Scenario& s, const Layout& lay,
                                    const PowerSplit& pw, const Vec& alpha,
                                    bool include_rr, int trials,
                                    std::uint64_t seed, int workers = 1);

struct RocCurve {
  Vec thresholds;  // ascending
  Vec p_fa;        // non-increasing along thresholds
  Vec p_d;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Threshold set: pooled empirical quantiles at grid_size levels, plus a
// uniform grid over the pooled range, plus closing endpoints, so the curve
// always spans (0,0) to (1,1) and concentrates points where mass lives.
RocCurve build_roc(const HypothesisSamples& samples, int grid_size = 101);

// Linear interpolation along the curve at a false-alarm level.
double pd_at_pfa(const RocCurve& roc, double pfa);

// columns threshold,p_fa,p_d; full double precision
void write_roc_csv(std::ostream& os, const RocCurve& roc);

} // namespace isac
