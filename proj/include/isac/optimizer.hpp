#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "isac/sinr.hpp"

namespace isac {

struct DinkelbachOptions {
  // Stopping tolerance on the Dinkelbach residual. Applied relative to the
  // current ratio scale, max(1, lambda*denominator): the objective lives
  // around 1e-15 at realistic path gains, where a plain absolute test would
  // stop before the first ratio update.
  double tol = 1e-12;
  int max_iter = 100;
  // Two activation tests are in circulation; the shorter one drops the
  // sigma_r^2 factor that the linearized objective carries. False runs the
  // consistent rule; true runs the truncated one so the difference stays
  // observable (at realistic scales it never activates anything).
  bool truncated_rule = false;
};

struct OptimizerResult {
  Vec t;                        // squared gains, each 0 or alpha_max^2
  Vec alpha;                    // elementwise sqrt of t
  PowerSplit power;
  double lambda_star = 0.0;     // final value of the gain-ratio program
  double gamma_s = 0.0;         // closed-form sensing SINR at (t, power)
  double gamma_ue = 0.0;        // closed-form user SINR at power
  int iterations = 0;
  std::vector<double> residuals;
  std::vector<int> active_set;  // indices with t[n] = alpha_max^2
  bool converged = false;
};

// Waterless closed form: rho_c takes the minimum meeting the UE requirement,
// the rest goes to sensing, full budget always spent. rho_s is computed as
// budget minus rho_c so the sum is exact in floating point.
// Throws "infeasible UE requirement" when the budget cannot meet it.
PowerSplit power_split(const Scenario& s);

// Bang-bang ascent for the box-constrained linear-fractional gain program:
// t_n jumps to alpha_max^2 where beta_An*beta_ADn - lambda*sigma_r^2*beta_An
// is positive (ties off), lambda is re-set to the achieved ratio, repeat.
// lambda is monotone non-decreasing; the fixed point is the global optimum
// because the objective is linear-fractional over a box. Never throws on
// hitting max_iter: the result comes back with converged = false.
OptimizerResult dinkelbach(const Scenario& s, const PathGains& g,
                           const PowerSplit& pw,
                           const DinkelbachOptions& opts = {});

// Exhaustive check over all 2^N on/off vertices, N <= 20. Returns the best
// t and the closed-form sensing SINR there; exact ties prefer fewer active
// repeaters. Exists to pin the solver, not for production sizes.
std::pair<Vec, double> brute_force_oracle(const Scenario& s, const PathGains& g,
                                          const PowerSplit& pw);

// power_split, then dinkelbach at the Swerling-mean path gains, then a
// defensive re-check of every constraint on the way out.
OptimizerResult optimize(const Scenario& s, const Layout& lay,
                         const DinkelbachOptions& opts = {});

} // namespace isac
