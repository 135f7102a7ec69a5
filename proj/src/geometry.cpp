#include "isac/geometry.hpp"

#include <cmath>

namespace isac {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) fail("unit out of range", what);
}
} // namespace

void validate(const Scenario& s) {
  require(s.M >= 1, "M must be >= 1");
  require(s.N >= 0, "N must be >= 0");
  require(s.f_c > 0, "f_c must be positive");
  require(s.l_AD > 0, "l_AD must be positive");
  require(s.l_AU > 0, "l_AU must be positive");
  require(s.N == 0 || s.l_A1 > 0, "l_A1 must be positive");
  require(s.N <= 1 || s.spacing > 0, "spacing must be positive");
  require(s.theta > 0 && s.theta < kPi, "theta must lie in (0, pi)");
  require(s.rcs_mean > 0, "rcs_mean must be positive");
  require(s.noise_r > 0, "noise_r must be positive");
  require(s.noise_ap > 0, "noise_ap must be positive");
  require(s.noise_ue > 0, "noise_ue must be positive");
  require(s.alpha_max >= 0, "alpha_max must be >= 0");
  require(s.ue_sinr_req > 0, "ue_sinr_req must be positive");
  require(s.power_budget > 0, "power_budget must be positive");
}

Layout build_layout(const Scenario& s) {
  validate(s);
  Layout out;
  out.drone_x = s.l_AD * std::cos(s.theta);
  out.drone_y = s.l_AD * std::sin(s.theta);
  out.l_An.resize(s.N);
  out.l_Dn.resize(s.N);
  for (int n = 0; n < s.N; ++n) {
    out.l_An[n] = s.l_A1 + s.spacing * n;
    out.l_Dn[n] = std::hypot(out.l_An[n] - out.drone_x, out.drone_y);
  }
  return out;
}

} // namespace isac
