#include "isac/channel.hpp"

#include <cmath>

namespace isac {

CVec steering(int M, double theta) {
  CVec a(M);
  const double step = kPi * std::cos(theta);
  for (int m = 0; m < M; ++m) a[m] = std::polar(1.0, m * step);
  return a;
}

double path_phase(double total_length, double wavelength) {
  return -2.0 * kPi * std::fmod(total_length / wavelength, 1.0);
}

PathGains path_gains(const Scenario& s, const Layout& lay, double rcs) {
  const double lam = s.wavelength();
  const double lam2 = lam * lam;
  const double four_pi = 4.0 * kPi;
  const double four_pi_cubed = four_pi * four_pi * four_pi;

  PathGains g;
  g.beta_AD = rcs * lam2 / (four_pi_cubed * std::pow(s.l_AD, 4));
  g.beta_AU = lam2 / std::pow(four_pi * s.l_AU, 2);
  g.beta_An.resize(s.N);
  g.beta_ADn.resize(s.N);
  for (int n = 0; n < s.N; ++n) {
    g.beta_An[n] = lam2 / std::pow(four_pi * lay.l_An[n], 2);
    g.beta_ADn[n] = rcs * lam2 / (four_pi_cubed * std::pow(s.l_AD * lay.l_Dn[n], 2));
  }
  g.beta_nn = Mat::Zero(s.N, s.N);
  for (int n = 0; n < s.N; ++n)
    for (int m = n + 1; m < s.N; ++m) {
      const double b = lam2 / std::pow(four_pi * lay.pair_dist(n, m), 2);
      g.beta_nn(n, m) = b;
      g.beta_nn(m, n) = b;
    }
  return g;
}

ChannelSet realize_channels(const Scenario& s, const Layout& lay, double rcs,
                            const CVec& h_AU) {
  const double lam = s.wavelength();
  ChannelSet cs;
  cs.rcs = rcs;
  cs.gains = path_gains(s, lay, rcs);
  cs.h_AU = h_AU;

  const CVec a_th = steering(s.M, s.theta);
  const CVec a_0 = steering(s.M, 0.0);

  const cplx c_AD = std::polar(std::sqrt(cs.gains.beta_AD),
                               path_phase(2.0 * s.l_AD, lam));
  cs.H_AD.noalias() = c_AD * (a_th * a_th.transpose());

  cs.H_AR.resize(s.M, s.N);
  cs.H_ADR.resize(s.M, s.N);
  for (int n = 0; n < s.N; ++n) {
    cs.H_AR.col(n) = std::polar(std::sqrt(cs.gains.beta_An[n]),
                                path_phase(lay.l_An[n], lam)) * a_0;
    cs.H_ADR.col(n) = std::polar(std::sqrt(cs.gains.beta_ADn[n]),
                                 path_phase(s.l_AD + lay.l_Dn[n], lam)) * a_th;
  }

  cs.H_RR = CMat::Zero(s.N, s.N);
  for (int n = 0; n < s.N; ++n)
    for (int m = n + 1; m < s.N; ++m) {
      const cplx h = std::polar(std::sqrt(cs.gains.beta_nn(n, m)),
                                path_phase(lay.pair_dist(n, m), lam));
      cs.H_RR(n, m) = h;
      cs.H_RR(m, n) = h;
    }
  return cs;
}

ChannelSet realize_channels(const Scenario& s, const Layout& lay, Rng& rng) {
  const double rcs = draw_rcs(rng, s.rcs_mean);
  const double beta_AU =
      std::pow(s.wavelength() / (4.0 * kPi * s.l_AU), 2);
  const CVec h_AU = rng.cnormal_vec(s.M, beta_AU);
  return realize_channels(s, lay, rcs, h_AU);
}

} // namespace isac
