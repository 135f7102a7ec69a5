#pragma once

#include "isac/signal.hpp"

namespace isac {

// Everything random in one coherence block. Draw order is a compatibility
// contract: rcs, h_AU, s_s, s_c, n_AP, then n_R. Configs that differ only in
// repeater count therefore share the target, user, symbol, and AP-noise
// draws of each trial, which keeps common-random-number pairing valid across
// N (the repeater-noise tail is the only part that diverges).
struct TrialDraw {
  double rcs = 0.0;
  CVec h_AU;
  cplx s_s;
  cplx s_c;
  CVec n_AP;
  CVec n_R;
};

inline TrialDraw draw_trial(const Scenario& s, Rng& rng) {
  TrialDraw d;
  d.rcs = draw_rcs(rng, s.rcs_mean);
  const double beta_AU = std::pow(s.wavelength() / (4.0 * kPi * s.l_AU), 2);
  d.h_AU = rng.cnormal_vec(s.M, beta_AU);
  d.s_s = rng.qpsk();
  d.s_c = rng.qpsk();
  d.n_AP = rng.cnormal_vec(s.M, s.noise_ap);
  d.n_R = rng.cnormal_vec(s.N, s.noise_r);
  return d;
}

struct TrialResult {
  ApComponents ap;
  Precoders prec;
  CVec x;
  ChannelSet channels;
};

// One full downlink-plus-echo evaluation for a drawn block. Perfect CSI:
// the precoder sees h_AU itself.
inline TrialResult run_trial(const Scenario& s, const Layout& lay,
                             const PowerSplit& pw, const Vec& alpha,
                             bool include_rr, const TrialDraw& d) {
  TrialResult r;
  r.channels = realize_channels(s, lay, d.rcs, d.h_AU);
  r.prec = make_precoders(d.h_AU, steering(s.M, s.theta));
  r.x = transmit(r.prec, pw, d.s_s, d.s_c);
  r.ap = receive_ap(r.channels, alpha, r.x, d.n_R, d.n_AP, include_rr);
  return r;
}

} // namespace isac
