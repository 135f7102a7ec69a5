#pragma once

#include "isac/channel.hpp"

namespace isac {

// Unit-norm transmit beams. w_c is match-filtered to the user estimate; w_s
// points at the sensing direction inside the subspace the user cannot hear.
// With y_UE = h_AU^T x the audible direction is h_AU^* (not h_AU), so the
// null constraint is h_hat^T w_s = 0 and the projector below acts on the
// conjugate pair. This also makes w_c and w_s exactly orthogonal.
struct Precoders {
  CVec w_s;
  CVec w_c;
};

// Throws Error("sensing direction unservable") when a(theta) falls inside
// the user's span (h_hat parallel to a), leaving nothing to project onto.
Precoders make_precoders(const CVec& h_hat, const CVec& a_theta);

struct PowerSplit {
  double rho_s = 0.0;
  double rho_c = 0.0;
  double total() const { return rho_s + rho_c; }
};

// x = sqrt(rho_s) w_s s_s + sqrt(rho_c) w_c s_c. With unit-modulus symbols
// and orthonormal beams, ||x||^2 = rho_s + rho_c per symbol, exactly.
CVec transmit(const Precoders& p, const PowerSplit& split, cplx s_s, cplx s_c);

struct StabilityReport {
  double spectral_radius = 0.0;
  bool stable = true;
};

// Feedback loop gain of the amplify-and-forward mesh: rho(diag(alpha) H_RR).
// Stable means the Neumann series converges with margin, radius < 1 - 1e-6.
StabilityReport check_stability(const CMat& H_RR, const Vec& alpha);

// Repeater transmit vector for one symbol. Input heard by the repeaters is
// (H_AR + H_ADR)^T x + n_R; with include_rr the mutual coupling is resolved
// exactly via (I - Phi H_RR) y_R = Phi r_in, otherwise y_R = Phi r_in.
// Throws "unstable repeater loop" when the radius check fails and "singular
// system" if the solve residual comes back above 1e-9 relative.
CVec solve_repeater_tx(const ChannelSet& cs, const Vec& alpha, const CVec& x,
                       const CVec& n_R, bool include_rr);

// Additive pieces of one received AP snapshot. total() is the physical
// antenna output; the split exists so estimators and the detector can name
// what they keep and what they drop.
struct ApComponents {
  CVec drone_echo;         // H_AD x
  CVec repeater_useful;    // drone bounce forwarded by the repeaters
  CVec repeater_self_loop; // AP's own transmission looped straight back
  CVec repeater_noise;     // forwarded repeater input noise
  CVec ap_noise;           // n_AP
  CVec total() const {
    return drone_echo + repeater_useful + repeater_self_loop + repeater_noise +
           ap_noise;
  }
};

ApComponents receive_ap(const ChannelSet& cs, const Vec& alpha, const CVec& x,
                        const CVec& n_R, const CVec& n_AP, bool include_rr);

// y_UE = h_AU^T x + n_UE, one symbol.
cplx receive_ue(const CVec& h_AU, const CVec& x, cplx n_ue);

} // namespace isac
