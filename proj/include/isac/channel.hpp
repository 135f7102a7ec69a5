#pragma once

#include "isac/geometry.hpp"
#include "isac/rng.hpp"
#include "isac/types.hpp"

namespace isac {

// ULA response at half-wavelength spacing, a_m = exp(j m pi cos(theta)),
// m = 0..M-1, so ||a||^2 = M. Repeaters sit on the array axis and are seen
// at steering(M, 0).
CVec steering(int M, double theta);

// Carrier phase accumulated over a path of the given total length. Computed
// as -2*pi*frac(length/lambda): the integer part of length/lambda exceeds
// 2^32 at these carrier frequencies, and folding first keeps full double
// precision in the fractional part.
double path_phase(double total_length, double wavelength);

struct PathGains {
  double beta_AD = 0.0;   // AP -> drone -> AP, round trip
  Vec beta_An;            // AP -> repeater n, one way
  Vec beta_ADn;           // AP -> drone -> repeater n
  double beta_AU = 0.0;   // AP -> user
  Mat beta_nn;            // repeater n -> repeater m coupling, zero diagonal
};

// rcs is the Swerling-1 draw for this coherence block; pass s.rcs_mean for
// the average-gain variant used by closed forms.
PathGains path_gains(const Scenario& s, const Layout& lay, double rcs);

inline double draw_rcs(Rng& rng, double mean) { return rng.exponential(mean); }

struct ChannelSet {
  CMat H_AD;    // M x M, rank one through the drone
  CMat H_AR;    // M x N direct AP-repeater lines
  CMat H_ADR;   // M x N drone-bounce arrivals at the repeaters
  CMat H_RR;    // N x N inter-repeater coupling, symmetric, zero diagonal
  CVec h_AU;    // M, Rayleigh user channel
  PathGains gains;
  double rcs = 0.0;
};

// Deterministic assembly from an externally drawn (rcs, h_AU) pair. The same
// rcs scales H_AD and H_ADR: one Swerling-1 target per trial.
ChannelSet realize_channels(const Scenario& s, const Layout& lay, double rcs,
                            const CVec& h_AU);

// Draws rcs then h_AU from rng, in that order, and assembles.
ChannelSet realize_channels(const Scenario& s, const Layout& lay, Rng& rng);

} // namespace isac
