#pragma once

#include "isac/types.hpp"

namespace isac {

// Physical description of one deployment, everything in linear SI units
// (watts, meters, square meters, radians, plain ratios). Parsing and any
// dB conversion happen in config.hpp; past that boundary only this struct
// circulates.
struct Scenario {
  int M = 100;                 // AP antennas
  int N = 50;                  // repeaters
  double f_c = 15e9;           // carrier, Hz
  double l_AD = 500.0;         // AP-drone distance, m
  double l_AU = 100.0;         // AP-user distance, m
  double l_A1 = 250.0;         // AP to first repeater, m
  double spacing = 8.0;        // inter-repeater spacing, m
  double theta = kPi / 6.0;    // drone azimuth, rad
  double rcs_mean = 0.1;       // Swerling-1 mean RCS, m^2
  double noise_r = 3.981071705534969e-16;   // repeater noise power, W
  double noise_ap = 1e-14;     // AP noise power, W
  double noise_ue = 1e-14;     // UE noise power, W
  double alpha_max = 1e6;      // repeater amplitude gain cap, linear
  double ue_sinr_req = 31.6227766016838;    // comm SINR requirement, linear
  double power_budget = 1.9952623149688795; // total transmit power, W

  double wavelength() const { return kSpeedOfLight / f_c; }
};

// Throws Error("unit out of range", ...) naming the first offending field.
void validate(const Scenario& s);

// Repeaters sit on the array axis at l_A1 + spacing*(n-1); the drone is at
// polar (l_AD, theta) in the same plane.
struct Layout {
  Vec l_An;              // AP-repeater distances (= x coordinates), size N
  Vec l_Dn;              // repeater-drone distances, size N
  double drone_x = 0.0;
  double drone_y = 0.0;

  double pair_dist(int n, int m) const { return std::abs(l_An[n] - l_An[m]); }
};

Layout build_layout(const Scenario& s);

} // namespace isac
