#include "isac/signal.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace isac {

Precoders make_precoders(const CVec& h_hat, const CVec& a_theta) {
  const double h2 = h_hat.squaredNorm();
  if (h2 <= 0.0) fail("unit out of range", "h_hat is zero");

  Precoders p;
  p.w_c = h_hat.conjugate() / std::sqrt(h2);

  // project a*(theta) off the conjugate user direction, then renormalize
  const cplx overlap = h_hat.transpose() * a_theta.conjugate();
  CVec raw = a_theta.conjugate() - h_hat.conjugate() * (overlap / h2);
  const double rnorm = raw.norm();
  if (rnorm < 1e-12 * a_theta.norm())
    fail("sensing direction unservable",
         "user channel estimate is parallel to the sensing steering vector");
  p.w_s = raw / rnorm;
  return p;
}

CVec transmit(const Precoders& p, const PowerSplit& split, cplx s_s, cplx s_c) {
  return std::sqrt(split.rho_s) * s_s * p.w_s +
         std::sqrt(split.rho_c) * s_c * p.w_c;
}

StabilityReport check_stability(const CMat& H_RR, const Vec& alpha) {
  StabilityReport rep;
  if (H_RR.rows() == 0) return rep;
  const CMat loop = alpha.asDiagonal() * H_RR;
  rep.spectral_radius = loop.eigenvalues().cwiseAbs().maxCoeff();
  rep.stable = rep.spectral_radius < 1.0 - 1e-6;
  return rep;
}

namespace {

// Factorizes I - Phi H_RR once and solves for each forwarded component.
// Columns of rhs are Phi-scaled inputs; returns G * rhs.
CMat resolve_coupling(const ChannelSet& cs, const Vec& alpha, const CMat& rhs) {
  const Eigen::Index n = rhs.rows();
  CMat sys = CMat::Identity(n, n) - CMat(alpha.asDiagonal() * cs.H_RR);
  Eigen::PartialPivLU<CMat> lu(sys);
  CMat out = lu.solve(rhs);
  const double scale = std::max(rhs.norm(), 1e-300);
  if ((sys * out - rhs).norm() > 1e-9 * scale)
    fail("singular system", "repeater coupling solve residual above 1e-9");
  return out;
}

void require_stable(const ChannelSet& cs, const Vec& alpha) {
  const StabilityReport rep = check_stability(cs.H_RR, alpha);
  if (!rep.stable)
    fail("unstable repeater loop",
         "spectral radius " + std::to_string(rep.spectral_radius));
}

} // namespace

CVec solve_repeater_tx(const ChannelSet& cs, const Vec& alpha, const CVec& x,
                       const CVec& n_R, bool include_rr) {
  const CVec r_in = (cs.H_AR + cs.H_ADR).transpose() * x + n_R;
  const CVec scaled = alpha.asDiagonal() * r_in;
  if (!include_rr || alpha.size() == 0) return scaled;
  require_stable(cs, alpha);
  return resolve_coupling(cs, alpha, scaled);
}

ApComponents receive_ap(const ChannelSet& cs, const Vec& alpha, const CVec& x,
                        const CVec& n_R, const CVec& n_AP, bool include_rr) {
  const Eigen::Index M = x.size();
  const Eigen::Index N = alpha.size();
  ApComponents out;
  out.drone_echo = cs.H_AD * x;
  out.ap_noise = n_AP;
  if (N == 0) {
    out.repeater_useful = CVec::Zero(M);
    out.repeater_self_loop = CVec::Zero(M);
    out.repeater_noise = CVec::Zero(M);
    return out;
  }

  CMat inputs(N, 3);
  inputs.col(0) = cs.H_ADR.transpose() * x;
  inputs.col(1) = cs.H_AR.transpose() * x;
  inputs.col(2) = n_R;
  CMat forwarded = alpha.asDiagonal() * inputs;
  if (include_rr) {
    require_stable(cs, alpha);
    forwarded = resolve_coupling(cs, alpha, forwarded);
  }
  out.repeater_useful = cs.H_AR * forwarded.col(0);
  out.repeater_self_loop = cs.H_AR * forwarded.col(1);
  out.repeater_noise = cs.H_AR * forwarded.col(2);
  return out;
}

cplx receive_ue(const CVec& h_AU, const CVec& x, cplx n_ue) {
  const cplx s = h_AU.transpose() * x;
  return s + n_ue;
}

} // namespace isac
