// Timing/CFO maximum-likelihood estimation from one observation window.
#pragma once

#include <vector>

#include "afdm/params.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Correlation and energy statistics over all candidate timing offsets.
//
//   gamma[theta] = sum_{k=theta}^{theta+L-1} r[k] conj(r[k+N])
//                    * e^{j 4 pi c1 N (k - theta - L)}
//   phi[theta]   = sum over the same k of |r[k]|^2 + |r[k+N]|^2
//   rho          = snr / (snr + 1)
//
// The chirp factor undoes the prefix's phase continuation so that at the
// true offset every pair adds coherently with the common phase
// -2 pi (c1 N^2 + eps).
struct SyncMetrics {
  std::vector<cdbl> gamma;  // size N+1, indexed by theta
  std::vector<double> phi;  // size N+1
  double rho = 1.0;
};

struct OffsetEstimate {
  int theta_hat = 0;
  double eps_hat = 0.0;   // in (-1/2, 1/2]
  double objective = 0.0; // maximized criterion value
  // Set when gamma at the chosen offset is exactly zero and the CFO
  // estimate defaults to 0.
  bool degenerate = false;
};

// snr_linear may be infinite (rho -> 1).
double correlation_rho(double snr_linear);

// Single-offset statistics; identical arithmetic to compute_sync_metrics.
cdbl gamma_metric(const cvec& r, int theta, const AfdmParams& p);
double phi_metric(const cvec& r, int theta, const AfdmParams& p);

// r must have length 2N+L. Computes gamma and phi for theta = 0..N.
SyncMetrics compute_sync_metrics(const cvec& r, const AfdmParams& p,
                                 double snr_linear);

// Joint grid search: maximize
//   Re{gamma(theta) e^{j 2 pi (eps + c1 N^2)}} - rho/2 phi(theta)
// over theta in {0..N} and eps on the uniform grid
//   eps_i = -1/2 + (i+1) * eps_grid_step, i = 0..M-1, M = round(1/step).
// Ties resolve to the smaller theta, then the smaller eps. For each theta
// only grid points adjacent to the phase-aligned peak can attain the
// maximum, so the scan evaluates just those candidates; the result is the
// exact grid argmax.
OffsetEstimate joint_ml_estimate(const cvec& r, const AfdmParams& p,
                                 double snr_linear, double eps_grid_step);

// Two-step search: theta from |gamma| - rho/2 phi, then the CFO in closed
// form from the phase of gamma at the chosen offset.
OffsetEstimate stepwise_ml_estimate(const cvec& r, const AfdmParams& p,
                                    double snr_linear);

// Moment-based SNR estimate at one timing offset: over the prefix pairs
// |gamma| approaches L sigma_s^2 while phi/2 averages L (sigma_s^2 +
// sigma_n^2), so 2|gamma|/phi estimates rho = snr/(snr+1). Returns the
// implied snr; infinite when the ratio saturates at 1. Noisy for small L;
// the estimators above take the SNR as an input instead of using this.
double estimate_snr(const cvec& r, int theta, const AfdmParams& p);

}  // namespace afdm
