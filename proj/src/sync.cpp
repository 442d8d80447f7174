#include "afdm/sync.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace afdm {

namespace {

void check_window(const cvec& r, const AfdmParams& p) {
  if (static_cast<int>(r.size()) != p.window_len())
    throw std::invalid_argument("sync: window must have length 2N+L, got " +
                                std::to_string(r.size()));
}

// Chirp continuation factors e^{j 4 pi c1 N (j - L)} for j = 0..L-1.
cvec chirp_table(const AfdmParams& p) {
  cvec c(p.cpp_len);
  for (int j = 0; j < p.cpp_len; ++j) {
    c[j] = cis_cycles(2.0 * p.c1 * p.n * (j - p.cpp_len));
  }
  return c;
}

cdbl gamma_at(const cvec& r, int theta, int n, const cvec& chirp) {
  cdbl acc(0.0, 0.0);
  const int l = static_cast<int>(chirp.size());
  for (int j = 0; j < l; ++j) {
    const int k = theta + j;
    acc += r[k] * std::conj(r[k + n]) * chirp[j];
  }
  return acc;
}

double phi_at(const cvec& r, int theta, int n, int l) {
  double acc = 0.0;
  for (int j = 0; j < l; ++j) {
    const int k = theta + j;
    acc += std::norm(r[k]) + std::norm(r[k + n]);
  }
  return acc;
}

}  // namespace

double correlation_rho(double snr_linear) {
  if (std::isinf(snr_linear)) return 1.0;
  if (!(snr_linear >= 0.0))
    throw std::invalid_argument("correlation_rho: snr must be >= 0");
  return snr_linear / (snr_linear + 1.0);
}

cdbl gamma_metric(const cvec& r, int theta, const AfdmParams& p) {
  validate(p);
  check_window(r, p);
  if (theta < 0 || theta > p.n)
    throw std::invalid_argument("gamma_metric: theta must lie in [0, N]");
  return gamma_at(r, theta, p.n, chirp_table(p));
}

double phi_metric(const cvec& r, int theta, const AfdmParams& p) {
  validate(p);
  check_window(r, p);
  if (theta < 0 || theta > p.n)
    throw std::invalid_argument("phi_metric: theta must lie in [0, N]");
  return phi_at(r, theta, p.n, p.cpp_len);
}

SyncMetrics compute_sync_metrics(const cvec& r, const AfdmParams& p,
                                 double snr_linear) {
  validate(p);
  check_window(r, p);
  SyncMetrics m;
  m.rho = correlation_rho(snr_linear);
  m.gamma.resize(p.n + 1);
  m.phi.resize(p.n + 1);
  const cvec chirp = chirp_table(p);
  for (int theta = 0; theta <= p.n; ++theta) {
    m.gamma[theta] = gamma_at(r, theta, p.n, chirp);
    m.phi[theta] = phi_at(r, theta, p.n, p.cpp_len);
  }
  return m;
}

OffsetEstimate joint_ml_estimate(const cvec& r, const AfdmParams& p,
                                 double snr_linear, double eps_grid_step) {
  if (!(eps_grid_step > 0.0) || eps_grid_step > 1.0)
    throw std::invalid_argument("joint_ml_estimate: grid step must lie in (0, 1]");
  const SyncMetrics m = compute_sync_metrics(r, p, snr_linear);

  const int grid_n = static_cast<int>(std::llround(1.0 / eps_grid_step));
  if (grid_n < 1 || std::abs(grid_n * eps_grid_step - 1.0) > 1e-9)
    throw std::invalid_argument(
        "joint_ml_estimate: grid step must divide the unit interval");
  auto grid_eps = [&](int i) { return -0.5 + (i + 1) * eps_grid_step; };

  // Global phase common to every eps hypothesis.
  const cdbl align = cis_cycles(p.c1 * static_cast<double>(p.n) * p.n);

  OffsetEstimate best;
  bool have_best = false;
  double best_val = 0.0;

  for (int theta = 0; theta <= p.n; ++theta) {
    const cdbl g = m.gamma[theta] * align;
    const double penalty = 0.5 * m.rho * m.phi[theta];

    // Re{g e^{j 2 pi eps}} is unimodal in the wrapped distance between
    // 2 pi eps and -arg(g), so the grid argmax sits within one step of
    // the phase-aligned point; +/-2 covers rounding at the boundaries.
    int cand[5];
    int cand_n = 0;
    if (g == cdbl(0.0, 0.0)) {
      cand[cand_n++] = 0;
    } else {
      const double eps_peak = -std::arg(g) / kTwoPi;  // in [-1/2, 1/2)
      const int centre = static_cast<int>(std::lround((eps_peak + 0.5) / eps_grid_step)) - 1;
      for (int d = -2; d <= 2; ++d) {
        int i = centre + d;
        i %= grid_n;
        if (i < 0) i += grid_n;
        bool dup = false;
        for (int q = 0; q < cand_n; ++q) dup = dup || (cand[q] == i);
        if (!dup) cand[cand_n++] = i;
      }
      // Ascending order replicates the full scan's first-maximum rule.
      for (int a = 1; a < cand_n; ++a) {
        int key = cand[a];
        int b = a - 1;
        for (; b >= 0 && cand[b] > key; --b) cand[b + 1] = cand[b];
        cand[b + 1] = key;
      }
    }

    for (int q = 0; q < cand_n; ++q) {
      const double eps = grid_eps(cand[q]);
      const double ang = kTwoPi * eps;
      const double val = g.real() * std::cos(ang) - g.imag() * std::sin(ang) - penalty;
      if (!have_best || val > best_val) {
        have_best = true;
        best_val = val;
        best.theta_hat = theta;
        best.eps_hat = eps;
      }
    }
  }

  best.objective = best_val;
  best.degenerate = (m.gamma[best.theta_hat] == cdbl(0.0, 0.0));
  return best;
}

OffsetEstimate stepwise_ml_estimate(const cvec& r, const AfdmParams& p,
                                    double snr_linear) {
  const SyncMetrics m = compute_sync_metrics(r, p, snr_linear);

  OffsetEstimate best;
  double best_val = 0.0;
  bool have_best = false;
  for (int theta = 0; theta <= p.n; ++theta) {
    const double val = std::abs(m.gamma[theta]) - 0.5 * m.rho * m.phi[theta];
    if (!have_best || val > best_val) {
      have_best = true;
      best_val = val;
      best.theta_hat = theta;
    }
  }
  best.objective = best_val;

  const cdbl g = m.gamma[best.theta_hat] *
                 cis_cycles(p.c1 * static_cast<double>(p.n) * p.n);
  if (g == cdbl(0.0, 0.0)) {
    best.eps_hat = 0.0;
    best.degenerate = true;
    return best;
  }
  double eps = -std::arg(g) / kTwoPi;  // in [-1/2, 1/2)
  if (eps <= -0.5) eps += 1.0;
  best.eps_hat = eps;
  return best;
}

double estimate_snr(const cvec& r, int theta, const AfdmParams& p) {
  const double g = std::abs(gamma_metric(r, theta, p));
  const double phi = phi_metric(r, theta, p);
  if (!(phi > 0.0)) return 0.0;
  const double rho = 2.0 * g / phi;
  if (rho >= 1.0) return std::numeric_limits<double>::infinity();
  return rho / (1.0 - rho);
}

}  // namespace afdm
