#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "afdm/channel.hpp"
#include "afdm/framing.hpp"
#include "afdm/rng.hpp"
#include "afdm/sync.hpp"
#include "afdm/transform.hpp"
#include "helpers.hpp"

using namespace afdm;
using testutil::phasor;
using testutil::random_cvec;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Direct transcription of the correlation statistic, kept independent of
// the library's table-driven evaluation.
cdbl gamma_oracle(const cvec& r, int theta, const AfdmParams& p) {
  cdbl acc(0.0, 0.0);
  for (int k = theta; k < theta + p.cpp_len; ++k) {
    acc += r[k] * std::conj(r[k + p.n]) *
           phasor(2.0 * kTwoPi * p.c1 * p.n * (k - theta - p.cpp_len));
  }
  return acc;
}

double phi_oracle(const cvec& r, int theta, const AfdmParams& p) {
  double acc = 0.0;
  for (int k = theta; k < theta + p.cpp_len; ++k)
    acc += std::norm(r[k]) + std::norm(r[k + p.n]);
  return acc;
}

cvec bpsk_frame(const AfdmParams& p, const DaftTransform& plan,
                std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  cvec x(p.n);
  for (cdbl& v : x) v = cdbl(bit(rng) ? 1.0 : -1.0, 0.0);
  return append_cpp(plan.inverse(x), p);
}

cvec noiseless_window(const AfdmParams& p, const DaftTransform& plan,
                      const OffsetTruth& truth, std::mt19937_64& rng) {
  return observation_window(bpsk_frame(p, plan, rng), bpsk_frame(p, plan, rng),
                            bpsk_frame(p, plan, rng),
                            ChannelRealization::identity(), truth, p);
}

}  // namespace

TEST_CASE("metric statistics match their direct transcriptions") {
  const AfdmParams p = AfdmParams::make(16, 0.0777, 0.013, 3);
  auto rng = make_rng(41, {});
  const cvec r = random_cvec(p.window_len(), rng);
  const SyncMetrics m = compute_sync_metrics(r, p, 10.0);
  REQUIRE(m.gamma.size() == static_cast<size_t>(p.n + 1));
  for (int theta = 0; theta <= p.n; ++theta) {
    CHECK(std::abs(m.gamma[theta] - gamma_oracle(r, theta, p)) < 1e-12);
    CHECK(m.phi[theta] == doctest::Approx(phi_oracle(r, theta, p)).epsilon(1e-12));
    CHECK(std::abs(gamma_metric(r, theta, p) - m.gamma[theta]) == 0.0);
    CHECK(phi_metric(r, theta, p) == m.phi[theta]);
  }
  CHECK(m.rho == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
}

TEST_CASE("zero chirp rate reduces the correlation to the classic lag-N form") {
  const AfdmParams p = AfdmParams::make(32, 0.0, 0.0, 6);
  auto rng = make_rng(42, {});
  const cvec r = random_cvec(p.window_len(), rng);
  for (int theta : {0, 5, 17, 32}) {
    cdbl classic(0.0, 0.0);
    for (int k = theta; k < theta + p.cpp_len; ++k)
      classic += r[k] * std::conj(r[k + p.n]);
    CHECK(std::abs(gamma_metric(r, theta, p) - classic) < 1e-12);
  }
}

TEST_CASE("rho covers the snr range") {
  CHECK(correlation_rho(0.0) == 0.0);
  CHECK(correlation_rho(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(correlation_rho(kInf) == 1.0);
  CHECK_THROWS_AS(correlation_rho(-0.5), std::invalid_argument);
}

TEST_CASE("noiseless estimates are exact across the full offset range") {
  const AfdmParams p = AfdmParams::make(64, 0.0123456789, 1.0 / 128.0, 8);
  const DaftTransform plan(p);
  auto rng = make_rng(43, {});
  std::uniform_int_distribution<int> theta_dist(0, p.n);
  std::uniform_real_distribution<double> eps_dist(-0.449, 0.449);
  const double step = 1.0 / (64.0 * p.n);
  for (int trial = 0; trial < 30; ++trial) {
    const OffsetTruth truth{theta_dist(rng), eps_dist(rng)};
    const cvec win = noiseless_window(p, plan, truth, rng);

    const OffsetEstimate st = stepwise_ml_estimate(win, p, kInf);
    CHECK(st.theta_hat == truth.theta);
    CHECK(std::abs(st.eps_hat - truth.eps) < 1e-9);
    CHECK_FALSE(st.degenerate);

    const OffsetEstimate jt = joint_ml_estimate(win, p, kInf, step);
    CHECK(jt.theta_hat == truth.theta);
    CHECK(std::abs(jt.eps_hat - truth.eps) <= 0.5 * step + 1e-12);
  }
}

TEST_CASE("joint grid scan equals the exhaustive evaluation") {
  // The implementation only evaluates grid points near the per-offset
  // phase peak; replicate the full scan and demand bit-identical picks.
  const AfdmParams p = AfdmParams::make(16, 0.0777, 0.013, 3);
  const double step = 1.0 / 64.0;
  const int grid_n = 64;
  auto rng = make_rng(44, {});
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    cvec r = random_cvec(p.window_len(), rng);
    if (trial % 7 == 0) {
      // Occasionally overlay a genuine frame so peaked cases appear too.
      const DaftTransform plan(p);
      std::uniform_int_distribution<int> theta_dist(0, p.n);
      std::uniform_real_distribution<double> eps_dist(-0.449, 0.449);
      const cvec win = noiseless_window(
          p, plan, OffsetTruth{theta_dist(rng), eps_dist(rng)}, rng);
      for (size_t i = 0; i < r.size(); ++i) r[i] = win[i] + 0.1 * r[i];
    }
    const double snr = 5.0;
    const OffsetEstimate fast = joint_ml_estimate(r, p, snr, step);

    const SyncMetrics m = compute_sync_metrics(r, p, snr);
    const cdbl align = cis_cycles(p.c1 * static_cast<double>(p.n) * p.n);
    bool have = false;
    double best_val = 0.0;
    int best_theta = 0;
    double best_eps = 0.0;
    for (int theta = 0; theta <= p.n; ++theta) {
      const cdbl gg = m.gamma[theta] * align;
      const double penalty = 0.5 * m.rho * m.phi[theta];
      for (int i = 0; i < grid_n; ++i) {
        const double eps = -0.5 + (i + 1) * step;
        const double ang = kTwoPi * eps;
        const double val =
            gg.real() * std::cos(ang) - gg.imag() * std::sin(ang) - penalty;
        if (!have || val > best_val) {
          have = true;
          best_val = val;
          best_theta = theta;
          best_eps = eps;
        }
      }
    }
    CHECK(fast.theta_hat == best_theta);
    CHECK(fast.eps_hat == best_eps);
    CHECK(fast.objective == best_val);
  }
}

TEST_CASE("estimators flag the all-zero window as degenerate") {
  const AfdmParams p = AfdmParams::make(16, 0.05, 0.01, 3);
  const cvec r(p.window_len(), cdbl(0.0, 0.0));
  const OffsetEstimate st = stepwise_ml_estimate(r, p, 10.0);
  CHECK(st.theta_hat == 0);
  CHECK(st.eps_hat == 0.0);
  CHECK(st.degenerate);
  const OffsetEstimate jt = joint_ml_estimate(r, p, 10.0, 1.0 / 32.0);
  CHECK(jt.theta_hat == 0);
  CHECK(jt.degenerate);
}

TEST_CASE("cfo estimate lands in the half-open interval") {
  // A window engineered so gamma's aligned phase is exactly pi maps to
  // eps = +1/2, not -1/2.
  const AfdmParams p = AfdmParams::make(8, 0.0, 0.0, 2);
  cvec r(p.window_len(), cdbl(0.0, 0.0));
  // Pairs (k, k+8) for k in {3, 4}: make r[k] conj(r[k+8]) = -1.
  r[3] = cdbl(1.0, 0.0);
  r[11] = cdbl(-1.0, 0.0);
  r[4] = cdbl(1.0, 0.0);
  r[12] = cdbl(-1.0, 0.0);
  const OffsetEstimate st = stepwise_ml_estimate(r, p, 9.0);
  CHECK(st.theta_hat == 3);
  CHECK(st.eps_hat == 0.5);
}

TEST_CASE("sync rejects malformed inputs") {
  const AfdmParams p = AfdmParams::make(16, 0.05, 0.01, 3);
  const cvec r(p.window_len(), cdbl(1.0, 0.0));
  CHECK_THROWS_AS(compute_sync_metrics(cvec(10), p, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_metric(r, -1, p), std::invalid_argument);
  CHECK_THROWS_AS(gamma_metric(r, p.n + 1, p), std::invalid_argument);
  CHECK_THROWS_AS(joint_ml_estimate(r, p, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(joint_ml_estimate(r, p, 1.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(joint_ml_estimate(r, p, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("noisy estimators agree with each other on average") {
  // Same grid-free phase, so up to grid rounding the two searches pick
  // the same offsets in benign conditions.
  const AfdmParams p = AfdmParams::for_doppler(64, 12, 2.0);
  const DaftTransform plan(p);
  std::uniform_int_distribution<int> theta_dist(p.cpp_len, p.n - 1);
  std::uniform_real_distribution<double> eps_dist(-0.4, 0.4);
  const double snr = 100.0;
  int disagreements = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(45, {static_cast<std::uint64_t>(t)});
    const OffsetTruth truth{theta_dist(rng), eps_dist(rng)};
    cvec win = noiseless_window(p, plan, truth, rng);
    win = add_awgn(win, NoiseModel{1.0, 1.0 / snr}, rng);
    const OffsetEstimate st = stepwise_ml_estimate(win, p, snr);
    const OffsetEstimate jt = joint_ml_estimate(win, p, snr, 1.0 / (64.0 * p.n));
    if (st.theta_hat != jt.theta_hat) ++disagreements;
    CHECK(std::abs(st.eps_hat - truth.eps) < 0.05);
    CHECK(std::abs(jt.eps_hat - truth.eps) < 0.05);
  }
  CHECK(disagreements <= trials / 100);
}

TEST_CASE("moment-based snr estimate tracks the true level") {
  const AfdmParams p = AfdmParams::for_doppler(256, 60, 2.0);
  const DaftTransform plan(p);
  std::uniform_int_distribution<int> theta_dist(p.cpp_len, p.n - 1);

  // Noiseless prefix pairs are identical up to the chirp phase, so the
  // correlation ratio saturates and the implied snr blows up (exactly 1
  // maps to infinity; rounding may leave it epsilon under).
  {
    auto rng = make_rng(46, {0});
    const OffsetTruth truth{theta_dist(rng), 0.2};
    const cvec win = noiseless_window(p, plan, truth, rng);
    CHECK(estimate_snr(win, truth.theta, p) > 1e6);
  }

  const double snr = 10.0;
  double mean = 0.0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    auto rng = make_rng(46, {static_cast<std::uint64_t>(t + 1)});
    const OffsetTruth truth{theta_dist(rng), -0.1};
    cvec win = noiseless_window(p, plan, truth, rng);
    win = add_awgn(win, NoiseModel{1.0, 1.0 / snr}, rng);
    mean += estimate_snr(win, truth.theta, p) / trials;
  }
  CHECK(mean > 0.6 * snr);
  CHECK(mean < 1.6 * snr);
}
