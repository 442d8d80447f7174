#include "afdm/harness/selftest.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "afdm/channel.hpp"
#include "afdm/equalizer.hpp"
#include "afdm/framing.hpp"
#include "afdm/harness/experiment.hpp"
#include "afdm/harness/record.hpp"
#include "afdm/ici.hpp"
#include "afdm/rng.hpp"
#include "afdm/sync.hpp"
#include "afdm/transform.hpp"

namespace afdm {

namespace {

// Raw-phase phasor, deliberately not sharing the library's reduction.
cdbl unit_phasor(double angle) { return {std::cos(angle), std::sin(angle)}; }

double max_err(const cvec& a, const cvec& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

bool check_transform() {
  const AfdmParams p = AfdmParams::make(32, 0.0123, 0.00456, 4);
  auto rng = make_rng(7, {1});
  std::normal_distribution<double> g(0.0, 1.0);
  cvec x(p.n);
  for (cdbl& v : x) v = cdbl(g(rng), g(rng));

  // Direct double summation of the inverse transform definition.
  const cvec s = idaft(x, p);
  cvec ref(p.n, cdbl(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.n));
  for (int t = 0; t < p.n; ++t) {
    for (int m = 0; m < p.n; ++m) {
      const double ang = 2.0 * kPi *
                         (p.c1 * t * t + p.c2 * m * m +
                          static_cast<double>(t) * m / p.n);
      ref[t] += scale * unit_phasor(ang) * x[m];
    }
  }
  if (max_err(s, ref) > 1e-9) return false;
  return max_err(daft(s, p), x) < 1e-10 &&
         std::abs(energy(s) - energy(x)) < 1e-9 * energy(x);
}

bool check_prefix() {
  const AfdmParams p = AfdmParams::make(64, 0.0371, 0.011, 9);
  auto rng = make_rng(7, {2});
  std::normal_distribution<double> g(0.0, 1.0);
  cvec body(p.n);
  for (cdbl& v : body) v = cdbl(g(rng), g(rng));
  const cvec frame = append_cpp(body, p);
  if (max_err(strip_cpp(frame, p), body) != 0.0) return false;
  for (int k = 0; k < p.cpp_len; ++k) {
    const double ang = -2.0 * kPi * p.c1 *
                       (static_cast<double>(p.n) * p.n + 2.0 * p.n * (k - p.cpp_len));
    if (std::abs(frame[k] - body[k + p.n - p.cpp_len] * unit_phasor(ang)) > 1e-9)
      return false;
  }
  // Integer 2 N c1 turns the prefix into a plain cyclic copy.
  const AfdmParams pc = AfdmParams::make(64, 5.0 / 128.0, 0.011, 9);
  const cvec fc = append_cpp(body, pc);
  for (int k = 0; k < pc.cpp_len; ++k)
    if (std::abs(fc[k] - body[k + pc.n - pc.cpp_len]) > 1e-12) return false;
  return true;
}

bool check_leakage() {
  const int n = 64;
  for (double eps : {0.0, 0.076, -0.31, 0.44}) {
    for (int q = -n; q <= n; ++q) {
      // Direct DFT of the pure CFO tone.
      cdbl ref(0.0, 0.0);
      for (int t = 0; t < n; ++t)
        ref += unit_phasor(2.0 * kPi * t * (q + eps) / n) / static_cast<double>(n);
      if (std::abs(leakage(q, eps, n) - ref) > 1e-12) return false;
    }
  }
  return true;
}

bool check_mirror() {
  const int n = 16;
  auto rng = make_rng(7, {3});
  std::normal_distribution<double> g(0.0, 1.0);
  cvec data(n / 2 - 1);
  for (cdbl& v : data) v = cdbl(g(rng), g(rng));
  const cvec blk = mirror_map(data, n);
  if (blk[0] != cdbl(0.0, 0.0) || blk[n / 2] != cdbl(0.0, 0.0)) return false;
  return max_err(mirror_demap(blk), data) < 1e-15;
}

bool check_effective_channel() {
  const AfdmParams p = AfdmParams::make(16, 5.0 / 32.0, 1.0 / 32.0, 4);
  auto rng = make_rng(7, {4});
  const ChannelRealization ch = draw_channel(ChannelProfile{3, 2, 1.5}, rng);
  std::normal_distribution<double> g(0.0, 1.0);
  cvec x(p.n);
  for (cdbl& v : x) v = cdbl(g(rng), g(rng));

  const cvec byChain =
      daft(strip_cpp(apply_channel(append_cpp(idaft(x, p), p), ch, p.n), p), p);
  const Eigen::MatrixXcd h = effective_channel(ch, p);
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), x.size());
  const Eigen::VectorXcd yv = h * xv;
  const cvec byMatrix(yv.data(), yv.data() + yv.size());
  return max_err(byChain, byMatrix) < 1e-10;
}

bool check_mmse() {
  const AfdmParams p = AfdmParams::make(16, 5.0 / 32.0, 1.0 / 32.0, 4);
  auto rng = make_rng(7, {5});
  const ChannelRealization ch = draw_channel(ChannelProfile{4, 3, 2.0}, rng);
  std::normal_distribution<double> g(0.0, 1.0);
  cvec y(p.n);
  for (cdbl& v : y) v = cdbl(g(rng), g(rng));
  const double sigma2 = 0.05;
  const DaftTransform plan(p);
  const cvec slow = mmse_detect(y, effective_channel(ch, p), sigma2);
  const cvec fast = ChannelMmse(ch, p, sigma2, plan).detect(y);
  return max_err(slow, fast) < 1e-9;
}

bool check_sync_exact() {
  const AfdmParams p = AfdmParams::make(64, 0.0123456789, 1.0 / 128.0, 8);
  const DaftTransform plan(p);
  auto rng = make_rng(7, {6});
  std::uniform_int_distribution<int> bit(0, 1);
  auto mk_frame = [&] {
    cvec x(p.n);
    for (cdbl& v : x)
      v = cdbl(bit(rng) ? 1.0 : -1.0, 0.0);
    return append_cpp(plan.inverse(x), p);
  };
  std::uniform_int_distribution<int> theta_dist(0, p.n);
  std::uniform_real_distribution<double> eps_dist(-0.449, 0.449);
  for (int trial = 0; trial < 20; ++trial) {
    const OffsetTruth truth{theta_dist(rng), eps_dist(rng)};
    const cvec win =
        observation_window(mk_frame(), mk_frame(), mk_frame(),
                           ChannelRealization::identity(), truth, p);
    const double snr = std::numeric_limits<double>::infinity();
    const OffsetEstimate es = stepwise_ml_estimate(win, p, snr);
    if (es.theta_hat != truth.theta) return false;
    if (std::abs(es.eps_hat - truth.eps) > 1e-9) return false;
    const double step = 1.0 / (64.0 * p.n);
    const OffsetEstimate ej = joint_ml_estimate(win, p, snr, step);
    if (ej.theta_hat != truth.theta) return false;
    if (std::abs(ej.eps_hat - truth.eps) > 0.5 * step) return false;
  }
  return true;
}

bool check_reproducible() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::MseVsL;
  cfg.n = 32;
  cfg.cpp_lengths = {4};
  cfg.snr_db = {10.0};
  cfg.trials = 64;
  cfg.seed = 42;
  cfg.threads = 1;
  std::ostringstream a, b;
  write_csv(run_mse_experiment(cfg), a);
  cfg.threads = 3;
  write_csv(run_mse_experiment(cfg), b);
  return !a.str().empty() && a.str() == b.str();
}

}  // namespace

bool selftest(std::ostream& os) {
  struct Check {
    const char* name;
    bool (*fn)();
  };
  const Check checks[] = {
      {"transform definition and unitarity", check_transform},
      {"prefix continuation and cyclic reduction", check_prefix},
      {"leakage closed form vs direct sum", check_leakage},
      {"mirror map/demap roundtrip", check_mirror},
      {"effective channel vs modem chain", check_effective_channel},
      {"mmse dense vs factored detector", check_mmse},
      {"noiseless offset estimation exactness", check_sync_exact},
      {"thread-count reproducibility", check_reproducible},
  };
  bool all = true;
  for (const Check& c : checks) {
    bool ok = false;
    try {
      ok = c.fn();
    } catch (const std::exception& e) {
      os << "selftest " << c.name << ": FAIL (" << e.what() << ")\n";
      all = false;
      continue;
    }
    os << "selftest " << c.name << ": " << (ok ? "ok" : "FAIL") << "\n";
    all = all && ok;
  }
  return all;
}

}  // namespace afdm
