#include "afdm/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <thread>

#include "afdm/equalizer.hpp"
#include "afdm/framing.hpp"
#include "afdm/ici.hpp"
#include "afdm/rng.hpp"
#include "afdm/sync.hpp"
#include "afdm/transform.hpp"

namespace afdm {

namespace {

// Substream roles; stable across releases so seeds stay meaningful.
enum Role : std::uint64_t {
  kTruth = 1,
  kData = 2,
  kPrev = 3,
  kNext = 4,
  kChannel = 5,
  kNoise = 6,
  kDataPlain = 7,
  kDataTracked = 8,
  kSyncPrev = 9,
  kSyncData = 10,
  kSyncNext = 11,
  kSyncNoise = 12,
  kSyncTruth = 13,
  kBootstrap = 64,
};

double db_to_lin(double db) {
  if (std::isinf(db) && db > 0) return std::numeric_limits<double>::infinity();
  return std::pow(10.0, db / 10.0);
}

double noise_var(double snr_lin) {
  return std::isinf(snr_lin) ? 0.0 : 1.0 / snr_lin;
}

// Unit-power QPSK payload; sync statistics only need constant modulus.
cvec draw_qpsk(int n, std::mt19937_64& rng) {
  static const double h = std::sqrt(0.5);
  std::uniform_int_distribution<int> bit(0, 1);
  cvec x(n);
  for (int i = 0; i < n; ++i) {
    const double re = bit(rng) ? h : -h;
    const double im = bit(rng) ? h : -h;
    x[i] = cdbl(re, im);
  }
  return x;
}

std::vector<int> draw_bits(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<int> b(n);
  for (int& v : b) v = bit(rng);
  return b;
}

double mean(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / x.size();
}

constexpr int kBootstrapRounds = 200;

}  // namespace

void parallel_for_trials(int trials, int threads,
                         const std::function<void(int)>& fn) {
  int k = threads > 0 ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (k < 1) k = 1;
  k = std::min(k, trials);
  if (k <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int w = 0; w < k; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(trials) * w / k);
    const int hi = static_cast<int>(static_cast<long long>(trials) * (w + 1) / k);
    pool.emplace_back([&fn, lo, hi] {
      for (int t = lo; t < hi; ++t) fn(t);
    });
  }
  for (auto& th : pool) th.join();
}

double bootstrap_se_mean(const std::vector<double>& x, std::uint64_t seed_key) {
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::mt19937_64 rng(seed_key);
  std::uniform_int_distribution<size_t> pick(0, x.size() - 1);
  std::vector<double> means(kBootstrapRounds);
  for (double& m : means) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[pick(rng)];
    m = s / x.size();
  }
  const double mu = mean(means);
  double var = 0.0;
  for (double m : means) var += (m - mu) * (m - mu);
  return std::sqrt(var / (means.size() - 1));
}

double bootstrap_se_ratio(const std::vector<double>& num,
                          const std::vector<double>& den,
                          std::uint64_t seed_key) {
  if (num.size() != den.size() || num.size() < 2)
    return std::numeric_limits<double>::quiet_NaN();
  std::mt19937_64 rng(seed_key);
  std::uniform_int_distribution<size_t> pick(0, num.size() - 1);
  std::vector<double> ratios(kBootstrapRounds);
  for (double& r : ratios) {
    double sn = 0.0, sd = 0.0;
    for (size_t i = 0; i < num.size(); ++i) {
      const size_t j = pick(rng);
      sn += num[j];
      sd += den[j];
    }
    r = sd > 0.0 ? sn / sd : 0.0;
  }
  const double mu = mean(ratios);
  double var = 0.0;
  for (double r : ratios) var += (r - mu) * (r - mu);
  return std::sqrt(var / (ratios.size() - 1));
}

std::vector<ResultRecord> run_mse_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  std::vector<ResultRecord> out;

  std::uint64_t point = 0;
  for (int cpp_len : cfg.cpp_lengths) {
    const AfdmParams p = cfg.params_for(cpp_len);
    const DaftTransform plan(p);
    for (double snr_db : cfg.snr_db) {
      const double snr = db_to_lin(snr_db);
      const double sigma2 = noise_var(snr);
      const double step = cfg.grid_step();
      const int trials = cfg.trials;

      std::vector<double> tj(trials), fj(trials), ts(trials), fs(trials);
      const std::uint64_t pid = point++;

      parallel_for_trials(trials, cfg.threads, [&](int t) {
        const std::uint64_t ti = static_cast<std::uint64_t>(t);
        auto truth_rng = make_rng(cfg.seed, {kTruth, pid, ti});
        std::uniform_int_distribution<int> theta_dist(p.cpp_len, p.n - 1);
        const int theta = theta_dist(truth_rng);
        double eps;
        if (cfg.eps_fixed) {
          eps = *cfg.eps_fixed;
        } else {
          std::uniform_real_distribution<double> eps_dist(-0.4, 0.4);
          eps = eps_dist(truth_rng);
        }

        auto data_rng = make_rng(cfg.seed, {kData, pid, ti});
        auto prev_rng = make_rng(cfg.seed, {kPrev, pid, ti});
        auto next_rng = make_rng(cfg.seed, {kNext, pid, ti});
        const cvec frame = append_cpp(plan.inverse(draw_qpsk(p.n, data_rng)), p);
        const cvec prev = append_cpp(plan.inverse(draw_qpsk(p.n, prev_rng)), p);
        const cvec next = append_cpp(plan.inverse(draw_qpsk(p.n, next_rng)), p);

        ChannelRealization ch;
        if (cfg.channel == ChannelKind::Awgn) {
          ch = ChannelRealization::identity();
        } else {
          auto chan_rng = make_rng(cfg.seed, {kChannel, pid, ti});
          ch = draw_channel(cfg.profile, chan_rng);
        }

        cvec win = observation_window(frame, prev, next, ch,
                                      OffsetTruth{theta, eps}, p);
        auto noise_rng = make_rng(cfg.seed, {kNoise, pid, ti});
        win = add_awgn(win, NoiseModel{1.0, sigma2}, noise_rng);

        const OffsetEstimate ej = joint_ml_estimate(win, p, snr, step);
        const OffsetEstimate es = stepwise_ml_estimate(win, p, snr);

        const double dn = static_cast<double>(p.n);
        tj[t] = ((ej.theta_hat - theta) / dn) * ((ej.theta_hat - theta) / dn);
        fj[t] = (ej.eps_hat - eps) * (ej.eps_hat - eps);
        ts[t] = ((es.theta_hat - theta) / dn) * ((es.theta_hat - theta) / dn);
        fs[t] = (es.eps_hat - eps) * (es.eps_hat - eps);
      });

      auto emit = [&](const char* estimator, const char* metric,
                      const std::vector<double>& vals, std::uint64_t mkey) {
        ResultRecord r;
        r.experiment = to_string(cfg.kind);
        r.channel = to_string(cfg.channel);
        r.estimator = estimator;
        r.n = p.n;
        r.cpp_len = cpp_len;
        r.snr_db = snr_db;
        r.eps = cfg.eps_fixed ? *cfg.eps_fixed
                              : std::numeric_limits<double>::quiet_NaN();
        r.metric = metric;
        r.value = mean(vals);
        r.se = bootstrap_se_mean(vals, derive_seed(cfg.seed, {kBootstrap, pid, mkey}));
        r.trials = trials;
        r.seed = cfg.seed;
        out.push_back(std::move(r));
      };
      emit("joint", "mse_theta_norm", tj, 0);
      emit("joint", "mse_eps", fj, 1);
      emit("stepwise", "mse_theta_norm", ts, 2);
      emit("stepwise", "mse_eps", fs, 3);
    }
  }
  return out;
}

std::vector<ResultRecord> run_cir_sweep(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const int cpp_len = cfg.cpp_lengths.empty() ? 1 : cfg.cpp_lengths.front();
  const AfdmParams p = cfg.params_for(cpp_len);
  auto to_db = [](double lin) {
    return std::isinf(lin) ? lin : 10.0 * std::log10(lin);
  };
  std::vector<ResultRecord> out;
  for (double eps : cfg.eps_grid) {
    for (int which = 0; which < 2; ++which) {
      ResultRecord r;
      r.experiment = to_string(cfg.kind);
      r.n = p.n;
      r.cpp_len = cpp_len;
      r.eps = eps;
      r.metric = which == 0 ? "cir_plain_db" : "cir_mm_db";
      r.value = to_db(which == 0 ? cir_plain(eps, p) : cir_mirror(eps, p));
      r.trials = 0;
      r.seed = cfg.seed;
      out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

struct BerCounters {
  double errors = 0.0;
  double bits = 0.0;
};

// One modulated block through channel + shared noise + residual CFO +
// MMSE detection.
cvec ber_chain(const cvec& block, const ChannelRealization& ch,
               const cvec& frame_noise, double eps_resid,
               const ChannelMmse& detector, const DaftTransform& plan,
               const AfdmParams& p) {
  cvec frame = append_cpp(plan.inverse(block), p);
  cvec rx = apply_channel(frame, ch, p.n);
  for (size_t i = 0; i < rx.size(); ++i) rx[i] += frame_noise[i];
  cvec body = strip_cpp(rx, p);
  for (int i = 0; i < p.n; ++i) body[i] *= cis_cycles(eps_resid * i / p.n);
  return detector.detect(plan.forward(body));
}

}  // namespace

std::vector<ResultRecord> run_ber_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const int cpp_len = cfg.cpp_lengths.front();
  const AfdmParams p = cfg.params_for(cpp_len);
  const DaftTransform plan(p);
  const int n = p.n;
  const int na = n / 2 - 1;  // mirror-mapped payload
  const int nb = n / 2;      // even-bin payload
  // Both layouts transmit at unit average power over the block.
  const double scale_mirror = std::sqrt(static_cast<double>(n) / (n - 2.0));
  const double scale_plain = std::sqrt(2.0);

  std::vector<ResultRecord> out;
  std::uint64_t point = 0;

  for (double snr_db : cfg.snr_db) {
    const double snr = db_to_lin(snr_db);
    const double sigma2 = noise_var(snr);
    const int trials = cfg.trials;
    const std::uint64_t pid = point++;

    std::vector<double> err_a(trials), err_b(trials), err_c(trials);
    std::vector<double> bits_a(trials), bits_b(trials), bits_c(trials);
    std::vector<double> resid2(trials);

    parallel_for_trials(trials, cfg.threads, [&](int t) {
      const std::uint64_t ti = static_cast<std::uint64_t>(t);
      ChannelRealization ch;
      if (cfg.channel == ChannelKind::Awgn) {
        ch = ChannelRealization::identity();
      } else {
        auto chan_rng = make_rng(cfg.seed, {kChannel, pid, ti});
        ch = draw_channel(cfg.profile, chan_rng);
      }
      const ChannelMmse detector(ch, p, sigma2, plan);

      auto noise_rng = make_rng(cfg.seed, {kNoise, pid, ti});
      cvec frame_noise(p.frame_len(), cdbl(0.0, 0.0));
      frame_noise = add_awgn(frame_noise, NoiseModel{1.0, sigma2}, noise_rng);

      // Fixed-residual mirror-mapped block.
      auto data_rng = make_rng(cfg.seed, {kData, pid, ti});
      const std::vector<int> ba = draw_bits(na, data_rng);
      cvec da(na);
      for (int i = 0; i < na; ++i)
        da[i] = cdbl(scale_mirror * (ba[i] ? 1.0 : -1.0), 0.0);
      const cvec xa = mirror_map(da, n);
      const cvec ya = mirror_demap(ber_chain(xa, ch, frame_noise,
                                             cfg.ber_eps_resid, detector,
                                             plan, p));
      int ea = 0;
      for (int i = 0; i < na; ++i) ea += (ya[i].real() >= 0.0) != (ba[i] == 1);
      err_a[t] = ea;
      bits_a[t] = na;

      // Same residual, data on even bins with nulls between.
      auto plain_rng = make_rng(cfg.seed, {kDataPlain, pid, ti});
      const std::vector<int> bb = draw_bits(nb, plain_rng);
      cvec xb(n, cdbl(0.0, 0.0));
      for (int i = 0; i < nb; ++i)
        xb[2 * i] = cdbl(scale_plain * (bb[i] ? 1.0 : -1.0), 0.0);
      const cvec yb = ber_chain(xb, ch, frame_noise, cfg.ber_eps_resid,
                                detector, plan, p);
      int eb = 0;
      for (int i = 0; i < nb; ++i) eb += (yb[2 * i].real() >= 0.0) != (bb[i] == 1);
      err_b[t] = eb;
      bits_b[t] = nb;

      // Tracking stage: estimate the CFO on an offset window through the
      // same channel draw, then transmit with the leftover residual.
      auto st_rng = make_rng(cfg.seed, {kSyncTruth, pid, ti});
      std::uniform_int_distribution<int> theta_dist(p.cpp_len, p.n - 1);
      const int theta = theta_dist(st_rng);
      auto sp_rng = make_rng(cfg.seed, {kSyncPrev, pid, ti});
      auto sd_rng = make_rng(cfg.seed, {kSyncData, pid, ti});
      auto sn_rng = make_rng(cfg.seed, {kSyncNext, pid, ti});
      const cvec sframe = append_cpp(plan.inverse(draw_qpsk(n, sd_rng)), p);
      const cvec sprev = append_cpp(plan.inverse(draw_qpsk(n, sp_rng)), p);
      const cvec snext = append_cpp(plan.inverse(draw_qpsk(n, sn_rng)), p);
      cvec win = observation_window(sframe, sprev, snext, ch,
                                    OffsetTruth{theta, cfg.ber_eps_true}, p);
      auto swin_rng = make_rng(cfg.seed, {kSyncNoise, pid, ti});
      win = add_awgn(win, NoiseModel{1.0, sigma2}, swin_rng);
      const OffsetEstimate est = stepwise_ml_estimate(win, p, snr);
      const double resid = cfg.ber_eps_true - est.eps_hat;
      resid2[t] = resid * resid;

      auto tracked_rng = make_rng(cfg.seed, {kDataTracked, pid, ti});
      const std::vector<int> bc = draw_bits(na, tracked_rng);
      cvec dc(na);
      for (int i = 0; i < na; ++i)
        dc[i] = cdbl(scale_mirror * (bc[i] ? 1.0 : -1.0), 0.0);
      const cvec xc = mirror_map(dc, n);
      const cvec yc = mirror_demap(ber_chain(xc, ch, frame_noise, resid,
                                             detector, plan, p));
      int ec = 0;
      for (int i = 0; i < na; ++i) ec += (yc[i].real() >= 0.0) != (bc[i] == 1);
      err_c[t] = ec;
      bits_c[t] = na;
    });

    auto emit = [&](const char* scheme, const std::vector<double>& errs,
                    const std::vector<double>& bits, double eps_field,
                    std::uint64_t mkey) {
      double te = 0.0, tb = 0.0;
      for (size_t i = 0; i < errs.size(); ++i) {
        te += errs[i];
        tb += bits[i];
      }
      ResultRecord r;
      r.experiment = to_string(cfg.kind);
      r.channel = to_string(cfg.channel);
      r.scheme = scheme;
      r.n = n;
      r.cpp_len = cpp_len;
      r.snr_db = snr_db;
      r.eps = eps_field;
      r.metric = "ber";
      r.value = tb > 0 ? te / tb : 0.0;
      r.se = bootstrap_se_ratio(errs, bits,
                                derive_seed(cfg.seed, {kBootstrap, pid, mkey}));
      r.trials = trials;
      r.seed = cfg.seed;
      out.push_back(r);

      r.metric = "bit_errors";
      r.value = te;
      r.se = std::numeric_limits<double>::quiet_NaN();
      out.push_back(r);
      r.metric = "bits";
      r.value = tb;
      out.push_back(std::move(r));
    };
    emit("mirror", err_a, bits_a, cfg.ber_eps_resid, 0);
    emit("plain_null", err_b, bits_b, cfg.ber_eps_resid, 1);
    emit("mirror_sync", err_c, bits_c, cfg.ber_eps_true, 2);

    ResultRecord rr;
    rr.experiment = to_string(cfg.kind);
    rr.channel = to_string(cfg.channel);
    rr.scheme = "mirror_sync";
    rr.estimator = "stepwise";
    rr.n = n;
    rr.cpp_len = cpp_len;
    rr.snr_db = snr_db;
    rr.eps = cfg.ber_eps_true;
    rr.metric = "resid_rms";
    rr.value = std::sqrt(mean(resid2));
    rr.se = std::numeric_limits<double>::quiet_NaN();
    rr.trials = trials;
    rr.seed = cfg.seed;
    out.push_back(std::move(rr));
  }
  return out;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::MseVsL:
    case ExperimentKind::MseVsSnr:
    case ExperimentKind::JointVsStepwise:
      return run_mse_experiment(cfg);
    case ExperimentKind::CirSweep:
      return run_cir_sweep(cfg);
    case ExperimentKind::Ber:
      return run_ber_experiment(cfg);
  }
  throw std::logic_error("run_experiment: unknown kind");
}

}  // namespace afdm
