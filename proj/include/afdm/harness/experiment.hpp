// Monte Carlo experiment runners.
//
// Every trial draws its randomness from substreams keyed by (seed, point
// index, trial index, role), and per-trial outputs land in preallocated
// slots reduced in index order, so results are byte-identical for a given
// seed regardless of thread count.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "afdm/harness/config.hpp"
#include "afdm/harness/record.hpp"

namespace afdm {

// Dispatches on cfg.kind (cir-sweep included).
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg);

// Offset-estimation MSE over a (cpp_len x snr) grid; emits per-point
// records for both estimators and both error metrics:
//   mse_theta_norm = mean ((theta^ - theta)/N)^2, mse_eps = mean (eps^ - eps)^2.
std::vector<ResultRecord> run_mse_experiment(const ExperimentConfig& cfg);

// Analytic carrier-to-interference sweep over cfg.eps_grid (dB values).
std::vector<ResultRecord> run_cir_sweep(const ExperimentConfig& cfg);

// Uncoded BPSK error rate of three block layouts under a residual CFO:
//   mirror       - mirror-mapped block, fixed residual ber_eps_resid
//   plain_null   - data on even bins, nulls elsewhere, same residual
//   mirror_sync  - mirror-mapped block, residual ber_eps_true - eps^ from
//                  a tracking stage run through the same channel draw
std::vector<ResultRecord> run_ber_experiment(const ExperimentConfig& cfg);

// Standard error of the mean (or of a ratio) by deterministic bootstrap.
double bootstrap_se_mean(const std::vector<double>& x, std::uint64_t seed_key);
double bootstrap_se_ratio(const std::vector<double>& num,
                          const std::vector<double>& den,
                          std::uint64_t seed_key);

// Runs fn(trial) for trial = 0..trials-1 on up to `threads` workers
// (0 = hardware concurrency). fn must only write to per-trial slots.
void parallel_for_trials(int trials, int threads,
                         const std::function<void(int)>& fn);

}  // namespace afdm
