// Experiment configuration and validation.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/params.hpp"

namespace afdm {

enum class ExperimentKind { MseVsL, MseVsSnr, JointVsStepwise, CirSweep, Ber };
enum class ChannelKind { Awgn, Doubly };

const char* to_string(ExperimentKind k);
const char* to_string(ChannelKind c);

// One experiment run. Leave c1/c2 unset to derive them from the channel
// profile (c1 at its Doppler minimum, c2 = 1/(2N)); leave eps_fixed
// unset to draw the CFO uniformly from [-0.4, 0.4] per trial.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MseVsL;

  int n = 256;
  std::optional<double> c1;
  std::optional<double> c2;
  std::vector<int> cpp_lengths = {20};
  std::vector<double> snr_db = {20.0};

  ChannelKind channel = ChannelKind::Awgn;
  ChannelProfile profile{5, 1, 2.0};

  int trials = 20000;
  std::uint64_t seed = 0;
  int threads = 0;             // 0: hardware concurrency
  double eps_grid_step = 0.0;  // 0: 1/(64 N)
  std::optional<double> eps_fixed;

  std::vector<double> eps_grid;  // cir-sweep abscissa

  double ber_eps_true = 0.2;    // CFO during the tracking stage
  double ber_eps_resid = 0.076; // residual CFO for the fixed-offset schemes

  // Parameter set for one prefix length, with derived chirp rates.
  AfdmParams params_for(int cpp_len) const;
  double grid_step() const { return eps_grid_step > 0.0 ? eps_grid_step : 1.0 / (64.0 * n); }
};

// Human-readable complaints, empty when the config is usable.
std::vector<std::string> config_problems(const ExperimentConfig& cfg);
// Throws std::invalid_argument listing every offending field.
void validate_config(const ExperimentConfig& cfg);

// "a,b,c" or "start:step:stop" (inclusive); accepts "inf".
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace afdm
