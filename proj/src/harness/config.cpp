#include "afdm/harness/config.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace afdm {

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::MseVsL: return "mse-vs-l";
    case ExperimentKind::MseVsSnr: return "mse-vs-snr";
    case ExperimentKind::JointVsStepwise: return "joint-vs-stepwise";
    case ExperimentKind::CirSweep: return "cir-sweep";
    case ExperimentKind::Ber: return "ber";
  }
  return "?";
}

const char* to_string(ChannelKind c) {
  return c == ChannelKind::Awgn ? "awgn" : "doubly";
}

AfdmParams ExperimentConfig::params_for(int cpp_len) const {
  const double c1v = c1 ? *c1 : AfdmParams::min_c1(n, profile.max_doppler);
  const double c2v = c2 ? *c2 : 1.0 / (2.0 * n);
  return AfdmParams::make(n, c1v, c2v, cpp_len);
}

std::vector<std::string> config_problems(const ExperimentConfig& cfg) {
  std::vector<std::string> bad;
  if (cfg.n < 4 || cfg.n % 2 != 0) bad.push_back("n: must be even and >= 4");
  if (cfg.cpp_lengths.empty() && cfg.kind != ExperimentKind::CirSweep)
    bad.push_back("cpp_lengths: at least one prefix length required");
  for (int l : cfg.cpp_lengths)
    if (l < 1 || l > cfg.n) bad.push_back("cpp_lengths: must satisfy 1 <= L <= N");
  if (cfg.snr_db.empty() && cfg.kind != ExperimentKind::CirSweep)
    bad.push_back("snr_db: at least one SNR required");
  for (double s : cfg.snr_db)
    if (std::isnan(s)) bad.push_back("snr_db: NaN entry");
  if (cfg.profile.paths < 1) bad.push_back("profile.paths: must be >= 1");
  if (cfg.profile.max_delay < 0) bad.push_back("profile.max_delay: must be >= 0");
  if (cfg.profile.max_doppler < 0) bad.push_back("profile.max_doppler: must be >= 0");
  if (cfg.channel == ChannelKind::Doubly) {
    for (int l : cfg.cpp_lengths)
      if (cfg.profile.max_delay > l)
        bad.push_back("profile.max_delay: exceeds a configured prefix length");
  }
  if (cfg.trials < 1) bad.push_back("trials: must be >= 1");
  if (cfg.threads < 0) bad.push_back("threads: must be >= 0");
  if (cfg.eps_grid_step < 0 || cfg.eps_grid_step > 1)
    bad.push_back("eps_grid_step: must lie in (0, 1] or 0 for the default");
  if (cfg.eps_fixed && !(std::abs(*cfg.eps_fixed) < 0.5))
    bad.push_back("eps_fixed: |eps| must be < 1/2");
  if (cfg.kind == ExperimentKind::CirSweep) {
    if (cfg.eps_grid.empty()) bad.push_back("eps_grid: at least one eps required");
    for (double e : cfg.eps_grid)
      if (!(std::abs(e) < 1.0)) bad.push_back("eps_grid: |eps| must be < 1");
  }
  if (cfg.kind == ExperimentKind::Ber) {
    if (!(std::abs(cfg.ber_eps_true) < 0.5))
      bad.push_back("ber_eps_true: |eps| must be < 1/2");
    if (!(std::abs(cfg.ber_eps_resid) < 1.0))
      bad.push_back("ber_eps_resid: |eps| must be < 1");
    if (cfg.n < 8) bad.push_back("n: mirror mapping needs N >= 8");
  }
  if (cfg.c1 && !std::isfinite(*cfg.c1)) bad.push_back("c1: must be finite");
  if (cfg.c2 && !std::isfinite(*cfg.c2)) bad.push_back("c2: must be finite");
  return bad;
}

void validate_config(const ExperimentConfig& cfg) {
  const auto bad = config_problems(cfg);
  if (bad.empty()) return;
  std::ostringstream os;
  os << "invalid experiment config:";
  for (const auto& b : bad) os << "\n  - " << b;
  throw std::invalid_argument(os.str());
}

namespace {

double parse_one(const std::string& tok) {
  std::string t;
  for (char c : tok)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  if (t == "-inf") return -std::numeric_limits<double>::infinity();
  size_t pos = 0;
  double v = std::stod(t, &pos);
  if (pos != t.size())
    throw std::invalid_argument("bad number in list: '" + tok + "'");
  return v;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::istringstream is(text);
    std::string a, b, c;
    if (!std::getline(is, a, ':') || !std::getline(is, b, ':') ||
        !std::getline(is, c))
      throw std::invalid_argument("range must be start:step:stop: '" + text + "'");
    const double start = parse_one(a), step = parse_one(b), stop = parse_one(c);
    if (!(step > 0)) throw std::invalid_argument("range step must be > 0");
    const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count < 1) throw std::invalid_argument("empty range: '" + text + "'");
    for (long i = 0; i < count; ++i) out.push_back(start + i * step);
    return out;
  }
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(parse_one(tok));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) {
    const long r = std::lround(v);
    if (std::abs(v - r) > 1e-9)
      throw std::invalid_argument("expected integers: '" + text + "'");
    out.push_back(static_cast<int>(r));
  }
  return out;
}

}  // namespace afdm
