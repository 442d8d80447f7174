#include "afdm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace afdm {

int ChannelRealization::max_delay() const {
  int d = 0;
  for (const PathTap& t : paths) d = std::max(d, t.delay);
  return d;
}

ChannelRealization ChannelRealization::identity() {
  return {{PathTap{cdbl(1.0, 0.0), 0, 0.0}}};
}

ChannelRealization draw_channel(const ChannelProfile& profile, std::mt19937_64& rng) {
  if (profile.paths < 1)
    throw std::invalid_argument("ChannelProfile.paths must be >= 1");
  if (profile.max_delay < 0)
    throw std::invalid_argument("ChannelProfile.max_delay must be >= 0");
  if (profile.max_doppler < 0.0)
    throw std::invalid_argument("ChannelProfile.max_doppler must be >= 0");

  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 / profile.paths));
  std::uniform_int_distribution<int> delay(0, profile.max_delay);
  // Doppler shifts land on the subcarrier grid. Over a one-symbol lag each
  // path then rotates by a full number of turns, which keeps multipath
  // correlation metrics coherent; off-grid shifts would scramble them.
  const int dop_max = static_cast<int>(std::floor(profile.max_doppler));
  std::uniform_int_distribution<int> dop(-dop_max, dop_max);

  ChannelRealization ch;
  ch.paths.resize(profile.paths);
  for (int i = 0; i < profile.paths; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    ch.paths[i].gain = cdbl(re, im);
    ch.paths[i].delay = (i == 0) ? 0 : delay(rng);
    ch.paths[i].doppler = static_cast<double>(dop(rng));
  }
  return ch;
}

cvec apply_channel(const cvec& in, const ChannelRealization& ch, int n) {
  if (n < 1) throw std::invalid_argument("apply_channel: n must be >= 1");
  const int len = static_cast<int>(in.size());
  if (ch.max_delay() >= len)
    throw std::invalid_argument("apply_channel: path delay " +
                                std::to_string(ch.max_delay()) +
                                " does not fit input of length " +
                                std::to_string(len));
  cvec out(len, cdbl(0.0, 0.0));
  for (const PathTap& t : ch.paths) {
    for (int m = t.delay; m < len; ++m) {
      out[m] += t.gain * cis_cycles(-t.doppler * m / n) * in[m - t.delay];
    }
  }
  return out;
}

cvec apply_offsets(const cvec& samples, const OffsetTruth& truth, int n) {
  if (n < 1) throw std::invalid_argument("apply_offsets: n must be >= 1");
  if (truth.theta < 0 || truth.theta > n)
    throw std::invalid_argument("apply_offsets: theta must lie in [0, N], got " +
                                std::to_string(truth.theta));
  if (!(std::abs(truth.eps) < 0.5) && truth.eps != 0.5)
    throw std::invalid_argument("apply_offsets: eps must lie in (-1/2, 1/2]");
  const int len = static_cast<int>(samples.size());
  const int w = len + n;
  cvec out(w, cdbl(0.0, 0.0));
  for (int i = 0; i < len; ++i) {
    const int idx = truth.theta + i;
    if (idx >= w) break;
    out[idx] = samples[i] * cis_cycles(truth.eps * idx / n);
  }
  return out;
}

cvec observation_window(const cvec& frame, const cvec& prev_frame,
                        const cvec& next_frame, const ChannelRealization& ch,
                        const OffsetTruth& truth, const AfdmParams& p) {
  validate(p);
  const int fl = p.frame_len();
  if (static_cast<int>(frame.size()) != fl ||
      static_cast<int>(prev_frame.size()) != fl ||
      static_cast<int>(next_frame.size()) != fl)
    throw std::invalid_argument("observation_window: frames must have length N+L");
  if (truth.theta < 0 || truth.theta > p.n)
    throw std::invalid_argument("observation_window: theta must lie in [0, N]");
  if (ch.max_delay() > p.cpp_len)
    throw std::invalid_argument("observation_window: path delay exceeds prefix length");

  cvec stream;
  stream.reserve(3 * fl);
  stream.insert(stream.end(), prev_frame.begin(), prev_frame.end());
  stream.insert(stream.end(), frame.begin(), frame.end());
  stream.insert(stream.end(), next_frame.begin(), next_frame.end());
  stream = apply_channel(stream, ch, p.n);

  // The frame starts at stream index fl and must land at window index
  // theta, so the window covers stream indices [fl - theta, ...).
  const int w = p.window_len();
  const int start = fl - truth.theta;
  cvec out(w);
  for (int i = 0; i < w; ++i) {
    out[i] = stream[start + i] * cis_cycles(truth.eps * i / p.n);
  }
  return out;
}

cvec add_awgn(const cvec& in, const NoiseModel& noise, std::mt19937_64& rng) {
  if (noise.noise_power < 0.0)
    throw std::invalid_argument("add_awgn: noise_power must be >= 0");
  cvec out(in);
  if (noise.noise_power == 0.0) return out;
  std::normal_distribution<double> gauss(0.0, std::sqrt(noise.noise_power / 2.0));
  for (cdbl& s : out) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    s += cdbl(re, im);
  }
  return out;
}

}  // namespace afdm
