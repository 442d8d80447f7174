// Doubly dispersive channel model, receiver offsets, and AWGN.
#pragma once

#include <random>
#include <vector>

#include "afdm/params.hpp"
#include "afdm/types.hpp"

namespace afdm {

// Statistical description of the channel draw.
struct ChannelProfile {
  int paths = 5;            // number of taps, >= 1
  int max_delay = 1;        // delays drawn from {0..max_delay}, path 0 at 0
  double max_doppler = 2.0; // normalized Doppler drawn from [-a, a]
};

struct PathTap {
  cdbl gain;       // complex amplitude
  int delay;       // integer delay in samples
  double doppler;  // normalized Doppler (cycles per N samples)
};

struct ChannelRealization {
  std::vector<PathTap> paths;

  int max_delay() const;
  // Single unit-gain tap at delay 0, zero Doppler.
  static ChannelRealization identity();
};

struct NoiseModel {
  double signal_power = 1.0;  // average symbol power at the channel output
  double noise_power = 0.0;   // complex noise variance per sample
};

// Receiver-side timing/frequency offsets.
struct OffsetTruth {
  int theta = 0;     // integer timing offset, 0 <= theta <= N
  double eps = 0.0;  // fractional CFO, |eps| < 1/2
};

// Draws gains CN(0, 1/paths), delays uniform on {0..max_delay} with path 0
// pinned to delay 0, Doppler uniform on [-max_doppler, max_doppler).
ChannelRealization draw_channel(const ChannelProfile& profile, std::mt19937_64& rng);

// r[m] = sum_i h_i e^{-j 2 pi alpha_i m / n} s[m - l_i]; output has the
// input's length, so trailing delay spill is dropped. n sets the Doppler
// normalization.
cvec apply_channel(const cvec& in, const ChannelRealization& ch, int n);

// Places `samples` at delay theta inside a zero-filled window of length
// samples.size() + n and applies e^{j 2 pi eps w / n} by window index w.
cvec apply_offsets(const cvec& samples, const OffsetTruth& truth, int n);

// Window of length 2N+L as the receiver sees it: the frame sits between
// its streamed neighbours, the channel acts on the whole stream, and the
// CFO rotates by window index. prev/next keep the off-frame samples
// statistically identical to the in-frame ones.
cvec observation_window(const cvec& frame, const cvec& prev_frame,
                        const cvec& next_frame, const ChannelRealization& ch,
                        const OffsetTruth& truth, const AfdmParams& p);

// Adds circular complex Gaussian noise of variance noise.noise_power.
cvec add_awgn(const cvec& in, const NoiseModel& noise, std::mt19937_64& rng);

}  // namespace afdm
