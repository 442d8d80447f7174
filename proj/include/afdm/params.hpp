// Waveform parameter set shared by every module.
#pragma once

namespace afdm {

// N subcarriers, two chirp rates, and the chirp-periodic prefix length.
//
// For a channel whose largest normalized Doppler magnitude is alpha_max,
// full delay-Doppler separation needs c1 >= (2*alpha_max + 1)/(2N); c2 is
// a free real-valued chirp rate, conventionally 1/(2N).
struct AfdmParams {
  int n = 0;        // subcarrier count, even, >= 4
  double c1 = 0.0;  // time-domain chirp rate
  double c2 = 0.0;  // transform-domain chirp rate
  int cpp_len = 0;  // prefix length L, 1 <= L <= N

  int frame_len() const { return n + cpp_len; }
  int window_len() const { return 2 * n + cpp_len; }

  // Smallest admissible c1 for the given Doppler spread.
  static double min_c1(int n, double alpha_max);
  // Validating factory; throws std::invalid_argument on a bad combination.
  static AfdmParams make(int n, double c1, double c2, int cpp_len);
  // c1 at its minimum for alpha_max, c2 = 1/(2N).
  static AfdmParams for_doppler(int n, int cpp_len, double alpha_max);
};

// Throws std::invalid_argument naming the offending field.
void validate(const AfdmParams& p);

}  // namespace afdm
