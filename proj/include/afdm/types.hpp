// Shared sample-buffer aliases and phase helpers.
#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace afdm {

using cdbl = std::complex<double>;
using cvec = std::vector<cdbl>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Fractional part mapped into [0, 1).
inline double frac01(double cycles) {
  double f = std::fmod(cycles, 1.0);
  return f < 0.0 ? f + 1.0 : f;
}

// e^{j 2 pi cycles}. The angle is reduced modulo one cycle before the
// trig calls so quadratic chirp phases keep full precision even when the
// raw cycle count is large.
inline cdbl cis_cycles(double cycles) {
  double a = kTwoPi * frac01(cycles);
  return {std::cos(a), std::sin(a)};
}

inline double energy(const cvec& v) {
  double e = 0.0;
  for (const cdbl& s : v) e += std::norm(s);
  return e;
}

}  // namespace afdm
