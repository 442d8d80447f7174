// Shared helpers for the unit tests.
#pragma once

#include <random>

#include "afdm/types.hpp"

namespace testutil {

inline afdm::cvec random_cvec(int n, std::mt19937_64& rng, double sigma = 1.0) {
  std::normal_distribution<double> g(0.0, sigma);
  afdm::cvec v(n);
  for (afdm::cdbl& s : v) s = afdm::cdbl(g(rng), g(rng));
  return v;
}

inline double max_abs_diff(const afdm::cvec& a, const afdm::cvec& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Phasor from a raw angle; used by oracles so they do not share the
// library's cycle reduction.
inline afdm::cdbl phasor(double angle) {
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace testutil
