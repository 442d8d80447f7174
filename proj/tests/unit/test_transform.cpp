#include "doctest.h"

#include <random>

#include "afdm/params.hpp"
#include "afdm/rng.hpp"
#include "afdm/transform.hpp"
#include "helpers.hpp"

using namespace afdm;
using testutil::max_abs_diff;
using testutil::phasor;
using testutil::random_cvec;

TEST_CASE("inverse transform matches its direct double-sum definition") {
  for (int n : {4, 8, 64}) {
    const AfdmParams p = AfdmParams::make(n, 0.0317, 0.0071, 1);
    auto rng = make_rng(11, {static_cast<std::uint64_t>(n)});
    const cvec x = random_cvec(n, rng);
    const cvec s = idaft(x, p);

    cvec ref(n, cdbl(0.0, 0.0));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int t = 0; t < n; ++t)
      for (int m = 0; m < n; ++m)
        ref[t] += scale *
                  phasor(kTwoPi * (p.c1 * t * t + p.c2 * m * m +
                                   static_cast<double>(t) * m / n)) *
                  x[m];
    CHECK(max_abs_diff(s, ref) < 1e-9);
  }
}

TEST_CASE("forward transform matches the conjugate definition") {
  const AfdmParams p = AfdmParams::make(16, 0.101, 0.0033, 2);
  auto rng = make_rng(12, {});
  const cvec s = random_cvec(p.n, rng);
  const cvec x = daft(s, p);

  cvec ref(p.n, cdbl(0.0, 0.0));
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.n));
  for (int m = 0; m < p.n; ++m)
    for (int t = 0; t < p.n; ++t)
      ref[m] += scale *
                phasor(-kTwoPi * (p.c1 * t * t + p.c2 * m * m +
                                  static_cast<double>(t) * m / p.n)) *
                s[t];
  CHECK(max_abs_diff(x, ref) < 1e-9);
}

TEST_CASE("transform pair is unitary") {
  for (int n : {8, 64, 256}) {
    const AfdmParams p = AfdmParams::make(n, 0.0123456789, 1.0 / (2.0 * n), 1);
    const DaftTransform plan(p);
    auto rng = make_rng(13, {static_cast<std::uint64_t>(n)});
    for (int trial = 0; trial < 10; ++trial) {
      const cvec x = random_cvec(n, rng);
      const cvec back = plan.forward(plan.inverse(x));
      CHECK(max_abs_diff(back, x) < 1e-10);
      const cvec s = plan.inverse(x);
      CHECK(std::abs(energy(s) - energy(x)) < 1e-10 * energy(x));
    }
  }
}

TEST_CASE("unit impulse maps to a pure chirp") {
  const AfdmParams p = AfdmParams::make(32, 0.07, 0.019, 3);
  cvec x(p.n, cdbl(0.0, 0.0));
  x[0] = 1.0;
  const cvec s = idaft(x, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.n));
  for (int t = 0; t < p.n; ++t) {
    CHECK(std::abs(s[t] - scale * phasor(kTwoPi * p.c1 * t * t)) < 1e-12);
  }
}

TEST_CASE("zero chirp rates reduce the transform to a DFT") {
  const AfdmParams p = AfdmParams::make(16, 0.0, 0.0, 1);
  auto rng = make_rng(14, {});
  const cvec s = random_cvec(p.n, rng);
  const cvec x = daft(s, p);
  for (int m = 0; m < p.n; ++m) {
    cdbl ref(0.0, 0.0);
    for (int t = 0; t < p.n; ++t)
      ref += s[t] * phasor(-kTwoPi * t * m / p.n);
    ref /= std::sqrt(static_cast<double>(p.n));
    CHECK(std::abs(x[m] - ref) < 1e-10);
  }
}

TEST_CASE("transform rejects wrong lengths and bad parameters") {
  const AfdmParams p = AfdmParams::make(8, 0.1, 0.01, 2);
  const DaftTransform plan(p);
  CHECK_THROWS_AS(plan.forward(cvec(7)), std::invalid_argument);
  CHECK_THROWS_AS(plan.inverse(cvec(9)), std::invalid_argument);
  CHECK_THROWS_AS(AfdmParams::make(7, 0.1, 0.01, 2), std::invalid_argument);
  CHECK_THROWS_AS(AfdmParams::make(2, 0.1, 0.01, 1), std::invalid_argument);
  CHECK_THROWS_AS(AfdmParams::make(8, 0.1, 0.01, 0), std::invalid_argument);
  CHECK_THROWS_AS(AfdmParams::make(8, 0.1, 0.01, 9), std::invalid_argument);
}

TEST_CASE("doppler-derived parameters hit the design point") {
  const AfdmParams p = AfdmParams::for_doppler(256, 20, 2.0);
  CHECK(p.c1 == doctest::Approx(5.0 / 512.0).epsilon(1e-15));
  CHECK(p.c2 == doctest::Approx(1.0 / 512.0).epsilon(1e-15));
  CHECK(p.frame_len() == 276);
  CHECK(p.window_len() == 532);
}
