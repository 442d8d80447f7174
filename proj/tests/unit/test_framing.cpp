#include "doctest.h"

#include "afdm/framing.hpp"
#include "afdm/params.hpp"
#include "afdm/rng.hpp"
#include "helpers.hpp"

using namespace afdm;
using testutil::max_abs_diff;
using testutil::phasor;
using testutil::random_cvec;

TEST_CASE("prefix copies the body tail with the chirp continuation factor") {
  const AfdmParams p = AfdmParams::make(8, 0.07, 0.01, 2);
  auto rng = make_rng(21, {});
  const cvec body = random_cvec(p.n, rng);
  const cvec frame = append_cpp(body, p);

  REQUIRE(frame.size() == 10);
  // k = 0: body[6] * e^{-j 2 pi 0.07 (64 + 16 (0 - 2))}
  CHECK(std::abs(frame[0] - body[6] * phasor(-kTwoPi * 0.07 * 32.0)) < 1e-12);
  // k = 1: body[7] * e^{-j 2 pi 0.07 (64 + 16 (1 - 2))}
  CHECK(std::abs(frame[1] - body[7] * phasor(-kTwoPi * 0.07 * 48.0)) < 1e-12);
  for (int i = 0; i < p.n; ++i) CHECK(frame[2 + i] == body[i]);
}

TEST_CASE("integer 2Nc1 reduces the prefix to a plain cyclic copy") {
  const AfdmParams p = AfdmParams::for_doppler(256, 20, 2.0);  // c1 = 5/512
  auto rng = make_rng(22, {});
  const cvec body = random_cvec(p.n, rng);
  const cvec frame = append_cpp(body, p);
  for (int k = 0; k < p.cpp_len; ++k) {
    CHECK(std::abs(frame[k] - body[k + p.n - p.cpp_len]) < 1e-13);
  }
}

TEST_CASE("strip undoes append") {
  const AfdmParams p = AfdmParams::make(64, 0.0321, 0.004, 17);
  auto rng = make_rng(23, {});
  const cvec body = random_cvec(p.n, rng);
  CHECK(max_abs_diff(strip_cpp(append_cpp(body, p), p), body) == 0.0);
}

TEST_CASE("framing rejects wrong lengths") {
  const AfdmParams p = AfdmParams::make(8, 0.1, 0.01, 2);
  CHECK_THROWS_AS(append_cpp(cvec(7), p), std::invalid_argument);
  CHECK_THROWS_AS(strip_cpp(cvec(8), p), std::invalid_argument);
}

TEST_CASE("full prefix length is allowed") {
  const AfdmParams p = AfdmParams::make(8, 0.05, 0.01, 8);
  auto rng = make_rng(24, {});
  const cvec body = random_cvec(p.n, rng);
  const cvec frame = append_cpp(body, p);
  REQUIRE(frame.size() == 16);
  CHECK(max_abs_diff(strip_cpp(frame, p), body) == 0.0);
}
