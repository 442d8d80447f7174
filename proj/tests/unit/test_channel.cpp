#include "doctest.h"

#include <cmath>

#include "afdm/channel.hpp"
#include "afdm/framing.hpp"
#include "afdm/rng.hpp"
#include "helpers.hpp"

using namespace afdm;
using testutil::max_abs_diff;
using testutil::phasor;
using testutil::random_cvec;

TEST_CASE("single unit path applies a pure Doppler rotation") {
  const ChannelRealization ch{{PathTap{cdbl(1.0, 0.0), 0, 1.0}}};
  auto rng = make_rng(31, {});
  const cvec in = random_cvec(8, rng);
  const cvec out = apply_channel(in, ch, 8);
  for (int i = 0; i < 8; ++i)
    CHECK(std::abs(out[i] - in[i] * phasor(-kTwoPi * i / 8.0)) < 1e-12);
}

TEST_CASE("delayed path shifts and truncates at the input length") {
  const ChannelRealization ch{{PathTap{cdbl(0.0, 2.0), 3, 0.0}}};
  cvec in{1.0, 2.0, 3.0, 4.0, 5.0};
  const cvec out = apply_channel(in, ch, 16);
  REQUIRE(out.size() == 5);
  CHECK(out[0] == cdbl(0.0, 0.0));
  CHECK(out[2] == cdbl(0.0, 0.0));
  CHECK(std::abs(out[3] - cdbl(0.0, 2.0)) < 1e-15);
  CHECK(std::abs(out[4] - cdbl(0.0, 4.0)) < 1e-15);
}

TEST_CASE("multipath output is the sum over paths") {
  auto rng = make_rng(32, {});
  const cvec in = random_cvec(24, rng);
  ChannelRealization ch;
  ch.paths = {PathTap{cdbl(0.4, -0.1), 0, 1.3},
              PathTap{cdbl(-0.2, 0.7), 2, -0.8},
              PathTap{cdbl(0.1, 0.1), 5, 0.0}};
  const cvec got = apply_channel(in, ch, 24);
  cvec ref(in.size(), cdbl(0.0, 0.0));
  for (const PathTap& t : ch.paths)
    for (size_t m = t.delay; m < in.size(); ++m)
      ref[m] += t.gain * phasor(-kTwoPi * t.doppler * m / 24.0) * in[m - t.delay];
  CHECK(max_abs_diff(got, ref) < 1e-12);
}

TEST_CASE("channel draw respects the profile") {
  const ChannelProfile prof{5, 1, 2.0};
  auto rng = make_rng(33, {});
  double power = 0.0;
  const int draws = 4000;
  for (int d = 0; d < draws; ++d) {
    const ChannelRealization ch = draw_channel(prof, rng);
    REQUIRE(ch.paths.size() == 5);
    CHECK(ch.paths[0].delay == 0);
    for (const PathTap& t : ch.paths) {
      CHECK(t.delay >= 0);
      CHECK(t.delay <= prof.max_delay);
      CHECK(std::abs(t.doppler) <= prof.max_doppler);
      power += std::norm(t.gain);
    }
  }
  // E sum |h_i|^2 = 1.
  CHECK(power / draws == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("identical seeds reproduce the channel draw") {
  const ChannelProfile prof{3, 2, 1.0};
  auto a = make_rng(99, {4, 2});
  auto b = make_rng(99, {4, 2});
  const ChannelRealization ca = draw_channel(prof, a);
  const ChannelRealization cb = draw_channel(prof, b);
  for (size_t i = 0; i < ca.paths.size(); ++i) {
    CHECK(ca.paths[i].gain == cb.paths[i].gain);
    CHECK(ca.paths[i].delay == cb.paths[i].delay);
    CHECK(ca.paths[i].doppler == cb.paths[i].doppler);
  }
}

TEST_CASE("degenerate single-path profile gives the identity shape") {
  auto rng = make_rng(34, {});
  ChannelRealization ch = draw_channel(ChannelProfile{1, 0, 0.0}, rng);
  REQUIRE(ch.paths.size() == 1);
  CHECK(ch.paths[0].delay == 0);
  CHECK(ch.paths[0].doppler == 0.0);
  ch.paths[0].gain = cdbl(1.0, 0.0);
  const cvec in = random_cvec(12, rng);
  CHECK(max_abs_diff(apply_channel(in, ch, 12), in) == 0.0);
}

TEST_CASE("offset placement rotates by window index") {
  const OffsetTruth truth{2, 0.25};
  cvec in{cdbl(1.0, 0.0), cdbl(0.0, 1.0)};
  const cvec out = apply_offsets(in, truth, 4);
  REQUIRE(out.size() == 6);
  CHECK(out[0] == cdbl(0.0, 0.0));
  CHECK(out[1] == cdbl(0.0, 0.0));
  CHECK(std::abs(out[2] - in[0] * phasor(kTwoPi * 0.25 * 2 / 4.0)) < 1e-15);
  CHECK(std::abs(out[3] - in[1] * phasor(kTwoPi * 0.25 * 3 / 4.0)) < 1e-15);
  CHECK(out[4] == cdbl(0.0, 0.0));
  CHECK(out[5] == cdbl(0.0, 0.0));
}

TEST_CASE("offset rejects an out-of-range timing") {
  CHECK_THROWS_AS(apply_offsets(cvec(4), OffsetTruth{-1, 0.0}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_offsets(cvec(4), OffsetTruth{5, 0.0}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_offsets(cvec(4), OffsetTruth{0, 0.7}, 4),
                  std::invalid_argument);
}

TEST_CASE("observation window places the frame at theta over a live stream") {
  const AfdmParams p = AfdmParams::make(16, 0.05, 1.0 / 32.0, 4);
  auto rng = make_rng(35, {});
  const cvec frame = random_cvec(p.frame_len(), rng);
  const cvec prev = random_cvec(p.frame_len(), rng);
  const cvec next = random_cvec(p.frame_len(), rng);
  ChannelRealization ch;
  ch.paths = {PathTap{cdbl(0.8, 0.1), 0, 0.6}, PathTap{cdbl(0.3, -0.2), 2, -1.1}};
  const OffsetTruth truth{9, -0.21};

  const cvec win = observation_window(frame, prev, next, ch, truth, p);
  REQUIRE(static_cast<int>(win.size()) == p.window_len());

  // Independent reconstruction: channel over the concatenated stream,
  // then slice and rotate.
  cvec stream;
  stream.insert(stream.end(), prev.begin(), prev.end());
  stream.insert(stream.end(), frame.begin(), frame.end());
  stream.insert(stream.end(), next.begin(), next.end());
  cvec rx(stream.size(), cdbl(0.0, 0.0));
  for (const PathTap& t : ch.paths)
    for (size_t m = t.delay; m < stream.size(); ++m)
      rx[m] += t.gain * phasor(-kTwoPi * t.doppler * m / p.n) * stream[m - t.delay];
  for (int w = 0; w < p.window_len(); ++w) {
    const cdbl ref = rx[p.frame_len() - truth.theta + w] *
                     phasor(kTwoPi * truth.eps * w / p.n);
    CHECK(std::abs(win[w] - ref) < 1e-12);
  }
}

TEST_CASE("awgn keeps the signal and adds the configured noise power") {
  auto rng = make_rng(36, {});
  const cvec in(5000, cdbl(1.0, -1.0));
  const double var = 0.09;
  const cvec out = add_awgn(in, NoiseModel{1.0, var}, rng);
  double measured = 0.0;
  for (size_t i = 0; i < in.size(); ++i) measured += std::norm(out[i] - in[i]);
  measured /= in.size();
  CHECK(measured == doctest::Approx(var).epsilon(0.1));
  auto rng2 = make_rng(36, {});
  const cvec silent = add_awgn(in, NoiseModel{1.0, 0.0}, rng2);
  CHECK(max_abs_diff(silent, in) == 0.0);
}
