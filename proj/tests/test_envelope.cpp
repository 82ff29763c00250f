#include <doctest.h>

#include <random>

#include "orienteer/envelope.hpp"
#include "support.hpp"

using namespace orienteer;
using namespace testsupport;

TEST_CASE("new envelope is a two-leaf step") {
  ProfitEnvelope env(20, 5, 3);
  CHECK(env.query(4) == 0);
  CHECK(env.query(5) == 3);
  CHECK(env.query(19) == 3);
}

TEST_CASE("zero envelope stays zero") {
  ProfitEnvelope env(20, 0, 0);
  for (Time t = 0; t < 20; ++t) CHECK(env.query(t) == 0);
}

TEST_CASE("release beyond horizon is rejected") {
  CHECK_THROWS_AS(ProfitEnvelope(20, 21, 1), Error);
}

TEST_CASE("query outside the horizon is rejected") {
  ProfitEnvelope env(20, 5, 3);
  CHECK_THROWS_AS(env.query(20), Error);
  CHECK_THROWS_AS(env.query(-1), Error);
}

TEST_CASE("apply_window adds over the window and floods past the deadline") {
  ProfitEnvelope env(20, 5, 3);
  env.apply_window(10, 12, 4);
  CHECK(env.query(9) == 3);
  CHECK(env.query(11) == 7);
  CHECK(env.query(19) == 7);
}

TEST_CASE("window on the zero envelope floods to the horizon") {
  ProfitEnvelope env(30, 0, 0);
  env.apply_window(2, 4, 5);
  CHECK(env.query(1) == 0);
  CHECK(env.query(2) == 5);
  CHECK(env.query(29) == 5);
}

TEST_CASE("a dominating later step stops the flood") {
  ProfitEnvelope env(20, 8, 10);
  env.apply_window(2, 4, 5);
  CHECK(env.query(1) == 0);
  CHECK(env.query(5) == 5);
  CHECK(env.query(7) == 5);
  CHECK(env.query(8) == 10);
}

TEST_CASE("zero-profit windows leave the envelope unchanged") {
  ProfitEnvelope env(20, 5, 3);
  auto applied = env.apply_window(1, 9, 0);
  CHECK(applied.empty());
  CHECK(env.query(4) == 0);
  CHECK(env.query(5) == 3);
}

TEST_CASE("envelope matches the naive array oracle on random sequences") {
  std::mt19937_64 rng(42);
  for (int run = 0; run < 1000; ++run) {
    Time horizon = 2 + (Time)(rng() % 199);
    Time release0 = (Time)(rng() % horizon);
    Profit p0 = (Profit)(rng() % 6);
    ProfitEnvelope env(horizon, release0, p0);
    NaiveEnvelope ref(horizon, release0, p0);
    int ops = 1 + (int)(rng() % 12);
    for (int i = 0; i < ops; ++i) {
      Time r = (Time)(rng() % horizon);
      Time d = r + (Time)(rng() % (horizon - r));
      Profit p = (Profit)(rng() % 7);
      env.apply_window(r, d, p);
      ref.apply_window(r, d, p);
    }
    for (Time t = 0; t < horizon; ++t) {
      if (env.query(t) != ref.query(t)) {
        CAPTURE(run);
        CAPTURE(t);
        REQUIRE(env.query(t) == ref.query(t));
      }
    }
  }
}

TEST_CASE("envelope stays monotone after every operation") {
  std::mt19937_64 rng(99);
  for (int run = 0; run < 200; ++run) {
    Time horizon = 5 + (Time)(rng() % 60);
    ProfitEnvelope env(horizon, (Time)(rng() % horizon), (Profit)(rng() % 4));
    for (int i = 0; i < 8; ++i) {
      Time r = (Time)(rng() % horizon);
      Time d = r + (Time)(rng() % (horizon - r));
      env.apply_window(r, d, (Profit)(rng() % 5));
      Profit prev = 0;
      for (Time t = 0; t < horizon; ++t) {
        Profit v = env.query(t);
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("applying the same window twice is bounded by one and two profits") {
  std::mt19937_64 rng(7);
  for (int run = 0; run < 100; ++run) {
    Time horizon = 10 + (Time)(rng() % 50);
    ProfitEnvelope env(horizon, (Time)(rng() % horizon), (Profit)(rng() % 4));
    NaiveEnvelope old(horizon, 0, 0);
    for (Time t = 0; t < horizon; ++t) (void)0;
    std::vector<Profit> before(horizon);
    Time r = (Time)(rng() % horizon);
    Time d = r + (Time)(rng() % (horizon - r));
    Profit p = 1 + (Profit)(rng() % 5);
    for (Time t = 0; t < horizon; ++t) before[t] = env.query(t);
    env.apply_window(r, d, p);
    env.apply_window(r, d, p);
    for (Time t = r; t <= d; ++t) {
      CHECK(env.query(t) >= before[t] + p);
      CHECK(env.query(t) <= before[t] + 2 * p);
    }
  }
}

TEST_CASE("absorb_shifted merges a shifted source into the target") {
  // target starts zero; source is a step 0 -> 4 at t = 6.
  ProfitEnvelope target(20, 0, 0);
  ProfitEnvelope source(20, 6, 4);
  auto raised = target.absorb_shifted(source, 3, 10, 5);
  // Expected: max(0, source(min(t,10)) + 5) for t >= 3: 5 on [3,6), 9 on [6,20).
  CHECK(target.query(2) == 0);
  CHECK(target.query(3) == 5);
  CHECK(target.query(5) == 5);
  CHECK(target.query(6) == 9);
  CHECK(target.query(19) == 9);
  CHECK(!raised.empty());

  // Absorbing again with a weaker profit changes nothing.
  auto raised2 = target.absorb_shifted(source, 3, 10, 2);
  CHECK(raised2.empty());
  CHECK(target.query(3) == 5);
}

TEST_CASE("absorb_shifted against a naive computation on random pairs") {
  std::mt19937_64 rng(1234);
  for (int run = 0; run < 300; ++run) {
    Time horizon = 5 + (Time)(rng() % 80);
    Time tr = (Time)(rng() % horizon), sr = (Time)(rng() % horizon);
    Profit tp = (Profit)(rng() % 4), sp = (Profit)(rng() % 4);
    ProfitEnvelope target(horizon, tr, tp);
    ProfitEnvelope source(horizon, sr, sp);
    NaiveEnvelope tref(horizon, tr, tp), sref(horizon, sr, sp);
    auto mirror = [&](ProfitEnvelope& env, NaiveEnvelope& ref) {
      for (int i = 0; i < 5; ++i) {
        Time r = (Time)(rng() % horizon);
        Time d = r + (Time)(rng() % (horizon - r));
        Profit p = (Profit)(rng() % 5);
        env.apply_window(r, d, p);
        ref.apply_window(r, d, p);
      }
    };
    mirror(target, tref);
    mirror(source, sref);

    Time r = (Time)(rng() % horizon);
    Time d = r + (Time)(rng() % (horizon - r));
    Profit p = (Profit)(rng() % 5);
    target.absorb_shifted(source, r, d, p);
    for (Time t = 0; t < horizon; ++t) {
      Profit expect = tref.query(t);
      if (t >= r) expect = std::max(expect, sref.query(std::min(t, d)) + p);
      REQUIRE(target.query(t) == expect);
    }
  }
}
