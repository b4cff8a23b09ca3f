#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "arbor/core.hpp"
#include "arbor/value.hpp"

using namespace arbor;

TEST_SUITE("core") {

TEST_CASE("single steps") {
  CHECK(step(Value(15), MapVariant::kShortcut) == Value(23));
  CHECK(step(Value(2), MapVariant::kShortcut) == Value(1));
  CHECK(step(Value(1), MapVariant::kShortcut) == Value(2));
  CHECK(step(Value(27), MapVariant::kClassic) == Value(82));
  CHECK(step(Value(27), MapVariant::kShortcut) == Value(41));
  CHECK(step(Value(82), MapVariant::kClassic) == Value(41));
  CHECK_THROWS_AS(step(Value(0), MapVariant::kShortcut), DomainError);
  CHECK_THROWS_AS(step(Value(0), MapVariant::kClassic), DomainError);
}

TEST_CASE("iterate fixed step counts") {
  CHECK(iterate(Value(31), 5, MapVariant::kShortcut) == Value(242));
  CHECK(iterate(Value(79), 3, MapVariant::kShortcut) == Value(269));
  CHECK(iterate(Value(7), 0, MapVariant::kShortcut) == Value(7));
  CHECK(iterate(Value(27), 2, MapVariant::kClassic) == Value(41));
}

TEST_CASE("trajectory goldens") {
  Trajectory t15 = trajectory(Value(15), MapVariant::kShortcut);
  REQUIRE(t15.values.size() >= 5);
  CHECK(t15.values[0] == Value(15));
  CHECK(t15.values[1] == Value(23));
  CHECK(t15.values[2] == Value(35));
  CHECK(t15.values[3] == Value(53));
  CHECK(t15.values[4] == Value(80));
  CHECK(t15.terminated);
  CHECK(t15.values.back() == Value(1));

  Trajectory t1 = trajectory(Value(1), MapVariant::kShortcut);
  CHECK(t1.steps == 0);
  CHECK(t1.terminated);
  CHECK(t1.values.size() == 1);
  CHECK(t1.peak == Value(1));

  Trajectory t27 = trajectory(Value(27), MapVariant::kShortcut);
  CHECK(t27.steps == 70);
  CHECK(t27.peak == Value(4616));
  CHECK(t27.terminated);
  CHECK(t27.values.size() == 71);
}

TEST_CASE("trajectory respects the step budget") {
  Trajectory t = trajectory(Value(27), MapVariant::kShortcut, 10);
  CHECK(!t.terminated);
  CHECK(t.steps == 10);
  CHECK(t.values.size() == 11);
  CHECK(t.values.back() != Value(1));
}

TEST_CASE("trajectory agrees with the direct iteration oracle") {
  for (oracle::u64 d = 1; d <= 10000; d += 2) {
    oracle::Run ref = oracle::run_shortcut(d, 1u << 16);
    Trajectory t = trajectory(Value(d), MapVariant::kShortcut);
    REQUIRE(t.terminated == ref.converged);
    REQUIRE(t.steps == ref.steps);
    REQUIRE(t.peak == Value(u128{ref.peak}));
  }
}

TEST_CASE("classic and shortcut visit the same odd values") {
  for (oracle::u64 d = 1; d <= 2000; ++d) {
    Trajectory s = trajectory(Value(d), MapVariant::kShortcut);
    Trajectory c = trajectory(Value(d), MapVariant::kClassic);
    REQUIRE(s.terminated);
    REQUIRE(c.terminated);
    std::set<oracle::u128> odd_s, odd_c;
    oracle::u64 odd_count = 0;
    for (const Value& v : c.values) {
      if (v.is_odd()) {
        odd_c.insert(v.as_u128());
        if (v != Value(1)) ++odd_count;
      }
    }
    for (const Value& v : s.values) {
      if (v.is_odd()) odd_s.insert(v.as_u128());
    }
    REQUIRE(odd_s == odd_c);
    REQUIRE(c.steps == s.steps + odd_count);
  }
}

TEST_CASE("odd ascent goldens") {
  CHECK(odd_ascent(Value(31), 5) == Value(242));
  CHECK(odd_ascent(Value(1), 1) == Value(2));
  CHECK(odd_ascent(Value(79), 4) == Value(404));
  CHECK(odd_ascent(Value(79), 0) == Value(79));
  CHECK_THROWS_AS(odd_ascent(Value(80), 1), DomainError);
  CHECK_THROWS_AS(odd_ascent(Value(79), 5), DomainError);
}

TEST_CASE("odd ascent equals iteration while powers of two divide") {
  for (oracle::u64 d = 1; d <= 2001; d += 2) {
    unsigned n = oracle::v2(d + 1);
    for (unsigned k = 0; k <= n; ++k) {
      Value a = odd_ascent(Value(d), k);
      REQUIRE(a == iterate(Value(d), k, MapVariant::kShortcut));
      if (k < n) REQUIRE(a.is_odd());
    }
    REQUIRE(odd_ascent(Value(d), n).is_even());
  }
}

}  // TEST_SUITE
