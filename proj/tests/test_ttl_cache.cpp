// Copyright 2026 The cachelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cachelab/ttl_cache.hpp"
#include "doctest.h"
#include "oracle_replay.hpp"
#include "timeline_oracle.hpp"

using namespace cachelab;
using namespace std::chrono_literals;

namespace {

struct Fixture {
  SimulatedClock clock;
  TtlCache cache{5000ms, clock};
};

}  // namespace

TEST_CASE("ttl must be positive") {
  SimulatedClock clock;
  CHECK_THROWS_AS(TtlCache(0ms, clock), std::invalid_argument);
  CHECK_THROWS_AS(TtlCache(-1ms, clock), std::invalid_argument);
}

TEST_CASE_FIXTURE(Fixture, "get on an empty cache is an absent miss") {
  auto r = cache.get("k");
  CHECK(r.outcome == CacheOutcome::kMissAbsent);
  CHECK_FALSE(r.value);
  CHECK(cache.stats_snapshot().misses_absent == 1);
}

TEST_CASE_FIXTURE(Fixture, "expiry boundary is strict") {
  cache.put("k", "v");
  SUBCASE("age 0 is live") { CHECK(cache.get("k").hit()); }
  SUBCASE("age ttl-1 is live") {
    clock.set(at_ms(4999));
    auto r = cache.get("k");
    CHECK(r.hit());
    CHECK(r.value == "v");
  }
  SUBCASE("age == ttl is expired and evicted") {
    clock.set(at_ms(5000));
    CHECK(cache.get("k").outcome == CacheOutcome::kMissExpired);
    CHECK(cache.size() == 0);
    CHECK(cache.get("k").outcome == CacheOutcome::kMissAbsent);
  }
}

TEST_CASE_FIXTURE(Fixture, "put overwrites and restarts the ttl") {
  cache.put("k", "v1");
  cache.put("k", "v2");
  CHECK(cache.get("k").value == "v2");

  clock.set(at_ms(3000));
  cache.put("k", "v3");
  clock.set(at_ms(7000));
  auto r = cache.get("k");
  CHECK(r.hit());
  CHECK(r.value == "v3");
  CHECK(cache.stats_snapshot().insertions == 3);
}

TEST_CASE_FIXTURE(Fixture, "get_or_compute computes once per miss") {
  int calls = 0;
  auto compute = [&] {
    ++calls;
    return std::string("r");
  };
  auto first = cache.get_or_compute("k", compute);
  CHECK(first.value == "r");
  CHECK(first.outcome == CacheOutcome::kMissAbsent);
  auto second = cache.get_or_compute("k", compute);
  CHECK(second.value == "r");
  CHECK(second.outcome == CacheOutcome::kHit);
  CHECK(calls == 1);
}

TEST_CASE("get_or_compute stamps entries with the completion time") {
  SimulatedClock clock;
  TtlCache cache(700ms, clock);
  cache.get_or_compute("k", [&] {
    clock.advance(200ms);
    return std::string("r");
  });
  // Stored at 200, so age at 850 is 650 < 700.
  clock.set(at_ms(850));
  CHECK(cache.get("k").hit());
  clock.set(at_ms(900));
  CHECK(cache.get("k").outcome == CacheOutcome::kMissExpired);
}

TEST_CASE_FIXTURE(Fixture, "a failing compute stores nothing but counts the miss") {
  CHECK_THROWS_AS(cache.get_or_compute("k", []() -> std::string { throw std::runtime_error("boom"); }),
                  std::runtime_error);
  auto s = cache.stats_snapshot();
  CHECK(s.misses_absent == 1);
  CHECK(s.insertions == 0);
  CHECK(cache.size() == 0);
  CHECK(cache.get_or_compute("k", [] { return std::string("ok"); }).outcome ==
        CacheOutcome::kMissAbsent);
}

TEST_CASE_FIXTURE(Fixture, "reset clears entries and counters") {
  cache.reset();
  CHECK(cache.stats_snapshot() == CacheStats{});
  CHECK(cache.size() == 0);

  cache.put("k", "v");
  cache.get("k");
  cache.reset();
  CHECK(cache.stats_snapshot() == CacheStats{});
  CHECK(cache.get("k").outcome == CacheOutcome::kMissAbsent);
  auto s = cache.stats_snapshot();
  CHECK(s.misses_absent == 1);
  CHECK(s.lookups() == 1);
}

TEST_CASE("outcome names round-trip") {
  for (auto o : {CacheOutcome::kHit, CacheOutcome::kMissAbsent, CacheOutcome::kMissExpired}) {
    CHECK(parse_cache_outcome(to_string(o)) == o);
  }
  CHECK_FALSE(parse_cache_outcome("none"));
  CHECK_FALSE(parse_cache_outcome("miss"));
}

TEST_CASE("fixed-interval timeline with ttl 700, delay 200, interval 250") {
  const auto steps = testing::fixed_interval_timeline(10, 250, 200, 700);
  const std::vector<std::string> expected = {"miss_absent", "hit", "hit", "hit", "miss_expired",
                                             "hit", "hit", "hit", "miss_expired", "hit"};
  REQUIRE(steps.size() == expected.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    CHECK(steps[i].outcome == expected[i]);
    CHECK(steps[i].send_ms == static_cast<std::int64_t>(i) * 250);
  }

  // Same scenario driven through the cache with simulated time.
  SimulatedClock clock;
  TtlCache cache(700ms, clock);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    clock.set(at_ms(steps[i].send_ms));
    auto r = cache.get_or_compute("/compute", [&] {
      clock.advance(200ms);
      return std::string("payload");
    });
    CHECK(to_string(r.outcome) == expected[i]);
  }
  auto s = cache.stats_snapshot();
  CHECK(s.hits == 7);
  CHECK(s.misses() == 3);
  CHECK(s.insertions == 3);
}

TEST_CASE("random operation logs agree with the replay oracle") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int i = 0; i < 300; ++i) {
    auto log = testing::random_op_log(rng, 200);
    auto mismatch = testing::replay_against_oracle(log);
    INFO("case " << i);
    CHECK_MESSAGE(!mismatch, (mismatch ? *mismatch : std::string()));
  }
}

TEST_CASE("identical logs give identical outcomes and stats") {
  std::mt19937_64 rng(42);
  auto log = testing::random_op_log(rng, 500);
  auto run = [&] {
    SimulatedClock clock;
    TtlCache cache(std::chrono::milliseconds(log.ttl_ms), clock);
    std::vector<CacheOutcome> outcomes;
    for (const auto& op : log.ops) {
      switch (op.kind) {
        case testing::Op::kAdvance: clock.advance(std::chrono::milliseconds(op.ms)); break;
        case testing::Op::kPut: cache.put(op.key, op.value); break;
        case testing::Op::kGet: outcomes.push_back(cache.get(op.key).outcome); break;
        case testing::Op::kGetOrCompute:
          outcomes.push_back(cache.get_or_compute(op.key, [&] { return op.value; }).outcome);
          break;
        case testing::Op::kReset: cache.reset(); break;
      }
    }
    return std::make_pair(outcomes, cache.stats_snapshot());
  };
  auto first = run();
  for (int i = 0; i < 5; ++i) CHECK(run() == first);
}

TEST_CASE("concurrent callers keep the counters conserved") {
  SteadyClock& clock = SteadyClock::instance();
  TtlCache cache(1ms, clock);
  constexpr int kThreads = 8;
  constexpr int kOps = 2000;
  std::atomic<int> computes{0};
  std::atomic<bool> monotone{true};
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      CacheStats prev;
      for (int i = 0; i < kOps; ++i) {
        std::string key = "k" + std::to_string((t + i) % 3);
        if (i % 2) {
          cache.get(key);
        } else {
          auto r = cache.get_or_compute(key, [&] {
            ++computes;
            return key;
          });
          if (r.value != key) monotone = false;
        }
        auto s = cache.stats_snapshot();
        if (s.hits < prev.hits || s.misses_absent < prev.misses_absent ||
            s.misses_expired < prev.misses_expired || s.insertions < prev.insertions) {
          monotone = false;
        }
        prev = s;
      }
    });
  }
  for (auto& th : threads) th.join();
  auto s = cache.stats_snapshot();
  CHECK(monotone);
  CHECK(s.lookups() == static_cast<std::uint64_t>(kThreads * kOps));
  CHECK(s.insertions == static_cast<std::uint64_t>(computes.load()));
}
