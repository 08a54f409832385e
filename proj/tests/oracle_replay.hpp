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

// Runs a random operation log against TtlCache under a simulated clock and
// against CacheOracle in lockstep, reporting the first divergence.

#ifndef CACHELAB_TESTS_ORACLE_REPLAY_HPP_
#define CACHELAB_TESTS_ORACLE_REPLAY_HPP_

#include <optional>
#include <sstream>
#include <string>

#include "cache_oracle.hpp"
#include "cachelab/clock.hpp"
#include "cachelab/ttl_cache.hpp"

namespace cachelab::testing {

inline OracleOutcome to_oracle(CacheOutcome o) {
  switch (o) {
    case CacheOutcome::kHit: return OracleOutcome::kHit;
    case CacheOutcome::kMissAbsent: return OracleOutcome::kMissAbsent;
    case CacheOutcome::kMissExpired: return OracleOutcome::kMissExpired;
  }
  return OracleOutcome::kMissAbsent;
}

/// nullopt when the cache agreed with the oracle on every outcome, every
/// returned value, every compute count and the final stats.
inline std::optional<std::string> replay_against_oracle(const OpLog& log) {
  SimulatedClock clock;
  TtlCache cache(std::chrono::milliseconds(log.ttl_ms), clock);
  CacheOracle oracle(log.ttl_ms);
  auto now_ms = [&] { return to_millis(clock.now().time_since_epoch()); };

  for (std::size_t i = 0; i < log.ops.size(); ++i) {
    const Op& op = log.ops[i];
    auto fail = [&](const std::string& what) {
      std::ostringstream msg;
      msg << "op " << i << " (ttl " << log.ttl_ms << ", t=" << now_ms() << "): " << what;
      return msg.str();
    };
    switch (op.kind) {
      case Op::kAdvance:
        clock.advance(std::chrono::milliseconds(op.ms));
        break;
      case Op::kPut:
        cache.put(op.key, op.value);
        oracle.store(now_ms(), op.key, op.value);
        break;
      case Op::kGet: {
        auto got = cache.get(op.key);
        auto want = oracle.lookup(now_ms(), op.key);
        if (to_oracle(got.outcome) != want.first) return fail("get outcome differs");
        if (got.value != want.second) return fail("get value differs");
        break;
      }
      case Op::kGetOrCompute: {
        const auto t = now_ms();
        auto want = oracle.lookup(t, op.key);
        std::uint64_t calls = 0;
        auto got = cache.get_or_compute(op.key, [&] {
          ++calls;
          clock.advance(std::chrono::milliseconds(op.ms));
          return op.value;
        });
        if (to_oracle(got.outcome) != want.first) return fail("get_or_compute outcome differs");
        if (want.first == OracleOutcome::kHit) {
          if (calls != 0) return fail("compute ran on a hit");
          if (got.value != *want.second) return fail("hit value differs");
        } else {
          if (calls != 1) return fail("compute did not run exactly once on a miss");
          if (got.value != op.value) return fail("miss returned a value other than the computed one");
          oracle.store(t + op.ms, op.key, op.value);
        }
        break;
      }
      case Op::kReset:
        cache.reset();
        oracle.reset();
        break;
    }
    const auto s = cache.stats_snapshot();
    const auto& o = oracle.stats();
    if (s.hits != o.hits || s.misses_absent != o.misses_absent ||
        s.misses_expired != o.misses_expired || s.insertions != o.insertions) {
      return fail("stats differ");
    }
  }
  return std::nullopt;
}

}  // namespace cachelab::testing

#endif  // CACHELAB_TESTS_ORACLE_REPLAY_HPP_
