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

#ifndef CACHELAB_TTL_CACHE_HPP_
#define CACHELAB_TTL_CACHE_HPP_

#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "cachelab/clock.hpp"

namespace cachelab {

using Payload = std::string;

enum class CacheOutcome { kHit, kMissAbsent, kMissExpired };

/// "hit", "miss_absent", "miss_expired".
std::string_view to_string(CacheOutcome outcome);
std::optional<CacheOutcome> parse_cache_outcome(std::string_view text);

inline bool is_miss(CacheOutcome outcome) { return outcome != CacheOutcome::kHit; }

struct CacheEntry {
  Payload value;
  Instant stored_at;
};

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses_absent = 0;
  std::uint64_t misses_expired = 0;
  std::uint64_t insertions = 0;

  std::uint64_t misses() const { return misses_absent + misses_expired; }
  std::uint64_t lookups() const { return hits + misses(); }

  friend bool operator==(const CacheStats&, const CacheStats&) = default;
};

struct LookupResult {
  CacheOutcome outcome;
  std::optional<Payload> value;  // engaged iff outcome == kHit

  bool hit() const { return outcome == CacheOutcome::kHit; }
};

struct ComputeResult {
  Payload value;
  CacheOutcome outcome;
};

/// In-memory key/value cache with one fixed time-to-live.
///
/// An entry stored at t0 is live at t iff t - t0 < ttl; an entry whose age
/// equals the ttl is already expired. Expired entries are dropped lazily by
/// the lookup that finds them. There is no capacity bound and no background
/// sweeper.
///
/// Every public member is safe to call concurrently. get_or_compute runs the
/// producer outside the lock, so two concurrent misses on one key both
/// compute and the later store wins.
class TtlCache {
 public:
  using Producer = std::function<Payload()>;

  /// Throws std::invalid_argument if ttl <= 0. The clock must outlive the cache.
  TtlCache(Duration ttl, Clock& clock);

  TtlCache(const TtlCache&) = delete;
  TtlCache& operator=(const TtlCache&) = delete;

  LookupResult get(const std::string& key);
  void put(const std::string& key, Payload value);

  /// On a miss, runs compute exactly once and stores its result stamped with
  /// the clock reading taken after compute returns. If compute throws, the
  /// exception propagates, nothing is stored, and the miss stays counted.
  ComputeResult get_or_compute(const std::string& key, const Producer& compute);

  CacheStats stats_snapshot() const;

  /// Drops all entries and zeroes the counters.
  void reset();

  Duration ttl() const { return ttl_; }
  std::size_t size() const;

 private:
  bool live(const CacheEntry& entry, Instant now) const { return now - entry.stored_at < ttl_; }
  LookupResult lookup_locked(const std::string& key, Instant now);

  const Duration ttl_;
  Clock& clock_;

  mutable std::mutex mu_;
  std::unordered_map<std::string, CacheEntry> entries_;
  CacheStats stats_;
};

}  // namespace cachelab

#endif  // CACHELAB_TTL_CACHE_HPP_
