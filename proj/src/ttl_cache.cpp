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

#include "cachelab/ttl_cache.hpp"

#include <stdexcept>

namespace cachelab {

std::string_view to_string(CacheOutcome outcome) {
  switch (outcome) {
    case CacheOutcome::kHit:
      return "hit";
    case CacheOutcome::kMissAbsent:
      return "miss_absent";
    case CacheOutcome::kMissExpired:
      return "miss_expired";
  }
  return "unknown";
}

std::optional<CacheOutcome> parse_cache_outcome(std::string_view text) {
  if (text == "hit") return CacheOutcome::kHit;
  if (text == "miss_absent") return CacheOutcome::kMissAbsent;
  if (text == "miss_expired") return CacheOutcome::kMissExpired;
  return std::nullopt;
}

TtlCache::TtlCache(Duration ttl, Clock& clock) : ttl_(ttl), clock_(clock) {
  if (ttl <= Duration::zero()) {
    throw std::invalid_argument("ttl must be positive");
  }
}

LookupResult TtlCache::lookup_locked(const std::string& key, Instant now) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    ++stats_.misses_absent;
    return {CacheOutcome::kMissAbsent, std::nullopt};
  }
  if (!live(it->second, now)) {
    entries_.erase(it);
    ++stats_.misses_expired;
    return {CacheOutcome::kMissExpired, std::nullopt};
  }
  ++stats_.hits;
  return {CacheOutcome::kHit, it->second.value};
}

LookupResult TtlCache::get(const std::string& key) {
  std::lock_guard lock(mu_);
  return lookup_locked(key, clock_.now());
}

void TtlCache::put(const std::string& key, Payload value) {
  std::lock_guard lock(mu_);
  entries_.insert_or_assign(key, CacheEntry{std::move(value), clock_.now()});
  ++stats_.insertions;
}

ComputeResult TtlCache::get_or_compute(const std::string& key, const Producer& compute) {
  auto found = get(key);
  if (found.hit()) {
    return {std::move(*found.value), found.outcome};
  }
  Payload value = compute();
  put(key, value);
  return {std::move(value), found.outcome};
}

CacheStats TtlCache::stats_snapshot() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void TtlCache::reset() {
  std::lock_guard lock(mu_);
  entries_.clear();
  stats_ = {};
}

std::size_t TtlCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace cachelab
