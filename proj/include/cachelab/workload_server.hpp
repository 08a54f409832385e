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

#ifndef CACHELAB_WORKLOAD_SERVER_HPP_
#define CACHELAB_WORKLOAD_SERVER_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cachelab/clock.hpp"
#include "cachelab/ttl_cache.hpp"

namespace cachelab {

enum class ServerMode { kUncached, kCached };

std::string_view to_string(ServerMode mode);
std::optional<ServerMode> parse_server_mode(std::string_view text);

struct ServerConfig {
  ServerMode mode = ServerMode::kUncached;
  std::int64_t delay_ms = 1000;
  std::optional<std::int64_t> ttl_ms;  // required iff mode == kCached
  int listen_port = 8080;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Result of one /compute request as seen from inside the handler.
struct TimedResponse {
  Payload body;
  std::int64_t server_duration_ms = 0;   // handler entry to exit, truncated
  std::optional<CacheOutcome> outcome;   // nullopt in uncached mode
};

/// Header/body spelling of an outcome: hit, miss_absent, miss_expired or none.
std::string_view outcome_label(const std::optional<CacheOutcome>& outcome);

/// Suspends for at least delay_ms on `clock`, then returns the same bytes
/// every time for a given delay. Throws std::invalid_argument if delay_ms <= 0.
Payload simulate_computation(std::int64_t delay_ms, Clock& clock = SteadyClock::instance());

/// Cache key for a request: the path followed by its query parameters sorted
/// by (name, value), so `/compute?b=2&a=1` and `/compute?a=1&b=2` share a slot.
std::string normalize_cache_key(std::string_view path,
                                std::vector<std::pair<std::string, std::string>> params);

/// The workload behind the HTTP surface, usable without a socket.
class WorkloadService {
 public:
  using Producer = TtlCache::Producer;

  explicit WorkloadService(ServerConfig config, Clock& clock = SteadyClock::instance());
  /// Substitutes the computation; used to inject failures or instrumentation.
  WorkloadService(ServerConfig config, Clock& clock, Producer compute);

  /// Runs the computation directly (uncached) or through the cache (cached).
  /// Exceptions from the computation propagate and nothing is cached.
  TimedResponse handle_compute(const std::string& cache_key);

  /// nullopt in uncached mode.
  std::optional<CacheStats> stats() const;

  /// Clears cache entries and counters; no-op in uncached mode.
  void reset();

  const ServerConfig& config() const { return config_; }

 private:
  ServerConfig config_;
  Clock& clock_;
  Producer compute_;
  std::unique_ptr<TtlCache> cache_;
};

/// JSON body of a /compute response.
std::string compute_body_json(const TimedResponse& response);
/// JSON body of a /stats response.
std::string stats_json(const CacheStats& stats);

/// HTTP front end for a WorkloadService.
///
///   GET  /compute  200, X-Server-Duration-Ms and X-Cache-Outcome headers
///   GET  /stats    200 in cached mode, 404 otherwise
///   POST /reset    204
///
/// Unknown paths answer 404; a failing computation answers 500.
class HttpServer {
 public:
  explicit HttpServer(WorkloadService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port; port 0 picks a free port. Returns the bound port.
  /// Throws std::runtime_error if binding fails.
  int bind(const std::string& host, int port);

  /// Serves on the calling thread until stop(). Requires bind().
  void listen();

  /// Serves on a background thread. Requires bind().
  void start();

  void stop();

  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = -1;
};

}  // namespace cachelab

#endif  // CACHELAB_WORKLOAD_SERVER_HPP_
