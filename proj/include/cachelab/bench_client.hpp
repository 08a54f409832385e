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

#ifndef CACHELAB_BENCH_CLIENT_HPP_
#define CACHELAB_BENCH_CLIENT_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cachelab/clock.hpp"
#include "cachelab/ttl_cache.hpp"

namespace cachelab {

struct ExperimentConfig {
  std::string target_url;
  int num_requests = 10;
  std::int64_t interval_ms = 0;
  std::string label;

  /// Throws std::invalid_argument on num_requests < 1 or interval_ms < 0.
  void validate() const;
};

struct RequestSample {
  int seq = 0;                                  // 1-based
  double sent_at_ms = 0;                        // offset from run start
  double client_latency_ms = 0;                 // send to full response
  std::optional<std::int64_t> server_duration_ms;  // X-Server-Duration-Ms
  std::optional<CacheOutcome> cache_outcome;    // nullopt: not applicable

  /// The figure every table is keyed on: the server-reported duration when
  /// present, otherwise the client latency.
  double headline_ms() const {
    return server_duration_ms ? static_cast<double>(*server_duration_ms) : client_latency_ms;
  }

  friend bool operator==(const RequestSample&, const RequestSample&) = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<RequestSample> samples;
  int hit_count = 0;
  int miss_count = 0;
  double mean_duration_ms = 0;
  std::optional<double> mean_hit_duration_ms;
  std::optional<double> mean_miss_duration_ms;

  /// Builds a report with every aggregate recomputed from `samples`.
  static ExperimentReport assemble(ExperimentConfig config, std::vector<RequestSample> samples);

  /// True when at least one sample carries a cache outcome.
  bool has_outcomes() const;
};

/// Thrown when a run stops early; carries everything collected before the
/// failing request.
class ExperimentAborted : public std::runtime_error {
 public:
  ExperimentAborted(const std::string& what, ExperimentReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const ExperimentReport& partial() const { return partial_; }

 private:
  ExperimentReport partial_;
};

/// What one request exchange yields, before timing is attached.
struct ProbeResult {
  int status = 0;
  std::optional<std::int64_t> server_duration_ms;
  std::optional<CacheOutcome> cache_outcome;
};

/// Performs one complete request/response exchange. Throws on transport failure.
using Probe = std::function<ProbeResult()>;

struct Url {
  std::string host;
  int port = 80;
  std::string path = "/";  // includes any query string
};

/// Accepts http://host[:port][/path]. Throws std::invalid_argument otherwise.
Url parse_url(const std::string& url);

/// Probe issuing GET requests against `url` over one keep-alive connection,
/// with the same path and headers every time.
Probe make_http_probe(const std::string& url);

/// One timed GET. seq and sent_at_ms are left at zero.
RequestSample measure_latency(const std::string& url);

/// Times one probe call against `clock`.
RequestSample measure_latency(const Probe& probe, Clock& clock);

/// Runs the fixed-interval protocol: request k is scheduled at
/// start + (k-1) * interval_ms and is never sent before response k-1 is
/// complete; a late response pushes the next send back, which sent_at_ms
/// records. A transport error or non-200 status aborts with ExperimentAborted.
ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const Probe& probe, Clock& clock);

struct Reduction {
  double overall_pct = 0;              // all treated samples vs baseline mean
  std::optional<double> hit_only_pct;  // nullopt when treated has no hits
};

/// Percentage drop of the treated means against the baseline mean, using
/// headline durations. Throws std::invalid_argument on an empty report or a
/// zero baseline mean.
Reduction compute_reduction(const ExperimentReport& baseline, const ExperimentReport& treated);

/// GET /stats on the server hosting `url` (its path is ignored). Cached mode only.
CacheStats fetch_server_stats(const std::string& url);

/// POST /reset on the server hosting `url`.
void reset_server(const std::string& url);

}  // namespace cachelab

#endif  // CACHELAB_BENCH_CLIENT_HPP_
