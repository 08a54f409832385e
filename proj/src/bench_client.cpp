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

#include "cachelab/bench_client.hpp"

#include <charconv>
#include <cmath>
#include <memory>

#include "httplib.h"
#include "json.hpp"

namespace cachelab {
namespace {

// Microsecond resolution keeps CSV output short and lossless.
double round_micros(double ms) { return std::round(ms * 1000.0) / 1000.0; }

std::optional<std::int64_t> parse_int(const std::string& text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

double mean(const std::vector<double>& xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

}  // namespace

void ExperimentConfig::validate() const {
  if (num_requests < 1) throw std::invalid_argument("num_requests must be at least 1");
  if (interval_ms < 0) throw std::invalid_argument("interval_ms must be non-negative");
}

ExperimentReport ExperimentReport::assemble(ExperimentConfig config,
                                            std::vector<RequestSample> samples) {
  ExperimentReport report;
  report.config = std::move(config);
  report.samples = std::move(samples);

  std::vector<double> all, hits, misses;
  for (const auto& s : report.samples) {
    all.push_back(s.headline_ms());
    if (!s.cache_outcome) continue;
    if (is_miss(*s.cache_outcome)) {
      ++report.miss_count;
      misses.push_back(s.headline_ms());
    } else {
      ++report.hit_count;
      hits.push_back(s.headline_ms());
    }
  }
  if (!all.empty()) report.mean_duration_ms = mean(all);
  if (!hits.empty()) report.mean_hit_duration_ms = mean(hits);
  if (!misses.empty()) report.mean_miss_duration_ms = mean(misses);
  return report;
}

bool ExperimentReport::has_outcomes() const {
  for (const auto& s : samples) {
    if (s.cache_outcome) return true;
  }
  return false;
}

Url parse_url(const std::string& url) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) {
    throw std::invalid_argument("unsupported url (expected http://host[:port][/path]): " + url);
  }
  std::string rest = url.substr(kScheme.size());
  Url out;
  auto slash = rest.find('/');
  std::string authority = rest.substr(0, slash);
  if (slash != std::string::npos) out.path = rest.substr(slash);
  auto colon = authority.rfind(':');
  if (colon != std::string::npos) {
    auto port = parse_int(authority.substr(colon + 1));
    if (!port || *port < 1 || *port > 65535) throw std::invalid_argument("bad port in url: " + url);
    out.port = static_cast<int>(*port);
    authority.resize(colon);
  }
  if (authority.empty()) throw std::invalid_argument("missing host in url: " + url);
  out.host = authority;
  return out;
}

Probe make_http_probe(const std::string& url) {
  Url target = parse_url(url);
  auto client = std::make_shared<httplib::Client>(target.host, target.port);
  client->set_keep_alive(true);
  client->set_connection_timeout(5);
  client->set_read_timeout(120);
  const httplib::Headers headers = {{"Accept", "application/json"}};
  return [client, path = target.path, headers]() {
    auto res = client->Get(path, headers);
    if (!res) {
      throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
    }
    ProbeResult out;
    out.status = res->status;
    out.server_duration_ms = parse_int(res->get_header_value("X-Server-Duration-Ms"));
    out.cache_outcome = parse_cache_outcome(res->get_header_value("X-Cache-Outcome"));
    return out;
  };
}

RequestSample measure_latency(const Probe& probe, Clock& clock) {
  const Instant sent = clock.now();
  ProbeResult result = probe();
  const Instant received = clock.now();
  RequestSample sample;
  sample.client_latency_ms = round_micros(to_millis_f(received - sent));
  sample.server_duration_ms = result.server_duration_ms;
  sample.cache_outcome = result.cache_outcome;
  if (result.status != 200) {
    throw std::runtime_error("unexpected HTTP status " + std::to_string(result.status));
  }
  return sample;
}

RequestSample measure_latency(const std::string& url) {
  return measure_latency(make_http_probe(url), SteadyClock::instance());
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  return run_experiment(config, make_http_probe(config.target_url), SteadyClock::instance());
}

ExperimentReport run_experiment(const ExperimentConfig& config, const Probe& probe, Clock& clock) {
  config.validate();
  std::vector<RequestSample> samples;
  samples.reserve(config.num_requests);
  const Instant start = clock.now();
  for (int k = 1; k <= config.num_requests; ++k) {
    const Instant scheduled = start + std::chrono::milliseconds(config.interval_ms * (k - 1));
    if (clock.now() < scheduled) clock.sleep_until(scheduled);
    const double sent_at = round_micros(to_millis_f(clock.now() - start));
    try {
      RequestSample sample = measure_latency(probe, clock);
      sample.seq = k;
      sample.sent_at_ms = sent_at;
      samples.push_back(sample);
    } catch (const std::exception& e) {
      throw ExperimentAborted("request " + std::to_string(k) + " of " +
                                  std::to_string(config.num_requests) + " failed: " + e.what(),
                              ExperimentReport::assemble(config, std::move(samples)));
    }
  }
  return ExperimentReport::assemble(config, std::move(samples));
}

Reduction compute_reduction(const ExperimentReport& baseline, const ExperimentReport& treated) {
  if (baseline.samples.empty() || treated.samples.empty()) {
    throw std::invalid_argument("compute_reduction needs non-empty reports");
  }
  if (baseline.mean_duration_ms == 0) {
    throw std::invalid_argument("baseline mean duration is zero");
  }
  Reduction r;
  r.overall_pct = 100.0 * (1.0 - treated.mean_duration_ms / baseline.mean_duration_ms);
  if (treated.mean_hit_duration_ms) {
    r.hit_only_pct = 100.0 * (1.0 - *treated.mean_hit_duration_ms / baseline.mean_duration_ms);
  }
  return r;
}

CacheStats fetch_server_stats(const std::string& target) {
  Url url = parse_url(target);
  httplib::Client client(url.host, url.port);
  auto res = client.Get("/stats");
  if (!res) throw std::runtime_error("stats request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw std::runtime_error("stats request returned HTTP " + std::to_string(res->status));
  }
  auto doc = nlohmann::json::parse(res->body);
  CacheStats stats;
  stats.hits = doc.at("hits").get<std::uint64_t>();
  stats.misses_absent = doc.at("misses_absent").get<std::uint64_t>();
  stats.misses_expired = doc.at("misses_expired").get<std::uint64_t>();
  stats.insertions = doc.at("insertions").get<std::uint64_t>();
  return stats;
}

void reset_server(const std::string& target) {
  Url url = parse_url(target);
  httplib::Client client(url.host, url.port);
  auto res = client.Post("/reset");
  if (!res) throw std::runtime_error("reset request failed: " + httplib::to_string(res.error()));
  if (res->status != 204) {
    throw std::runtime_error("reset request returned HTTP " + std::to_string(res->status));
  }
}

}  // namespace cachelab
