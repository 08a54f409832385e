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

#include "cachelab/workload_server.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace cachelab {

std::string_view to_string(ServerMode mode) {
  return mode == ServerMode::kCached ? "cached" : "uncached";
}

std::optional<ServerMode> parse_server_mode(std::string_view text) {
  if (text == "cached") return ServerMode::kCached;
  if (text == "uncached") return ServerMode::kUncached;
  return std::nullopt;
}

void ServerConfig::validate() const {
  if (delay_ms <= 0) throw std::invalid_argument("delay_ms must be positive");
  if (mode == ServerMode::kCached) {
    if (!ttl_ms) throw std::invalid_argument("cached mode requires ttl_ms");
    if (*ttl_ms <= 0) throw std::invalid_argument("ttl_ms must be positive");
  } else if (ttl_ms) {
    throw std::invalid_argument("ttl_ms is only valid in cached mode");
  }
  if (listen_port < 0 || listen_port > 65535) {
    throw std::invalid_argument("listen_port out of range");
  }
}

std::string_view outcome_label(const std::optional<CacheOutcome>& outcome) {
  return outcome ? to_string(*outcome) : std::string_view("none");
}

Payload simulate_computation(std::int64_t delay_ms, Clock& clock) {
  if (delay_ms <= 0) throw std::invalid_argument("delay_ms must be positive");
  clock.sleep_for(std::chrono::milliseconds(delay_ms));
  return "computed result (simulated work " + std::to_string(delay_ms) + " ms)";
}

std::string normalize_cache_key(std::string_view path,
                                std::vector<std::pair<std::string, std::string>> params) {
  std::sort(params.begin(), params.end());
  std::string key(path);
  char sep = '?';
  for (const auto& [name, value] : params) {
    key += sep;
    key += name;
    key += '=';
    key += value;
    sep = '&';
  }
  return key;
}

WorkloadService::WorkloadService(ServerConfig config, Clock& clock)
    : WorkloadService(config, clock, nullptr) {}

WorkloadService::WorkloadService(ServerConfig config, Clock& clock, Producer compute)
    : config_(std::move(config)), clock_(clock), compute_(std::move(compute)) {
  config_.validate();
  if (!compute_) {
    compute_ = [delay = config_.delay_ms, &clock] { return simulate_computation(delay, clock); };
  }
  if (config_.mode == ServerMode::kCached) {
    cache_ = std::make_unique<TtlCache>(std::chrono::milliseconds(*config_.ttl_ms), clock_);
  }
}

TimedResponse WorkloadService::handle_compute(const std::string& cache_key) {
  const Instant entered = clock_.now();
  TimedResponse response;
  if (cache_) {
    auto result = cache_->get_or_compute(cache_key, compute_);
    response.body = std::move(result.value);
    response.outcome = result.outcome;
  } else {
    response.body = compute_();
  }
  response.server_duration_ms = to_millis(clock_.now() - entered);
  return response;
}

std::optional<CacheStats> WorkloadService::stats() const {
  if (!cache_) return std::nullopt;
  return cache_->stats_snapshot();
}

void WorkloadService::reset() {
  if (cache_) cache_->reset();
}

std::string compute_body_json(const TimedResponse& response) {
  nlohmann::ordered_json doc;
  doc["payload"] = response.body;
  doc["server_duration_ms"] = response.server_duration_ms;
  doc["cache_outcome"] = outcome_label(response.outcome);
  return doc.dump();
}

std::string stats_json(const CacheStats& stats) {
  nlohmann::ordered_json doc;
  doc["total_lookups"] = stats.lookups();
  doc["hits"] = stats.hits;
  doc["misses_absent"] = stats.misses_absent;
  doc["misses_expired"] = stats.misses_expired;
  doc["insertions"] = stats.insertions;
  return doc.dump();
}

struct HttpServer::Impl {
  httplib::Server server;
  std::thread worker;
  std::atomic<bool> served{false};
};

HttpServer::HttpServer(WorkloadService& service) : impl_(std::make_unique<Impl>()) {
  auto& svr = impl_->server;

  svr.Get("/compute", [&service](const httplib::Request& req, httplib::Response& res) {
    std::vector<std::pair<std::string, std::string>> params(req.params.begin(), req.params.end());
    TimedResponse response;
    try {
      response = service.handle_compute(normalize_cache_key(req.path, std::move(params)));
    } catch (const std::exception& e) {
      res.status = 500;
      res.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
      return;
    }
    res.status = 200;
    res.set_header("X-Server-Duration-Ms", std::to_string(response.server_duration_ms));
    res.set_header("X-Cache-Outcome", std::string(outcome_label(response.outcome)));
    res.set_content(compute_body_json(response), "application/json");
  });

  svr.Get("/stats", [&service](const httplib::Request&, httplib::Response& res) {
    auto stats = service.stats();
    if (!stats) {
      res.status = 404;
      return;
    }
    res.status = 200;
    res.set_content(stats_json(*stats), "application/json");
  });

  svr.Post("/reset", [&service](const httplib::Request&, httplib::Response& res) {
    service.reset();
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& svr = impl_->server;
  if (port == 0) {
    port_ = svr.bind_to_any_port(host);
  } else {
    port_ = svr.bind_to_port(host, port) ? port : -1;
  }
  if (port_ < 0) {
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  }
  return port_;
}

void HttpServer::listen() {
  if (port_ < 0) throw std::logic_error("HttpServer::listen before bind");
  impl_->served = true;
  impl_->server.listen_after_bind();
}

void HttpServer::start() {
  if (port_ < 0) throw std::logic_error("HttpServer::start before bind");
  impl_->served = true;
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void HttpServer::stop() {
  // httplib only closes the listening socket of a running server.
  if (port_ >= 0 && !impl_->served) start();
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace cachelab
