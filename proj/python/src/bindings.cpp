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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "cachelab/bench_client.hpp"
#include "cachelab/reporting.hpp"
#include "cachelab/ttl_cache.hpp"
#include "cachelab/workload_server.hpp"

namespace py = pybind11;
using namespace cachelab;

namespace {

Format format_arg(const std::string& text) {
  auto f = parse_format(text);
  if (!f) throw py::value_error("format must be csv, md or json");
  return *f;
}

py::dict stats_dict(const CacheStats& s) {
  py::dict d;
  d["total_lookups"] = s.lookups();
  d["hits"] = s.hits;
  d["misses_absent"] = s.misses_absent;
  d["misses_expired"] = s.misses_expired;
  d["insertions"] = s.insertions;
  return d;
}

// A cache together with the clock it reads; the steady clock is used when no
// simulated clock is supplied.
class PyTtlCache {
 public:
  PyTtlCache(std::int64_t ttl_ms, std::shared_ptr<SimulatedClock> clock)
      : clock_(std::move(clock)),
        cache_(std::chrono::milliseconds(ttl_ms),
               clock_ ? static_cast<Clock&>(*clock_) : SteadyClock::instance()) {}

  TtlCache& cache() { return cache_; }

 private:
  std::shared_ptr<SimulatedClock> clock_;
  TtlCache cache_;
};

class PyServer {
 public:
  PyServer(const std::string& mode, std::int64_t delay_ms, std::optional<std::int64_t> ttl_ms,
           const std::string& host, int port) {
    ServerConfig config;
    auto m = parse_server_mode(mode);
    if (!m) throw py::value_error("mode must be 'cached' or 'uncached'");
    config.mode = *m;
    config.delay_ms = delay_ms;
    config.ttl_ms = ttl_ms;
    config.listen_port = port;
    service_ = std::make_unique<WorkloadService>(config);
    server_ = std::make_unique<HttpServer>(*service_);
    server_->bind(host, port);
    host_ = host;
  }

  void start() { server_->start(); }
  void stop() { server_->stop(); }
  int port() const { return server_->port(); }
  std::string url() const { return "http://" + host_ + ":" + std::to_string(port()) + "/compute"; }
  std::optional<CacheStats> stats() const { return service_->stats(); }

 private:
  std::unique_ptr<WorkloadService> service_;
  std::unique_ptr<HttpServer> server_;
  std::string host_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "In-memory TTL cache, workload server and benchmark client";

  py::enum_<CacheOutcome>(m, "CacheOutcome")
      .value("hit", CacheOutcome::kHit)
      .value("miss_absent", CacheOutcome::kMissAbsent)
      .value("miss_expired", CacheOutcome::kMissExpired);

  py::class_<SimulatedClock, std::shared_ptr<SimulatedClock>>(m, "SimulatedClock")
      .def(py::init<>())
      .def("now_ms", [](const SimulatedClock& c) { return to_millis_f(c.now().time_since_epoch()); })
      .def("advance_ms", [](SimulatedClock& c, std::int64_t ms) { c.advance(std::chrono::milliseconds(ms)); })
      .def("set_ms", [](SimulatedClock& c, std::int64_t ms) { c.set(at_ms(ms)); });

  py::class_<PyTtlCache>(m, "TtlCache")
      .def(py::init<std::int64_t, std::shared_ptr<SimulatedClock>>(), py::arg("ttl_ms"),
           py::arg("clock") = nullptr)
      .def("get",
           [](PyTtlCache& c, const std::string& key) {
             auto r = c.cache().get(key);
             return py::make_tuple(r.outcome, r.value ? py::object(py::bytes(*r.value)) : py::none());
           })
      .def("put", [](PyTtlCache& c, const std::string& key, const std::string& value) {
             c.cache().put(key, value);
           })
      .def("get_or_compute",
           [](PyTtlCache& c, const std::string& key, const std::function<std::string()>& compute) {
             auto r = c.cache().get_or_compute(key, compute);
             return py::make_tuple(py::bytes(r.value), r.outcome);
           })
      .def("stats", [](PyTtlCache& c) { return stats_dict(c.cache().stats_snapshot()); })
      .def("reset", [](PyTtlCache& c) { c.cache().reset(); })
      .def("__len__", [](PyTtlCache& c) { return c.cache().size(); });

  py::class_<PyServer>(m, "WorkloadServer")
      .def(py::init<const std::string&, std::int64_t, std::optional<std::int64_t>,
                    const std::string&, int>(),
           py::arg("mode"), py::arg("delay_ms"), py::arg("ttl_ms") = py::none(),
           py::arg("host") = "127.0.0.1", py::arg("port") = 0)
      .def("start", &PyServer::start, py::call_guard<py::gil_scoped_release>())
      .def("stop", &PyServer::stop, py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("port", &PyServer::port)
      .def_property_readonly("url", &PyServer::url)
      .def("stats", [](const PyServer& s) -> py::object {
        auto st = s.stats();
        return st ? py::object(stats_dict(*st)) : py::none();
      })
      .def("__enter__", [](PyServer& s) -> PyServer& { s.start(); return s; })
      .def("__exit__", [](PyServer& s, py::args) { s.stop(); });

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("target_url", &ExperimentConfig::target_url)
      .def_readwrite("num_requests", &ExperimentConfig::num_requests)
      .def_readwrite("interval_ms", &ExperimentConfig::interval_ms)
      .def_readwrite("label", &ExperimentConfig::label);

  py::class_<RequestSample>(m, "RequestSample")
      .def(py::init<>())
      .def_readwrite("seq", &RequestSample::seq)
      .def_readwrite("sent_at_ms", &RequestSample::sent_at_ms)
      .def_readwrite("client_latency_ms", &RequestSample::client_latency_ms)
      .def_readwrite("server_duration_ms", &RequestSample::server_duration_ms)
      .def_readwrite("cache_outcome", &RequestSample::cache_outcome);

  py::class_<ExperimentReport>(m, "ExperimentReport")
      .def_static("assemble", &ExperimentReport::assemble, py::arg("config"), py::arg("samples"))
      .def_readonly("config", &ExperimentReport::config)
      .def_readonly("samples", &ExperimentReport::samples)
      .def_readonly("hit_count", &ExperimentReport::hit_count)
      .def_readonly("miss_count", &ExperimentReport::miss_count)
      .def_readonly("mean_duration_ms", &ExperimentReport::mean_duration_ms)
      .def_readonly("mean_hit_duration_ms", &ExperimentReport::mean_hit_duration_ms)
      .def_readonly("mean_miss_duration_ms", &ExperimentReport::mean_miss_duration_ms);

  py::class_<Reduction>(m, "Reduction")
      .def_readonly("overall_pct", &Reduction::overall_pct)
      .def_readonly("hit_only_pct", &Reduction::hit_only_pct);

  m.def(
      "run_experiment",
      [](const std::string& url, int requests, std::int64_t interval_ms, const std::string& label) {
        ExperimentConfig config{url, requests, interval_ms, label};
        return run_experiment(config);
      },
      py::arg("url"), py::arg("requests") = 10, py::arg("interval_ms") = 0, py::arg("label") = "",
      py::call_guard<py::gil_scoped_release>());
  m.def("compute_reduction", &compute_reduction, py::arg("baseline"), py::arg("treated"));
  m.def("fetch_server_stats", [](const std::string& url) { return stats_dict(fetch_server_stats(url)); });
  m.def("reset_server", &reset_server, py::call_guard<py::gil_scoped_release>());

  m.def("render_comparison",
        [](const ExperimentReport& b, const ExperimentReport& t, const std::string& fmt) {
          return render_comparison(b, t, format_arg(fmt));
        },
        py::arg("baseline"), py::arg("treated"), py::arg("format") = "csv");
  m.def("render_hit_miss",
        [](const ExperimentReport& r, const std::string& fmt) { return render_hit_miss(r, format_arg(fmt)); },
        py::arg("report"), py::arg("format") = "csv");
  m.def("render_report",
        [](const ExperimentReport& r, const std::string& fmt) { return render_report(r, format_arg(fmt)); },
        py::arg("report"), py::arg("format") = "csv");
  m.def("report_to_json", &report_to_json);
  m.def("report_from_json", [](const std::string& s) { return report_from_json(s); });
  m.def("emit_plot_data",
        [](const ExperimentReport& b, const ExperimentReport& t, const std::string& dir) {
          std::vector<std::string> out;
          for (const auto& p : emit_plot_data(b, t, dir)) out.push_back(p.string());
          return out;
        });
}
