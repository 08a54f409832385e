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

// Benchmark client: sends N sequential GET requests on a fixed start-to-start
// schedule and reports per-request timings.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cachelab/bench_client.hpp"
#include "cachelab/reporting.hpp"

namespace {

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) return true;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) {
    std::cerr << "error: cannot write " << path << '\n';
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cachelab benchmark client"};
  cachelab::ExperimentConfig config;
  config.num_requests = 10;
  std::string out_path;
  std::string format_text = "csv";
  bool reset_first = false;
  bool check_stats = false;
  bool quiet = false;

  app.add_option("--url", config.target_url, "target, e.g. http://127.0.0.1:8080/compute")->required();
  app.add_option("--requests", config.num_requests, "number of requests")->check(CLI::PositiveNumber);
  app.add_option("--interval-ms", config.interval_ms, "start-to-start gap between requests")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--label", config.label, "run label, e.g. no-cache or cache");
  app.add_option("--out", out_path, "write the report to this file");
  app.add_option("--format", format_text, "csv, md or json")->check(CLI::IsMember({"csv", "md", "json"}));
  app.add_flag("--reset", reset_first, "POST /reset to the target server before the run");
  app.add_flag("--check-stats", check_stats,
               "compare client-tallied outcomes with the server's /stats afterwards");
  app.add_flag("--quiet", quiet, "do not echo the report to stdout");
  CLI11_PARSE(app, argc, argv);

  const auto format = *cachelab::parse_format(format_text);

  try {
    if (reset_first) cachelab::reset_server(config.target_url);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  cachelab::ExperimentReport report;
  try {
    report = cachelab::run_experiment(config);
  } catch (const cachelab::ExperimentAborted& e) {
    std::cerr << "error: run aborted: " << e.what() << '\n';
    const std::string text = cachelab::render_report(e.partial(), format);
    if (!quiet) std::cout << text;
    write_output(out_path, text);
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string text = cachelab::render_report(report, format);
  if (!quiet) std::cout << text;
  if (!write_output(out_path, text)) return 1;

  if (check_stats) {
    try {
      const auto stats = cachelab::fetch_server_stats(config.target_url);
      const bool ok = stats.hits == static_cast<std::uint64_t>(report.hit_count) &&
                      stats.misses() == static_cast<std::uint64_t>(report.miss_count);
      std::cerr << "server stats: hits=" << stats.hits << " misses=" << stats.misses()
                << "; client tally: hits=" << report.hit_count << " misses=" << report.miss_count
                << (ok ? " (match)" : " (MISMATCH)") << '\n';
      if (!ok) return 4;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 0;
}
