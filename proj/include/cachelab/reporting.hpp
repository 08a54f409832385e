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

#ifndef CACHELAB_REPORTING_HPP_
#define CACHELAB_REPORTING_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cachelab/bench_client.hpp"

namespace cachelab {

enum class Format { kCsv, kMarkdown, kJson };

std::optional<Format> parse_format(std::string_view text);

struct ComparisonRow {
  int seq = 0;
  double baseline_ms = 0;
  double treated_ms = 0;
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  std::string caption;
};

struct HitMissTable {
  int total_requests = 0;
  int cache_hits = 0;
  int cache_misses = 0;
};

/// Pairs the headline durations of two equally long runs, row by row.
/// Throws std::invalid_argument on a length mismatch (naming both lengths)
/// or on empty reports.
ComparisonTable build_comparison(const ExperimentReport& baseline, const ExperimentReport& treated);

/// Throws std::invalid_argument if the report carries no cache outcomes.
HitMissTable build_hit_miss(const ExperimentReport& report);

/// Columns seq,no_cache_ms,cache_ms (CSV) or Request No | No Cache (ms) | Cache (ms).
std::string render_comparison(const ExperimentReport& baseline, const ExperimentReport& treated,
                              Format format);

/// Rows Total Requests, Cache Hits, Cache Misses.
std::string render_hit_miss(const ExperimentReport& report, Format format);

/// Per-request rows (seq,sent_at_ms,client_latency_ms,server_duration_ms,
/// cache_outcome) for CSV; a table plus aggregates for Markdown; the full
/// report for JSON.
std::string render_report(const ExperimentReport& report, Format format);

std::string render_reduction(const Reduction& reduction, Format format);

std::string report_to_json(const ExperimentReport& report);
/// Inverse of report_to_json; aggregates are recomputed from the samples.
ExperimentReport report_from_json(std::string_view json);

/// Inverse of the CSV form of render_report. Throws std::invalid_argument on
/// malformed input.
std::vector<RequestSample> parse_report_csv(std::string_view csv);

/// Writes response_times.tsv (seq, no_cache_ms, cache_ms) and, when the
/// treated run has outcomes, hit_miss.tsv (metric, count) into `dir`, each
/// with a header row, tab separated, LF terminated. Returns the files written.
/// Throws std::runtime_error naming the path if a file cannot be written.
std::vector<std::filesystem::path> emit_plot_data(const ExperimentReport& baseline,
                                                  const ExperimentReport& treated,
                                                  const std::filesystem::path& dir);

/// Shortest decimal form that parses back to exactly `value`.
std::string format_number(double value);

}  // namespace cachelab

#endif  // CACHELAB_REPORTING_HPP_
