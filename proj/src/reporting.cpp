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

#include "cachelab/reporting.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace cachelab {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kComparisonCaption = "Response time per request, no cache vs cache";
constexpr std::string_view kReportCsvHeader =
    "seq,sent_at_ms,client_latency_ms,server_duration_ms,cache_outcome";

std::string fixed1(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", value);
  return buf;
}

std::string optional_fixed1(const std::optional<double>& value) {
  return value ? fixed1(*value) : "n/a";
}

ordered_json optional_json(const std::optional<double>& value) {
  return value ? ordered_json(*value) : ordered_json(nullptr);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = text.find(sep, pos);
    out.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view field, std::string_view name) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("bad " + std::string(name) + " field: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::optional<Format> parse_format(std::string_view text) {
  if (text == "csv") return Format::kCsv;
  if (text == "md" || text == "markdown") return Format::kMarkdown;
  if (text == "json") return Format::kJson;
  return std::nullopt;
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ComparisonTable build_comparison(const ExperimentReport& baseline, const ExperimentReport& treated) {
  const auto nb = baseline.samples.size();
  const auto nt = treated.samples.size();
  if (nb != nt) {
    throw std::invalid_argument("run lengths differ: baseline has " + std::to_string(nb) +
                                " requests, treated has " + std::to_string(nt));
  }
  if (nb == 0) throw std::invalid_argument("cannot compare empty runs");
  ComparisonTable table;
  table.caption = kComparisonCaption;
  for (std::size_t i = 0; i < nb; ++i) {
    table.rows.push_back({static_cast<int>(i + 1), baseline.samples[i].headline_ms(),
                          treated.samples[i].headline_ms()});
  }
  return table;
}

HitMissTable build_hit_miss(const ExperimentReport& report) {
  if (!report.has_outcomes()) {
    throw std::invalid_argument(
        "report has no cache outcomes (uncached run?); use the comparison table instead");
  }
  return {static_cast<int>(report.samples.size()), report.hit_count, report.miss_count};
}

std::string render_comparison(const ExperimentReport& baseline, const ExperimentReport& treated,
                              Format format) {
  const ComparisonTable table = build_comparison(baseline, treated);
  std::ostringstream out;
  switch (format) {
    case Format::kCsv:
      out << "seq,no_cache_ms,cache_ms\n";
      for (const auto& r : table.rows) {
        out << r.seq << ',' << format_number(r.baseline_ms) << ',' << format_number(r.treated_ms)
            << '\n';
      }
      break;
    case Format::kMarkdown:
      out << "**" << table.caption << "**\n\n";
      out << "| Request No | No Cache (ms) | Cache (ms) |\n";
      out << "|---:|---:|---:|\n";
      for (const auto& r : table.rows) {
        out << "| " << r.seq << " | " << format_number(r.baseline_ms) << " | "
            << format_number(r.treated_ms) << " |\n";
      }
      break;
    case Format::kJson: {
      ordered_json doc;
      doc["caption"] = table.caption;
      doc["rows"] = ordered_json::array();
      for (const auto& r : table.rows) {
        doc["rows"].push_back({{"seq", r.seq}, {"no_cache_ms", r.baseline_ms}, {"cache_ms", r.treated_ms}});
      }
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string render_hit_miss(const ExperimentReport& report, Format format) {
  const HitMissTable t = build_hit_miss(report);
  std::ostringstream out;
  switch (format) {
    case Format::kCsv:
      out << "metric,count\n"
          << "total_requests," << t.total_requests << '\n'
          << "cache_hits," << t.cache_hits << '\n'
          << "cache_misses," << t.cache_misses << '\n';
      break;
    case Format::kMarkdown:
      out << "| Metric | Count |\n|---|---:|\n"
          << "| Total Requests | " << t.total_requests << " |\n"
          << "| Cache Hits | " << t.cache_hits << " |\n"
          << "| Cache Misses | " << t.cache_misses << " |\n";
      break;
    case Format::kJson: {
      ordered_json doc{{"total_requests", t.total_requests},
                       {"cache_hits", t.cache_hits},
                       {"cache_misses", t.cache_misses}};
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string render_report(const ExperimentReport& report, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::kCsv:
      out << kReportCsvHeader << '\n';
      for (const auto& s : report.samples) {
        out << s.seq << ',' << format_number(s.sent_at_ms) << ','
            << format_number(s.client_latency_ms) << ',';
        if (s.server_duration_ms) out << *s.server_duration_ms;
        out << ',' << (s.cache_outcome ? to_string(*s.cache_outcome) : "none") << '\n';
      }
      break;
    case Format::kMarkdown:
      out << "## " << (report.config.label.empty() ? "run" : report.config.label) << "\n\n";
      out << "Target: " << report.config.target_url << ", " << report.config.num_requests
          << " requests, interval " << report.config.interval_ms << " ms\n\n";
      out << "| Request No | Sent at (ms) | Client latency (ms) | Server duration (ms) | Outcome |\n";
      out << "|---:|---:|---:|---:|---|\n";
      for (const auto& s : report.samples) {
        out << "| " << s.seq << " | " << format_number(s.sent_at_ms) << " | "
            << format_number(s.client_latency_ms) << " | "
            << (s.server_duration_ms ? std::to_string(*s.server_duration_ms) : "-") << " | "
            << (s.cache_outcome ? to_string(*s.cache_outcome) : "none") << " |\n";
      }
      out << "\nMean duration: " << fixed1(report.mean_duration_ms) << " ms\n";
      if (report.has_outcomes()) {
        out << "Hits: " << report.hit_count << ", misses: " << report.miss_count << '\n';
        out << "Mean hit duration: " << optional_fixed1(report.mean_hit_duration_ms) << " ms\n";
        out << "Mean miss duration: " << optional_fixed1(report.mean_miss_duration_ms) << " ms\n";
      }
      break;
    case Format::kJson:
      out << report_to_json(report) << '\n';
      break;
  }
  return out.str();
}

std::string render_reduction(const Reduction& reduction, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::kCsv:
      out << "metric,percent\n"
          << "overall_reduction," << format_number(reduction.overall_pct) << '\n'
          << "hit_only_reduction,"
          << (reduction.hit_only_pct ? format_number(*reduction.hit_only_pct) : "undefined")
          << '\n';
      break;
    case Format::kMarkdown:
      out << "Hit-only reduction: "
          << (reduction.hit_only_pct ? fixed1(*reduction.hit_only_pct) + "%"
                                     : std::string("undefined (no cache hits)"))
          << '\n';
      out << "Overall reduction: " << fixed1(reduction.overall_pct) << "%\n";
      break;
    case Format::kJson: {
      ordered_json doc{{"overall_reduction_pct", reduction.overall_pct},
                       {"hit_only_reduction_pct", optional_json(reduction.hit_only_pct)}};
      out << doc.dump(2) << '\n';
      break;
    }
  }
  return out.str();
}

std::string report_to_json(const ExperimentReport& report) {
  ordered_json doc;
  doc["config"] = {{"target_url", report.config.target_url},
                   {"num_requests", report.config.num_requests},
                   {"interval_ms", report.config.interval_ms},
                   {"label", report.config.label}};
  doc["samples"] = ordered_json::array();
  for (const auto& s : report.samples) {
    doc["samples"].push_back(
        {{"seq", s.seq},
         {"sent_at_ms", s.sent_at_ms},
         {"client_latency_ms", s.client_latency_ms},
         {"server_duration_ms",
          s.server_duration_ms ? ordered_json(*s.server_duration_ms) : ordered_json(nullptr)},
         {"cache_outcome", s.cache_outcome ? to_string(*s.cache_outcome) : "none"}});
  }
  doc["hit_count"] = report.hit_count;
  doc["miss_count"] = report.miss_count;
  doc["mean_duration_ms"] = report.mean_duration_ms;
  doc["mean_hit_duration_ms"] = optional_json(report.mean_hit_duration_ms);
  doc["mean_miss_duration_ms"] = optional_json(report.mean_miss_duration_ms);
  return doc.dump(2);
}

ExperimentReport report_from_json(std::string_view json) {
  auto doc = nlohmann::json::parse(json);
  ExperimentConfig config;
  const auto& c = doc.at("config");
  config.target_url = c.at("target_url").get<std::string>();
  config.num_requests = c.at("num_requests").get<int>();
  config.interval_ms = c.at("interval_ms").get<std::int64_t>();
  config.label = c.at("label").get<std::string>();

  std::vector<RequestSample> samples;
  for (const auto& js : doc.at("samples")) {
    RequestSample s;
    s.seq = js.at("seq").get<int>();
    s.sent_at_ms = js.at("sent_at_ms").get<double>();
    s.client_latency_ms = js.at("client_latency_ms").get<double>();
    if (!js.at("server_duration_ms").is_null()) {
      s.server_duration_ms = js.at("server_duration_ms").get<std::int64_t>();
    }
    s.cache_outcome = parse_cache_outcome(js.at("cache_outcome").get<std::string>());
    samples.push_back(s);
  }
  return ExperimentReport::assemble(std::move(config), std::move(samples));
}

std::vector<RequestSample> parse_report_csv(std::string_view csv) {
  auto lines = split(csv, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty() || lines.front() != kReportCsvHeader) {
    throw std::invalid_argument("missing report CSV header");
  }
  std::vector<RequestSample> samples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split(lines[i], ',');
    if (fields.size() != 5) {
      throw std::invalid_argument("line " + std::to_string(i + 1) + ": expected 5 fields");
    }
    RequestSample s;
    s.seq = parse_field<int>(fields[0], "seq");
    s.sent_at_ms = parse_field<double>(fields[1], "sent_at_ms");
    s.client_latency_ms = parse_field<double>(fields[2], "client_latency_ms");
    if (!fields[3].empty()) {
      s.server_duration_ms = parse_field<std::int64_t>(fields[3], "server_duration_ms");
    }
    if (fields[4] != "none") {
      s.cache_outcome = parse_cache_outcome(fields[4]);
      if (!s.cache_outcome) {
        throw std::invalid_argument("bad cache_outcome field: '" + std::string(fields[4]) + "'");
      }
    }
    samples.push_back(s);
  }
  return samples;
}

std::vector<std::filesystem::path> emit_plot_data(const ExperimentReport& baseline,
                                                  const ExperimentReport& treated,
                                                  const std::filesystem::path& dir) {
  const ComparisonTable table = build_comparison(baseline, treated);

  auto write = [](const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
    file << content;
    file.flush();
    if (!file) throw std::runtime_error("failed writing " + path.string());
  };

  std::vector<std::filesystem::path> written;

  std::ostringstream series;
  series << "seq\tno_cache_ms\tcache_ms\n";
  for (const auto& r : table.rows) {
    series << r.seq << '\t' << format_number(r.baseline_ms) << '\t' << format_number(r.treated_ms)
           << '\n';
  }
  written.push_back(dir / "response_times.tsv");
  write(written.back(), series.str());

  if (treated.has_outcomes()) {
    const HitMissTable t = build_hit_miss(treated);
    std::ostringstream counts;
    counts << "metric\tcount\n"
           << "total_requests\t" << t.total_requests << '\n'
           << "cache_hits\t" << t.cache_hits << '\n'
           << "cache_misses\t" << t.cache_misses << '\n';
    written.push_back(dir / "hit_miss.tsv");
    write(written.back(), counts.str());
  }
  return written;
}

}  // namespace cachelab
