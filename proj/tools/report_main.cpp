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

// Combines a no-cache run and a cache run (JSON reports written by
// cachelab-bench --format json) into the comparison and hit/miss tables.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cachelab/reporting.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cachelab report builder"};
  std::string baseline_path, treated_path, plot_dir, format_text = "md";
  app.add_option("--baseline", baseline_path, "JSON report of the uncached run")->required();
  app.add_option("--treated", treated_path, "JSON report of the cached run")->required();
  app.add_option("--format", format_text, "csv, md or json")->check(CLI::IsMember({"csv", "md", "json"}));
  app.add_option("--plot-dir", plot_dir, "also write plot-ready .tsv series into this directory");
  CLI11_PARSE(app, argc, argv);

  const auto format = *cachelab::parse_format(format_text);
  try {
    const auto baseline = cachelab::report_from_json(slurp(baseline_path));
    const auto treated = cachelab::report_from_json(slurp(treated_path));

    std::cout << cachelab::render_comparison(baseline, treated, format) << '\n';
    if (treated.has_outcomes()) {
      std::cout << cachelab::render_hit_miss(treated, format) << '\n';
    }
    const auto reduction = cachelab::compute_reduction(baseline, treated);
    std::cout << cachelab::render_reduction(reduction, format);
    if (!reduction.hit_only_pct) {
      std::cerr << "warning: cache run has no hits; hit-only reduction is undefined\n";
    }
    if (!plot_dir.empty()) {
      for (const auto& path : cachelab::emit_plot_data(baseline, treated, plot_dir)) {
        std::cerr << "wrote " << path.string() << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
