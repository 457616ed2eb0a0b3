// Copyright 2026 The qnom Authors
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

/**
 * @file
 * Run outputs: summary JSON, CSV helpers and a minimal SVG line chart.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qnom/experiments.hpp"

namespace qnom {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Axes, ticks, legend and one polyline per series. Non-finite points are skipped.
std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series);
void write_svg_line_chart(const std::string& path, const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<Series>& series);

/// Cost against iteration for every run in the report.
std::vector<Series> cost_series(const ExperimentReport& rep);

/// Pretty-printed JSON: name, config, aggregates, wall time, per-run summary
/// (label, termination reason, iterations, initial and final cost, final depth,
/// extras), plus `checks` (name -> pass) and free-form string `notes`.
std::string summary_json(const ExperimentReport& rep, const std::map<std::string, bool>& checks = {},
                         const std::map<std::string, std::string>& notes = {});
void write_summary_json(const std::string& path, const ExperimentReport& rep,
                        const std::map<std::string, bool>& checks = {},
                        const std::map<std::string, std::string>& notes = {});

/// All runs stacked: a `run` label column followed by the trace columns.
std::string report_to_csv(const ExperimentReport& rep);

/// Writes text to path, creating parent directories. Throws IoError on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qnom
