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

#include "qnom/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qnom/error.hpp"

namespace qnom {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); }

}  // namespace

void write_text_file(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<Series>& series) {
  constexpr double W = 720, H = 440, L = 70, R = 190, T = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pw = W - L - R, ph = H - T - B;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return T + ph - (y - y0) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << xml_escape(title)
     << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0, yv = y0 + (y1 - y0) * k / 5.0;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << T + ph << "\" x2=\"" << px(xv) << "\" y2=\"" << T + ph + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(xv) << "\" y=\"" << T + ph + 18 << "\" text-anchor=\"middle\">" << num(xv)
       << "</text>\n";
    os << "<line x1=\"" << L - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << L << "\" y2=\"" << py(yv)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << L - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  os << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << xml_escape(xlabel)
     << "</text>\n";
  os << "<text transform=\"translate(16," << T + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << xml_escape(ylabel) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    os << "\"/>\n";
    const double ly = T + 14 + 16 * static_cast<double>(k);
    os << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << L + pw + 32 << "\" y2=\"" << ly - 4
       << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << L + pw + 38 << "\" y=\"" << ly << "\">" << xml_escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg_line_chart(const std::string& path, const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<Series>& series) {
  write_text_file(path, svg_line_chart(title, xlabel, ylabel, series));
}

std::vector<Series> cost_series(const ExperimentReport& rep) {
  std::vector<Series> out;
  for (const auto& r : rep.runs) {
    Series s;
    s.name = r.label;
    s.x.push_back(0);
    s.y.push_back(r.trace.initial_cost);
    for (const auto& rec : r.trace.records) {
      s.x.push_back(rec.t);
      s.y.push_back(rec.cost);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string summary_json(const ExperimentReport& rep, const std::map<std::string, bool>& checks,
                         const std::map<std::string, std::string>& notes) {
  nlohmann::ordered_json j;
  j["experiment"] = rep.name;
  j["config"] = rep.config;
  j["aggregates"] = {{"mean_final_cost", finite_or_null(rep.aggregates.mean_final_cost)},
                     {"std_final_cost", finite_or_null(rep.aggregates.std_final_cost)},
                     {"mean_iterations", rep.aggregates.mean_iterations}};
  j["wall_seconds"] = rep.wall_seconds;
  nlohmann::ordered_json runs = nlohmann::ordered_json::array();
  for (const auto& r : rep.runs) {
    nlohmann::ordered_json e;
    e["label"] = r.label;
    e["termination_reason"] = to_string(r.trace.termination_reason);
    e["iterations"] = r.trace.records.size();
    e["initial_cost"] = finite_or_null(r.trace.initial_cost);
    e["final_cost"] = finite_or_null(final_cost(r.trace));
    e["final_depth"] = r.trace.final_circuit.depth();
    e["wall_seconds"] = r.trace.wall_seconds;
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.extras) ex[k] = finite_or_null(v);
    e["extras"] = ex;
    runs.push_back(e);
  }
  j["runs"] = runs;
  if (!checks.empty()) {
    bool all = true;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : checks) {
      c[k] = v;
      all = all && v;
    }
    j["checks"] = c;
    j["all_checks_pass"] = all;
  }
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(2) + "\n";
}

void write_summary_json(const std::string& path, const ExperimentReport& rep, const std::map<std::string, bool>& checks,
                        const std::map<std::string, std::string>& notes) {
  write_text_file(path, summary_json(rep, checks, notes));
}

std::string report_to_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "run,t,cost,indicator,c1_after_opt,layer_added,circuit_depth,fidelity_to_target\n";
  for (const auto& r : rep.runs) {
    std::istringstream in(trace_to_csv(r.trace));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) os << r.label << ',' << line << '\n';
  }
  return os.str();
}

}  // namespace qnom
