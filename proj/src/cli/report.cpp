#include "tmlab/report.hpp"

#include <ostream>
#include <stdexcept>

namespace tmlab {

namespace {

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted.push_back('"');
    quoted.push_back(c);
  }
  return quoted + "\"";
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

// Nested objects become dotted columns: {"a": {"b": 1}} gives "a.b".
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (j.is_object() && !(j.empty() && !prefix.empty())) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out.emplace_back(prefix, j);
  }
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  return std::nullopt;
}

void RunRecord::add_ratio(std::string name, double num, double den) {
  if (den == 0) throw std::invalid_argument("ratio '" + name + "' has a zero denominator");
  derived_ratios.emplace_back(std::move(name), num / den);
}

Json to_json(const RunStats& stats) {
  Json j;
  j["outcome"] = std::string(to_string(stats.outcome));
  j["steps"] = stats.steps;
  j["guess_bits"] = stats.guess_bits;
  j["reversals"] = stats.reversals;
  if (!stats.diagnostic.empty()) j["diagnostic"] = stats.diagnostic;
  return j;
}

Json to_json(const FitResult& fit) {
  Json j;
  j["model"] = fit.model_label;
  j["max_ratio"] = fit.max_ratio;
  j["min_ratio"] = fit.min_ratio;
  j["spread"] = fit.spread();
  Json points = Json::array();
  for (const FitPoint& p : fit.points) {
    Json q;
    for (const auto& [k, v] : p.params) q[k] = v;
    q["steps"] = p.steps;
    q["model"] = p.model;
    q["ratio"] = p.ratio;
    points.push_back(std::move(q));
  }
  j["points"] = std::move(points);
  return j;
}

Json RunRecord::to_json() const {
  Json j;
  j["command"] = command;
  j["parameters"] = parameters;
  if (stats) j["stats"] = tmlab::to_json(*stats);
  Json ratios = Json::object();
  for (const auto& [k, v] : derived_ratios) ratios[k] = v;
  j["ratios"] = std::move(ratios);
  if (!details.empty()) j["details"] = details;
  return j;
}

void Report::add(RunRecord record) {
  std::lock_guard lock(mutex_);
  entries_.push_back({std::move(record), std::nullopt});
}

void Report::add_fit(RunRecord record, const FitResult& fit) {
  record.details["fit"] = to_json(fit);
  std::lock_guard lock(mutex_);
  entries_.push_back({std::move(record), fit});
}

std::size_t Report::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

void Report::write(std::ostream& out, ReportFormat format) const {
  std::lock_guard lock(mutex_);
  for (const Entry& e : entries_) {
    if (format == ReportFormat::Json) {
      out << e.record.to_json().dump() << '\n';
      continue;
    }
    out << "# " << e.record.command << '\n';
    if (e.fit) {
      std::vector<std::string> header;
      if (!e.fit->points.empty())
        for (const auto& [k, v] : e.fit->points.front().params) header.push_back(k);
      for (const char* c : {"steps", "model", "ratio"}) header.emplace_back(c);
      write_row(out, header);
      for (const FitPoint& p : e.fit->points) {
        std::vector<std::string> row;
        for (const auto& [k, v] : p.params) row.push_back(std::to_string(v));
        row.push_back(std::to_string(p.steps));
        row.push_back(csv_cell(Json(p.model)));
        row.push_back(csv_cell(Json(p.ratio)));
        write_row(out, row);
      }
      continue;
    }
    Json flat_src = e.record.to_json();
    flat_src.erase("command");
    flat_src.erase("details");
    std::vector<std::pair<std::string, Json>> cells;
    flatten(flat_src, "", cells);
    std::vector<std::string> header, row;
    for (const auto& [k, v] : cells) {
      header.push_back(k);
      row.push_back(csv_cell(v));
    }
    write_row(out, header);
    write_row(out, row);
  }
}

}  // namespace tmlab
