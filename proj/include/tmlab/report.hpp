#pragma once

#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tmlab/fit.hpp"
#include "tmlab/machine.hpp"

namespace tmlab {

using Json = nlohmann::ordered_json;

enum class ReportFormat : std::uint8_t { Json, Csv };
/// "json" or "csv".
std::optional<ReportFormat> parse_report_format(std::string_view text);

struct RunRecord {
  std::string command;
  Json parameters = Json::object();
  std::optional<RunStats> stats;
  std::vector<std::pair<std::string, double>> derived_ratios;
  /// Command-specific payload (stage reports, verdicts, fit points).
  Json details = Json::object();

  /// Appends num / den. Throws std::invalid_argument when den is zero.
  void add_ratio(std::string name, double num, double den);
  Json to_json() const;
};

Json to_json(const RunStats& stats);
Json to_json(const FitResult& fit);

/// Append-only list of records; safe to add to from several threads.
class Report {
 public:
  void add(RunRecord record);
  /// Adds a record carrying `fit`; CSV output renders its points as a table.
  void add_fit(RunRecord record, const FitResult& fit);
  std::size_t size() const;

  /// JSON: one record per line. CSV: one table per fit, and a one-row table
  /// per other record, each headed by a "# command" line.
  void write(std::ostream& out, ReportFormat format) const;

 private:
  struct Entry {
    RunRecord record;
    std::optional<FitResult> fit;
  };
  mutable std::mutex mutex_;
  std::vector<Entry> entries_;
};

}  // namespace tmlab
