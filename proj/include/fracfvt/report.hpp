#ifndef FRACFVT_REPORT_HPP
#define FRACFVT_REPORT_HPP

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace fracfvt {

inline constexpr int kReportSchemaVersion = 1;

enum class Status { pass, fail, inconclusive };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

// One serializable row of an experiment run. Status pass requires every
// recorded |gap| to be within its tolerance.
struct ReportRecord {
  std::string experiment_id;
  std::map<std::string, nlohmann::json> inputs;
  std::map<std::string, nlohmann::json> outputs;
  Status status = Status::inconclusive;
  std::map<std::string, double> tolerances;
  long wall_time_ms = 0;

  nlohmann::json to_json() const;
  static ReportRecord from_json(const nlohmann::json& j);
};

// A run's report: schema version plus an append-only record array.
struct Report {
  int schema_version = kReportSchemaVersion;
  std::string experiment;
  std::vector<ReportRecord> records;

  bool all_passed_or_inconclusive() const;
  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  void save(const std::string& path) const;
};

// Flat numeric table for plotting; written as CSV.
void write_csv(const std::string& path,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace fracfvt

#endif
