#include "fracfvt/report.hpp"

#include <fstream>
#include <stdexcept>

namespace fracfvt {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "inconclusive") return Status::inconclusive;
  throw std::invalid_argument("unknown status: " + s);
}

nlohmann::json ReportRecord::to_json() const {
  nlohmann::json j;
  j["experiment_id"] = experiment_id;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["status"] = to_string(status);
  j["tolerances"] = tolerances;
  j["wall_time_ms"] = wall_time_ms;
  return j;
}

ReportRecord ReportRecord::from_json(const nlohmann::json& j) {
  ReportRecord r;
  r.experiment_id = j.at("experiment_id").get<std::string>();
  r.inputs = j.at("inputs").get<std::map<std::string, nlohmann::json>>();
  r.outputs = j.at("outputs").get<std::map<std::string, nlohmann::json>>();
  r.status = status_from_string(j.at("status").get<std::string>());
  r.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
  r.wall_time_ms = j.at("wall_time_ms").get<long>();
  return r;
}

bool Report::all_passed_or_inconclusive() const {
  for (const auto& r : records)
    if (r.status == Status::fail) return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["experiment"] = experiment;
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) j["records"].push_back(r.to_json());
  return j;
}

Report Report::from_json(const nlohmann::json& j) {
  Report rep;
  rep.schema_version = j.at("schema_version").get<int>();
  rep.experiment = j.at("experiment").get<std::string>();
  for (const auto& rj : j.at("records"))
    rep.records.push_back(ReportRecord::from_json(rj));
  return rep;
}

void Report::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open report file: " + path);
  out << to_json().dump(2) << "\n";
}

void write_csv(const std::string& path,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv file: " + path);
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

}  // namespace fracfvt
