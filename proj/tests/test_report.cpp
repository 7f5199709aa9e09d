#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <fracfvt/report.hpp>

using namespace fracfvt;

namespace {

ReportRecord sample_record() {
  ReportRecord r;
  r.experiment_id = "fvt/const1/alpha=0.5";
  r.inputs["fn"] = "const1";
  r.inputs["alpha"] = 0.5;
  r.inputs["s_seq"] = std::vector<double>{0.1, 0.05, 0.025};
  r.outputs["L"] = 1.0;
  r.outputs["G"] = 2.0 / 3.0;
  r.outputs["gap"] = 1.23456789e-5;
  r.status = Status::pass;
  r.tolerances["gap"] = 1e-2;
  r.wall_time_ms = 42;
  return r;
}

}  // namespace

TEST_CASE("status round-trips through strings") {
  for (const auto s : {Status::pass, Status::fail, Status::inconclusive}) {
    CHECK(status_from_string(to_string(s)) == s);
  }
  CHECK_THROWS(status_from_string("maybe"));
}

TEST_CASE("record JSON round-trip is bit-identical") {
  const auto r = sample_record();
  const auto j = r.to_json();
  const auto r2 = ReportRecord::from_json(j);
  CHECK(r2.to_json().dump() == j.dump());
  CHECK(r2.experiment_id == r.experiment_id);
  CHECK(r2.status == Status::pass);
  CHECK(r2.outputs.at("gap").get<double>() ==
        r.outputs.at("gap").get<double>());
  CHECK(r2.wall_time_ms == 42);
}

TEST_CASE("report round-trip and schema version") {
  Report rep;
  rep.experiment = "unit";
  rep.records.push_back(sample_record());
  auto fail = sample_record();
  fail.status = Status::fail;
  rep.records.push_back(fail);

  const auto j = rep.to_json();
  CHECK(j.at("schema_version").get<int>() == kReportSchemaVersion);
  const auto rep2 = Report::from_json(j);
  CHECK(rep2.to_json().dump() == j.dump());
  CHECK(rep2.records.size() == 2);
  CHECK_FALSE(rep2.all_passed_or_inconclusive());

  rep.records.pop_back();
  auto inc = sample_record();
  inc.status = Status::inconclusive;
  rep.records.push_back(inc);
  CHECK(rep.all_passed_or_inconclusive());
}

TEST_CASE("report save writes parseable JSON") {
  Report rep;
  rep.experiment = "unit";
  rep.records.push_back(sample_record());
  const std::string path = "report_test_tmp.json";
  rep.save(path);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(Report::from_json(j).to_json().dump() == rep.to_json().dump());
  std::remove(path.c_str());
}

TEST_CASE("csv writer emits a header and numeric rows") {
  const std::string path = "csv_test_tmp.csv";
  write_csv(path, {"T", "residual"}, {{1.0, 0.25}, {2.0, 0.125}});
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "T,residual");
  std::getline(in, line);
  std::istringstream row(line);
  double a = 0.0, b = 0.0;
  char comma = 0;
  row >> a >> comma >> b;
  CHECK(a == 1.0);
  CHECK(b == 0.25);
  std::remove(path.c_str());
}
