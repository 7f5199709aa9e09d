#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <mutex>

#include "fracfvt/finval.hpp"
#include "fracfvt/fodesim.hpp"
#include "fracfvt/report.hpp"
#include "fracfvt/util.hpp"
#include "fracfvt/verify.hpp"
#include "fracfvt/xform.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitNumericFail = 1;
constexpr int kExitUsage = 2;

struct FvtArgs {
  std::string fn;
  double q = 2.0;
  double omega = 1.0;
  std::vector<double> alphas = {0.0};
  double tol = 1e-2;
  std::string out = "fvt_report.json";
};

int cmd_fvt(const FvtArgs& a) {
  const auto catalog = fracfvt::xform::Catalog::standard();
  fracfvt::xform::CatalogFunction fn;
  if (a.fn == "tq_sin") {
    fn = fracfvt::xform::catalog_tq_sin(a.q, a.omega);
  } else if (catalog.contains(a.fn)) {
    fn = catalog.at(a.fn);
  } else {
    std::cerr << "unknown function '" << a.fn << "'; valid names:";
    for (const auto& n : catalog.names()) std::cerr << " " << n;
    std::cerr << " tq_sin\n";
    return kExitUsage;
  }

  fracfvt::Report report;
  report.experiment = "fvt";
  report.records.resize(a.alphas.size());
  std::mutex mtx;
  fracfvt::parallel_for_index(a.alphas.size(), [&](std::size_t i) {
    auto rec = fracfvt::finval::cross_validate(fn, a.alphas[i], a.tol);
    std::lock_guard lock(mtx);
    report.records[i] = std::move(rec);
  });
  report.save(a.out);

  bool any_fail = false;
  for (const auto& r : report.records) {
    std::cout << r.experiment_id << ": " << fracfvt::to_string(r.status)
              << "\n";
    any_fail = any_fail || r.status == fracfvt::Status::fail;
  }
  return any_fail ? kExitNumericFail : kExitPass;
}

struct FodeArgs {
  std::string rhs = "rotation";
  double alpha = 0.8;
  std::vector<double> x0 = {1.0, 0.0};
  double horizon = 35.0;
  double h = 2.5e-3;
  std::string scan = "1:20:60";
  double window = 8.0;
  std::string out = "fode_report";
};

std::vector<double> parse_scan(const std::string& spec) {
  double lo = 0, hi = 0;
  int count = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
      count < 2 || !(hi > lo))
    throw CLI::ValidationError("--scan", "expected lo:hi:count with hi > lo");
  std::vector<double> out;
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(count - 1));
  return out;
}

int cmd_fode(const FodeArgs& a) {
  fracfvt::fodesim::FodeProblem p;
  try {
    p.alpha = a.alpha;
    p.rhs = fracfvt::fodesim::rhs_registry(a.rhs);
    p.x0 = Eigen::Map<const Eigen::VectorXd>(a.x0.data(),
                                             static_cast<long>(a.x0.size()));
    p.horizon = a.horizon;
    p.h = a.h;
    p.validate();
  } catch (const std::exception& e) {
    std::cerr << "invalid problem: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto t_candidates = parse_scan(a.scan);
  const auto traj = fracfvt::fodesim::solve(p);
  const auto scan =
      fracfvt::fodesim::periodicity_residual(traj, t_candidates, a.window);
  const double cert =
      fracfvt::fodesim::certificate_integral(traj, scan.best_T, p.alpha);

  std::vector<std::vector<double>> rows;
  for (const auto& [T, r] : scan.residuals) rows.push_back({T, r});
  fracfvt::write_csv(a.out + ".csv", {"T", "residual"}, rows);

  fracfvt::ReportRecord rec;
  rec.experiment_id = "fode/" + a.rhs + "/alpha=" + std::to_string(a.alpha);
  rec.inputs["rhs"] = a.rhs;
  rec.inputs["alpha"] = a.alpha;
  rec.inputs["x0"] = a.x0;
  rec.inputs["horizon"] = a.horizon;
  rec.inputs["h"] = a.h;
  rec.inputs["scan"] = a.scan;
  rec.inputs["window"] = a.window;
  rec.outputs["min_residual"] = scan.best_residual;
  rec.outputs["best_T"] = scan.best_T;
  rec.outputs["nonconstancy"] = scan.nonconstancy;
  rec.outputs["certificate_at_best_T"] = cert;
  rec.outputs["rhs_evals"] = traj.rhs_evals;
  rec.tolerances["residual_floor"] = 0.05;
  if (scan.nonconstancy <= 1e-9) {
    rec.status = fracfvt::Status::inconclusive;  // constant trajectory
  } else {
    rec.status = scan.best_residual >= 0.05 ? fracfvt::Status::pass
                                            : fracfvt::Status::fail;
  }

  fracfvt::Report report;
  report.experiment = "fode";
  report.records.push_back(rec);
  report.save(a.out + ".json");

  std::cout << rec.experiment_id << ": " << fracfvt::to_string(rec.status)
            << " (min residual " << scan.best_residual << " at T = "
            << scan.best_T << ", nonconstancy " << scan.nonconstancy << ")\n";
  return rec.status == fracfvt::Status::fail ? kExitNumericFail : kExitPass;
}

struct VerifyArgs {
  std::vector<std::string> only;
  double tol_scale = 1.0;
};

int cmd_verify(const VerifyArgs& a) {
  fracfvt::verify::VerifyOptions opt;
  opt.only = a.only;
  opt.tol_scale = a.tol_scale;
  const auto results = fracfvt::verify::run_acceptance(opt);
  if (results.empty()) {
    std::cerr << "no criteria matched the --only filter; known ids:";
    for (const auto& id : fracfvt::verify::criterion_ids())
      std::cerr << " " << id;
    std::cerr << "\n";
    return kExitUsage;
  }
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%-20s %s  (%ld ms)\n", r.id.c_str(),
                r.pass ? "PASS" : "FAIL", r.wall_time_ms);
    if (!r.pass) std::printf("    %s\n", r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitPass : kExitNumericFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Final-value estimators and Caputo fractional system tools"};
  app.require_subcommand(1);
  app.set_config("--config");

  FvtArgs fvt;
  auto* sub_fvt = app.add_subcommand(
      "fvt", "Cross-validate final-value estimates for a catalog function");
  sub_fvt->add_option("--fn", fvt.fn, "catalog function name")->required();
  sub_fvt->add_option("--q", fvt.q, "power q for tq_sin");
  sub_fvt->add_option("--omega", fvt.omega, "frequency omega for tq_sin");
  sub_fvt->add_option("--alpha", fvt.alphas, "averaging orders")
      ->delimiter(',');
  sub_fvt->add_option("--tol", fvt.tol, "agreement tolerance");
  sub_fvt->add_option("--out", fvt.out, "JSON report path");

  FodeArgs fode;
  auto* sub_fode = app.add_subcommand(
      "fode", "Solve a Caputo system and scan for periodicity");
  // the step flag is --h, so this subcommand offers only the long help flag
  sub_fode->set_help_flag("--help", "print help");
  sub_fode->add_option("--rhs", fode.rhs, "rhs registry name")
      ->check(CLI::IsMember(fracfvt::fodesim::rhs_names()));
  sub_fode->add_option("--alpha", fode.alpha, "fractional order in (0,1)");
  sub_fode->add_option("--x0", fode.x0, "initial state")->delimiter(',');
  sub_fode->add_option("--horizon", fode.horizon, "time horizon");
  sub_fode->add_option("--h", fode.h, "step size");
  sub_fode->add_option("--scan", fode.scan, "period scan lo:hi:count");
  sub_fode->add_option("--window", fode.window, "comparison window length");
  sub_fode->add_option("--out", fode.out, "output path prefix");

  VerifyArgs ver;
  auto* sub_verify =
      app.add_subcommand("verify", "Run the full verification suite");
  sub_verify->add_option("--only", ver.only, "run only matching criteria")
      ->delimiter(',');
  sub_verify->add_option("--tol-scale", ver.tol_scale,
                         "scale all tolerances (<1 is stricter)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sub_fvt->parsed()) return cmd_fvt(fvt);
    if (sub_fode->parsed()) return cmd_fode(fode);
    if (sub_verify->parsed()) return cmd_verify(ver);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
