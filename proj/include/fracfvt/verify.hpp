#ifndef FRACFVT_VERIFY_HPP
#define FRACFVT_VERIFY_HPP

#include <string>
#include <vector>

namespace fracfvt::verify {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  long wall_time_ms = 0;
};

struct VerifyOptions {
  double tol_scale = 1.0;            // < 1 tightens every tolerance
  std::vector<std::string> only;     // run only criteria whose id contains one
                                     // of these substrings; empty = all
};

// Runs the full quantitative verification suite. Each criterion carries its
// own pinned tolerances, scaled by tol_scale.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});

std::vector<std::string> criterion_ids();

}  // namespace fracfvt::verify

#endif
