#ifndef POPCERT_REPORT_HPP
#define POPCERT_REPORT_HPP

#include <limits>
#include <string>
#include <vector>

namespace popcert {

enum class ReportFormat { Json, Text };

// Outcome of a certification run. residual/iteration fields for a norm that
// was not solved stay at their NaN/-1 defaults and serialize as null.
struct CertificateReport {
  std::string problem;
  int order = 0;
  int n0 = 0;
  std::vector<int> ni;
  int multipliers_total = 0;
  int multipliers_fixed_zero = 0;
  double residual_l1 = std::numeric_limits<double>::quiet_NaN();
  double residual_l2 = std::numeric_limits<double>::quiet_NaN();
  std::string verdict;  // "certified" | "not-certified"
  double objective_value = 0.0;
  double feasibility_margin = 0.0;
  int iterations_l1 = -1;
  int iterations_l2 = -1;
  double time_assemble_ms = 0.0;
  double time_solve_l1_ms = 0.0;
  double time_solve_l2_ms = 0.0;
};

std::string emit_report(const CertificateReport& report, ReportFormat format);

}  // namespace popcert

#endif
