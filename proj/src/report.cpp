#include "popcert/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace popcert {

namespace {

nlohmann::ordered_json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

nlohmann::ordered_json count_or_null(int v) {
  if (v < 0) return nullptr;
  return v;
}

std::string sci(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

}  // namespace

std::string emit_report(const CertificateReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["problem"] = r.problem;
    j["order"] = r.order;
    j["n0"] = r.n0;
    j["ni"] = r.ni;
    j["multipliers_total"] = r.multipliers_total;
    j["multipliers_fixed_zero"] = r.multipliers_fixed_zero;
    j["residual_l1"] = number_or_null(r.residual_l1);
    j["residual_l2"] = number_or_null(r.residual_l2);
    j["verdict"] = r.verdict;
    j["objective_value"] = r.objective_value;
    j["feasibility_margin"] = r.feasibility_margin;
    j["iterations_l1"] = count_or_null(r.iterations_l1);
    j["iterations_l2"] = count_or_null(r.iterations_l2);
    j["time_ms"] = nlohmann::ordered_json{{"assemble", r.time_assemble_ms},
                                          {"solve_l1", r.time_solve_l1_ms},
                                          {"solve_l2", r.time_solve_l2_ms}};
    return j.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "problem:            " << r.problem << "\n";
  out << "relaxation order:   " << r.order << "\n";
  out << "moment matrix size: " << r.n0 << "\n";
  out << "localizing sizes:   [";
  for (std::size_t i = 0; i < r.ni.size(); ++i) out << (i ? ", " : "") << r.ni[i];
  out << "]\n";
  out << "multipliers:        " << r.multipliers_total << " total, "
      << r.multipliers_fixed_zero << " fixed to zero\n";
  out << "objective value:    " << sci(r.objective_value) << "\n";
  out << "feasibility margin: " << sci(r.feasibility_margin) << "\n";
  out << "residual l1:        " << sci(r.residual_l1);
  if (r.iterations_l1 >= 0) out << "  (" << r.iterations_l1 << " iterations)";
  out << "\n";
  out << "residual l2:        " << sci(r.residual_l2);
  if (r.iterations_l2 >= 0) out << "  (" << r.iterations_l2 << " iterations)";
  out << "\n";
  out << "verdict:            " << r.verdict << "\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "time:               assemble %.3f ms, l1 %.3f ms, l2 %.3f ms\n",
                r.time_assemble_ms, r.time_solve_l1_ms, r.time_solve_l2_ms);
  out << buf;
  return out.str();
}

}  // namespace popcert
