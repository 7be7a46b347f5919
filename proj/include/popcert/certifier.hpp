#ifndef POPCERT_CERTIFIER_HPP
#define POPCERT_CERTIFIER_HPP

#include <optional>

#include "popcert/kkt.hpp"
#include "popcert/problem_io.hpp"
#include "popcert/report.hpp"
#include "popcert/solvers.hpp"

namespace popcert {

enum class NormChoice { L1, L2, Both };

struct CertifyConfig {
  std::optional<int> order;          // default: the problem's minimal order
  NormChoice norm = NormChoice::Both;
  double tol_feas = 1e-6;            // candidate feasibility slack
  double tol_comp = 1e-9;            // complementarity activity threshold
  double tol_cert = 1e-4;            // verdict cut on the normalized residual
  std::optional<int> max_minor_order;
  bool scale_rows = false;
};

// min_i g_i(x); throws InfeasibleCandidateError when below -tol_feas,
// carrying the worst constraint index and value.
double check_candidate_feasibility(const PopProblem& problem, const CandidatePoint& x,
                                   double tol_feas);

struct CertifyResult {
  CertificateReport report;
  KktSystem system;
  SolveOutcome l1;
  SolveOutcome l2;
};

// Full pipeline: feasibility pre-check, rank-1 lift, KKT assembly at the
// lift, l1/l2 residual minimization, verdict. The verdict compares the
// normalized residual ||r|| / (1 + ||f||_2) against tol_cert, preferring the
// l2 residual when both norms ran.
CertifyResult certify_full(const PopProblem& problem, const CandidatePoint& x,
                           const CertifyConfig& config = {});
CertificateReport certify(const PopProblem& problem, const CandidatePoint& x,
                          const CertifyConfig& config = {});

}  // namespace popcert

#endif
