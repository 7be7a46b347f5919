#ifndef POPCERT_SOLVERS_HPP
#define POPCERT_SOLVERS_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "popcert/kkt.hpp"

namespace popcert {

enum class SolveStatus { Optimal, IterationLimit, NumericalFailure, Infeasible, Unbounded };

const char* to_string(SolveStatus status);

struct LpOptions {
  double tol = 1e-8;           // optimality: all reduced costs >= -tol
  int max_iterations = 0;      // 0 = 50 * variable count
  // Starting basis (column indices, one per row). Skips phase 1.
  std::optional<std::vector<int>> warm_basis;
};

struct LpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
};

// min c^T x  s.t.  A x = b,  x_j >= 0 unless free_mask[j].
// Dense revised simplex; the basis is re-factorized from scratch every
// iteration, so no error accumulates across pivots. Entering variable by most
// negative reduced cost (Bland's rule after a stall of 2*rows degenerate
// pivots), leaving variable by minimum ratio with the largest pivot among
// ties. All remaining ties break toward the smallest index, which makes the
// solve deterministic.
LpResult lp_core(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 const std::vector<bool>& free_mask, const LpOptions& options = {});

struct SolveOutcome {
  // Values over [lambda, retained multiplier columns].
  Eigen::VectorXd multipliers;
  double residual_norm = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
};

// min sum |r_alpha| over mu >= 0, lambda free, where
// r = rhs - coefficients * [lambda; mu]; solved as a linear program with
// slack splits s+ - s- = r, warm-started on the all-slack basis.
SolveOutcome solve_l1(const KktSystem& sys);

// min ||r||_2 over the same set, via a Lawson-Hanson style active-set
// iteration extended with a permanently passive free column.
SolveOutcome solve_l2(const KktSystem& sys);

// Bound-constrained least squares min ||b - G x||_2, x_j >= 0 except
// free_mask[j] (free columns stay passive throughout).
SolveOutcome nnls_free(const Eigen::MatrixXd& G, const Eigen::VectorXd& b,
                       const std::vector<bool>& free_mask, double tol = 1e-8,
                       int max_iterations = 0);

}  // namespace popcert

#endif
