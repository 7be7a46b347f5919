#ifndef POPCERT_KKT_HPP
#define POPCERT_KKT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "popcert/minors.hpp"
#include "popcert/moment_structure.hpp"
#include "popcert/problem_io.hpp"

namespace popcert {

// Identifies the multiplier of one principal-minor constraint:
// matrix == -1 for the moment matrix, i >= 0 for the i-th localizing matrix.
struct MultiplierId {
  int matrix;
  IndexSet index_set;

  bool operator==(const MultiplierId&) const = default;
};

std::string multiplier_label(const MultiplierId& id);

struct ActiveMultipliers {
  std::vector<MultiplierId> retained;
  std::vector<MultiplierId> fixed_zero;
};

// Complementarity screening at a lifted point. Singleton multipliers whose
// diagonal exceeds tol_comp * (1 + ||M||_inf) are fixed to zero; a diagonal
// below -tol_feas * (1 + ||M||_inf) means the lift is infeasible. Minors of
// non-singleton index sets vanish at every lift, so those multipliers are
// always retained.
ActiveMultipliers active_multipliers(const std::vector<MatrixStructure>& structures,
                                     const std::vector<Eigen::MatrixXd>& values,
                                     double tol_comp, double tol_feas,
                                     int max_minor_order = 0);

// Linear feasibility system in the dual multipliers at a lifted point.
// Column 0 of `coefficients` belongs to the sign-free multiplier of y_0 = 1
// (the indicator of alpha = 0); column 1+j to columns[j], constrained >= 0.
// The stationarity residual is rhs - coefficients * [lambda; mu].
struct KktSystem {
  MonomialBasis rows;  // basis(n, 2d): one stationarity row per alpha
  std::vector<MultiplierId> columns;
  std::vector<MultiplierId> fixed_zero;
  Eigen::MatrixXd coefficients;  // rows.size() x (1 + columns.size())
  Eigen::VectorXd rhs;           // f_alpha
  int n0 = 0;
  std::vector<int> ni;
};

struct AssembleOptions {
  double tol_comp = 1e-9;
  double tol_feas = 1e-6;
  int max_minor_order = 0;  // 0 = no cap (all index sets)
};

KktSystem assemble(const PopProblem& problem, const CandidatePoint& x, int order,
                   const AssembleOptions& options = {});

// Normalizes every row of [coefficients | rhs] to unit infinity norm.
void scale_rows_inplace(KktSystem& sys);

// CSV dump: header of column labels plus "rhs", then the numeric rows.
void dump_kkt_csv(const KktSystem& sys, std::ostream& out);

}  // namespace popcert

#endif
