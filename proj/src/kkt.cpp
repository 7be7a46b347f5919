#include "popcert/kkt.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "popcert/errors.hpp"

namespace popcert {

std::string multiplier_label(const MultiplierId& id) {
  std::string out = "l" + std::to_string(id.matrix + 1) + "{";
  for (std::size_t k = 0; k < id.index_set.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(id.index_set[k] + 1);  // 1-based in labels
  }
  return out + "}";
}

ActiveMultipliers active_multipliers(const std::vector<MatrixStructure>& structures,
                                     const std::vector<Eigen::MatrixXd>& values,
                                     double tol_comp, double tol_feas, int max_minor_order) {
  if (structures.size() != values.size()) {
    throw std::invalid_argument("structures/values size mismatch");
  }
  ActiveMultipliers out;
  for (std::size_t s = 0; s < structures.size(); ++s) {
    const MatrixStructure& st = structures[s];
    const Eigen::MatrixXd& M = values[s];
    const int matrix_id = st.kind() == MatrixStructure::Kind::Moment ? -1
                                                                     : st.constraint_index();
    const double scale = 1.0 + M.cwiseAbs().maxCoeff();
    const int cap = (max_minor_order > 0) ? std::min(max_minor_order, st.size()) : st.size();
    for (const IndexSet& I : enumerate_index_sets(st.size(), cap)) {
      if (I.size() == 1) {
        const double diag = M(I[0], I[0]);
        if (diag < -tol_feas * scale) {
          if (matrix_id < 0) {
            throw std::runtime_error("internal: negative diagonal in the moment matrix");
          }
          throw InfeasibleCandidateError(matrix_id, diag);
        }
        if (diag > tol_comp * scale) {
          out.fixed_zero.push_back({matrix_id, I});
          continue;
        }
      }
      out.retained.push_back({matrix_id, I});
    }
  }
  return out;
}

KktSystem assemble(const PopProblem& problem, const CandidatePoint& x, int order,
                   const AssembleOptions& options) {
  const int n = problem.nvars();
  if (order < problem.min_order()) throw OrderTooSmallError(order, problem.min_order());

  const LiftedPoint y = lift_point(x, n, order);

  std::vector<MatrixStructure> structures;
  structures.reserve(1 + problem.constraints.size());
  structures.push_back(moment_structure(n, order));
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    structures.push_back(
        localizing_structure(problem.constraints[i], order, static_cast<int>(i)));
  }
  std::vector<Eigen::MatrixXd> values;
  values.reserve(structures.size());
  for (const auto& st : structures) values.push_back(eval_structure(st, y));

  ActiveMultipliers active = active_multipliers(structures, values, options.tol_comp,
                                                options.tol_feas, options.max_minor_order);

  KktSystem sys;
  sys.rows = y.basis;
  sys.columns = std::move(active.retained);
  sys.fixed_zero = std::move(active.fixed_zero);
  sys.n0 = structures.front().size();
  for (std::size_t i = 1; i < structures.size(); ++i) sys.ni.push_back(structures[i].size());

  const int nrows = sys.rows.size();
  sys.rhs = Eigen::VectorXd::Zero(nrows);
  for (const auto& [a, c] : problem.objective.terms()) {
    sys.rhs[sys.rows.position(a)] += c;
  }

  sys.coefficients = Eigen::MatrixXd::Zero(nrows, 1 + static_cast<int>(sys.columns.size()));
  sys.coefficients(0, 0) = 1.0;  // the y_0 = 1 multiplier appears only in row alpha = 0
  Eigen::VectorXd col(nrows);
  for (std::size_t j = 0; j < sys.columns.size(); ++j) {
    const MultiplierId& id = sys.columns[j];
    const std::size_t s = static_cast<std::size_t>(id.matrix + 1);
    const MinorEvaluation me = evaluate_minor(values[s], id.index_set);
    col.setZero();
    accumulate_gradient_column(me, structures[s], col);
    sys.coefficients.col(1 + static_cast<int>(j)) = col;
  }
  return sys;
}

void scale_rows_inplace(KktSystem& sys) {
  for (int r = 0; r < sys.coefficients.rows(); ++r) {
    double m = std::fabs(sys.rhs[r]);
    m = std::max(m, sys.coefficients.row(r).cwiseAbs().maxCoeff());
    if (m > 0.0) {
      sys.coefficients.row(r) /= m;
      sys.rhs[r] /= m;
    }
  }
}

void dump_kkt_csv(const KktSystem& sys, std::ostream& out) {
  out << "lambda";
  for (const auto& id : sys.columns) out << "," << multiplier_label(id);
  out << ",rhs\n";
  char buf[32];
  for (int r = 0; r < sys.coefficients.rows(); ++r) {
    for (int c = 0; c < sys.coefficients.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", sys.coefficients(r, c));
      out << (c ? "," : "") << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", sys.rhs[r]);
    out << "," << buf << "\n";
  }
}

}  // namespace popcert
