#include "popcert/solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace popcert {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::IterationLimit: return "iteration-limit";
    case SolveStatus::NumericalFailure: return "numerical-failure";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// One simplex phase on the column set [0, ncols). Columns listed in `blocked`
// never enter (phase-2 artificials). Basis is re-solved via LU each pivot.
// Basic columns >= artificial_start sit at level zero on redundant rows and
// are pivoted out at theta = 0 as soon as an entering direction touches them.
SolveStatus simplex_phase(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& cost, std::vector<int>& basis,
                          const std::vector<bool>& blocked, double tol, int max_iter,
                          int& iters, int artificial_start) {
  const int m = static_cast<int>(A.rows());
  const int ncols = static_cast<int>(A.cols());
  std::vector<bool> in_basis(ncols, false);
  for (int j : basis) in_basis[j] = true;

  Eigen::MatrixXd B(m, m);
  int stall = 0;
  bool bland = false;
  double last_obj = std::numeric_limits<double>::infinity();

  while (iters < max_iter) {
    for (int i = 0; i < m; ++i) B.col(i) = A.col(basis[i]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd xB = lu.solve(b);
    Eigen::VectorXd cB(m);
    for (int i = 0; i < m; ++i) cB[i] = cost[basis[i]];
    Eigen::VectorXd yT = lu.transpose().solve(cB);
    if (!xB.allFinite() || !yT.allFinite()) return SolveStatus::NumericalFailure;

    // reduced costs c_j - y^T A_j over nonbasic, unblocked columns
    int enter = -1;
    double best = -tol;
    for (int j = 0; j < ncols; ++j) {
      if (in_basis[j] || blocked[j]) continue;
      const double red = cost[j] - yT.dot(A.col(j));
      if (bland) {
        if (red < -tol) {
          enter = j;
          break;
        }
      } else if (red < best) {
        best = red;
        enter = j;
      }
    }
    if (enter < 0) return SolveStatus::Optimal;

    Eigen::VectorXd d = lu.solve(A.col(enter));
    if (!d.allFinite()) return SolveStatus::NumericalFailure;

    int leave = -1;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= artificial_start && std::fabs(d[i]) > 1e-9) {
        leave = i;
        break;
      }
    }
    if (leave < 0) {
      // Two-pass ratio test: find the minimum ratio, then take the largest
      // pivot among rows within a relative hair of it.
      double rmin = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (d[i] > 1e-10) rmin = std::min(rmin, std::max(xB[i], 0.0) / d[i]);
      }
      if (!std::isfinite(rmin)) return SolveStatus::Unbounded;
      const double thresh = rmin + 1e-9 * (1.0 + std::fabs(rmin));
      for (int i = 0; i < m; ++i) {
        if (d[i] > 1e-10 && std::max(xB[i], 0.0) / d[i] <= thresh) {
          if (leave < 0 || d[i] > d[leave] ||
              (d[i] == d[leave] && basis[i] < basis[leave])) {
            leave = i;
          }
        }
      }
    }

    const double obj = cB.dot(xB);
    if (obj >= last_obj - 1e-12 * (1.0 + std::fabs(obj))) {
      if (++stall > 2 * m) bland = true;
    } else {
      stall = 0;
    }
    last_obj = obj;

    in_basis[basis[leave]] = false;
    in_basis[enter] = true;
    basis[leave] = enter;
    ++iters;
  }
  return SolveStatus::IterationLimit;
}

}  // namespace

LpResult lp_core(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                 const std::vector<bool>& free_mask, const LpOptions& options) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (static_cast<int>(free_mask.size()) != n || c.size() != n || b.size() != m) {
    throw std::invalid_argument("lp_core: inconsistent dimensions");
  }

  // Split free variables: x_j = x_j^+ - x_j^- with a negated extra column.
  std::vector<int> free_idx;
  for (int j = 0; j < n; ++j) {
    if (free_mask[j]) free_idx.push_back(j);
  }
  const int nsplit = static_cast<int>(free_idx.size());
  const int nn = n + nsplit;

  LpResult result;
  const int max_iter =
      options.max_iterations > 0 ? options.max_iterations : 50 * (nn + m);

  Eigen::MatrixXd Afull(m, nn + m);
  Afull.leftCols(n) = A;
  for (int k = 0; k < nsplit; ++k) Afull.col(n + k) = -A.col(free_idx[k]);
  Eigen::VectorXd cfull = Eigen::VectorXd::Zero(nn + m);
  cfull.head(n) = c;
  for (int k = 0; k < nsplit; ++k) cfull[n + k] = -c[free_idx[k]];

  std::vector<int> basis;
  std::vector<bool> blocked(nn + m, false);
  int iters = 0;

  if (options.warm_basis) {
    basis = *options.warm_basis;
    if (static_cast<int>(basis.size()) != m) {
      throw std::invalid_argument("lp_core: warm basis must have one column per row");
    }
    for (int j = nn; j < nn + m; ++j) blocked[j] = true;
    Afull.rightCols(m).setZero();
  } else {
    // Phase 1: artificial columns +-e_i, min sum of artificials.
    for (int i = 0; i < m; ++i) {
      Afull.col(nn + i) = Eigen::VectorXd::Unit(m, i) * (b[i] < 0 ? -1.0 : 1.0);
      basis.push_back(nn + i);
    }
    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(nn + m);
    c1.tail(m).setOnes();
    SolveStatus st = simplex_phase(Afull, b, c1, basis, blocked, options.tol, max_iter, iters,
                                   nn + m);
    result.iterations = iters;
    if (st != SolveStatus::Optimal) {
      result.status = st;
      return result;
    }
    // Check the phase-1 objective.
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i) B.col(i) = Afull.col(basis[i]);
    Eigen::VectorXd xB = Eigen::PartialPivLU<Eigen::MatrixXd>(B).solve(b);
    double art = 0.0;
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= nn) art += std::max(xB[i], 0.0);
    }
    if (art > 1e-7 * (1.0 + b.cwiseAbs().maxCoeff())) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    // Artificials still basic sit at level zero on redundant rows; they are
    // blocked from re-entering and their columns keep the identity structure
    // so the basis stays nonsingular.
    for (int j = nn; j < nn + m; ++j) blocked[j] = true;
  }

  SolveStatus st =
      simplex_phase(Afull, b, cfull, basis, blocked, options.tol, max_iter, iters, nn);
  result.iterations = iters;
  result.status = st;
  if (st != SolveStatus::Optimal) return result;

  Eigen::MatrixXd B(m, m);
  for (int i = 0; i < m; ++i) B.col(i) = Afull.col(basis[i]);
  Eigen::VectorXd xB = Eigen::PartialPivLU<Eigen::MatrixXd>(B).solve(b);
  Eigen::VectorXd xfull = Eigen::VectorXd::Zero(nn + m);
  for (int i = 0; i < m; ++i) xfull[basis[i]] = xB[i];

  result.x = xfull.head(n);
  for (int k = 0; k < nsplit; ++k) result.x[free_idx[k]] -= xfull[n + k];
  result.objective = c.dot(result.x);
  return result;
}

SolveOutcome solve_l1(const KktSystem& sys) {
  const int m = static_cast<int>(sys.coefficients.rows());
  const int ncols = static_cast<int>(sys.coefficients.cols());  // lambda + multipliers

  Eigen::MatrixXd A(m, ncols + 2 * m);
  A.leftCols(ncols) = sys.coefficients;
  A.middleCols(ncols, m) = Eigen::MatrixXd::Identity(m, m);
  A.rightCols(m) = -Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ncols + 2 * m);
  c.tail(2 * m).setOnes();
  std::vector<bool> free_mask(ncols + 2 * m, false);
  free_mask[0] = true;

  // The slack pair always provides a feasible start: s+_i or s-_i = |rhs_i|.
  std::vector<int> warm(m);
  for (int i = 0; i < m; ++i) warm[i] = sys.rhs[i] >= 0 ? ncols + i : ncols + m + i;
  LpOptions options;
  options.warm_basis = warm;

  LpResult lp = lp_core(c, A, sys.rhs, free_mask, options);
  SolveOutcome out;
  out.iterations = lp.iterations;
  out.status = lp.status;
  if (lp.status == SolveStatus::Optimal) {
    out.multipliers = lp.x.head(ncols);
    out.residual_norm = std::max(lp.objective, 0.0);
  }
  return out;
}

SolveOutcome nnls_free(const Eigen::MatrixXd& G, const Eigen::VectorXd& b,
                       const std::vector<bool>& free_mask, double tol, int max_iterations) {
  const int n = static_cast<int>(G.cols());
  const int max_iter = max_iterations > 0 ? max_iterations : std::max(10 * n, 20);

  std::vector<int> passive;
  std::vector<bool> in_passive(n, false);
  for (int j = 0; j < n; ++j) {
    if (free_mask[j]) {
      passive.push_back(j);
      in_passive[j] = true;
    }
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double wscale = 1.0 + (G.transpose() * b).cwiseAbs().maxCoeff();

  auto solve_passive = [&](Eigen::VectorXd& sol) {
    const int p = static_cast<int>(passive.size());
    Eigen::MatrixXd Gp(G.rows(), p);
    for (int k = 0; k < p; ++k) Gp.col(k) = G.col(passive[k]);
    // Minimum-norm least squares; tolerates rank-deficient passive sets.
    sol = Gp.completeOrthogonalDecomposition().solve(b);
  };
  auto embed = [&](const Eigen::VectorXd& sol) {
    x.setZero();
    for (std::size_t k = 0; k < passive.size(); ++k) {
      x[passive[k]] = free_mask[passive[k]] ? sol[k] : std::max(sol[k], 0.0);
    }
  };

  SolveOutcome out;
  int iters = 0;
  if (!passive.empty()) {
    Eigen::VectorXd sol;
    solve_passive(sol);
    embed(sol);
  }
  Eigen::VectorXd r = b - G * x;
  while (true) {
    const Eigen::VectorXd w = G.transpose() * r;

    // Candidate selection: most positive dual first. A candidate whose
    // least-squares coefficient comes back non-positive cannot make progress;
    // its dual is treated as zero within this round only.
    std::vector<bool> rejected(n, false);
    int enter = -1;
    Eigen::VectorXd sol;
    while (true) {
      enter = -1;
      double bestw = tol * wscale;
      for (int j = 0; j < n; ++j) {
        if (in_passive[j] || rejected[j]) continue;
        if (w[j] > bestw) {
          bestw = w[j];
          enter = j;
        }
      }
      if (enter < 0) break;
      passive.push_back(enter);
      in_passive[enter] = true;
      solve_passive(sol);
      if (sol[passive.size() - 1] > 0.0) break;  // accepted
      passive.pop_back();
      in_passive[enter] = false;
      rejected[enter] = true;
    }
    if (enter < 0 || iters >= max_iter) {
      out.multipliers = x;
      out.residual_norm = r.norm();
      out.iterations = iters;
      out.status = enter < 0 ? SolveStatus::Optimal : SolveStatus::IterationLimit;
      return out;
    }
    ++iters;

    // Feasibility restoration: step from x toward sol until the first
    // passive variable hits its bound, drop it, re-solve, repeat.
    int guard = 0;
    while (guard++ <= 2 * n) {
      bool any_bad = false;
      for (std::size_t k = 0; k < passive.size(); ++k) {
        if (!free_mask[passive[k]] && sol[k] <= 1e-14) {
          any_bad = true;
          break;
        }
      }
      if (!any_bad) break;
      double alpha = 1.0;
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const int j = passive[k];
        if (free_mask[j] || sol[k] > 1e-14) continue;
        const double denom = x[j] - sol[k];
        if (denom > 0.0) alpha = std::min(alpha, x[j] / denom);
      }
      for (std::size_t k = 0; k < passive.size(); ++k) {
        const int j = passive[k];
        x[j] += alpha * (sol[k] - x[j]);
      }
      std::vector<int> keep;
      for (int j : passive) {
        if (free_mask[j] || x[j] > 1e-14) {
          keep.push_back(j);
        } else {
          in_passive[j] = false;
          x[j] = 0.0;
        }
      }
      passive = std::move(keep);
      if (passive.empty()) break;
      solve_passive(sol);
    }
    if (!passive.empty()) embed(sol);
    r = b - G * x;
  }
}

SolveOutcome solve_l2(const KktSystem& sys) {
  // Split equality constraints produce pairwise bit-identical columns, which
  // would make every passive submatrix rank-deficient. Collapse exact
  // duplicates (and all-zero columns) before the active-set iteration; the
  // shared multiplier value lands on the first column of each group.
  const int ncols = static_cast<int>(sys.coefficients.cols());
  std::vector<int> keep;
  std::vector<int> owner(ncols, -1);
  for (int j = 0; j < ncols; ++j) {
    if (j > 0 && sys.coefficients.col(j).isZero(0.0)) continue;
    bool duplicate = false;
    for (int k : keep) {
      if (sys.coefficients.col(j) == sys.coefficients.col(k)) {
        owner[j] = k;
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      owner[j] = j;
      keep.push_back(j);
    }
  }

  Eigen::MatrixXd G(sys.coefficients.rows(), keep.size());
  for (std::size_t k = 0; k < keep.size(); ++k) G.col(k) = sys.coefficients.col(keep[k]);
  std::vector<bool> free_mask(keep.size(), false);
  free_mask[0] = true;

  SolveOutcome out = nnls_free(G, sys.rhs, free_mask);
  Eigen::VectorXd full = Eigen::VectorXd::Zero(ncols);
  for (std::size_t k = 0; k < keep.size(); ++k) full[keep[k]] = out.multipliers[k];
  out.multipliers = std::move(full);
  return out;
}

}  // namespace popcert
