#include "popcert/minors.hpp"

#include <cmath>
#include <stdexcept>

namespace popcert {

std::vector<IndexSet> enumerate_index_sets(int size, int max_order) {
  if (size < 1 || max_order < 1 || max_order > size) {
    throw std::invalid_argument("enumerate_index_sets: need 1 <= max_order <= size");
  }
  std::vector<IndexSet> out;
  for (int card = 1; card <= max_order; ++card) {
    IndexSet cur(card);
    for (int i = 0; i < card; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      int i = card - 1;
      while (i >= 0 && cur[i] == size - card + i) --i;
      if (i < 0) break;
      ++cur[i];
      for (int j = i + 1; j < card; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

double det_dense(const Eigen::MatrixXd& A) {
  const int k = static_cast<int>(A.rows());
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return A(0, 0);
    case 2:
      return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    case 3:
      return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
             A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
             A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    default: {
      // LU with partial pivoting.
      Eigen::MatrixXd U = A;
      double det = 1.0;
      for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r) {
          if (std::fabs(U(r, c)) > std::fabs(U(piv, c))) piv = r;
        }
        if (U(piv, c) == 0.0) return 0.0;
        if (piv != c) {
          U.row(piv).swap(U.row(c));
          det = -det;
        }
        det *= U(c, c);
        for (int r = c + 1; r < k; ++r) {
          const double m = U(r, c) / U(c, c);
          if (m != 0.0) U.row(r).tail(k - c - 1) -= m * U.row(c).tail(k - c - 1);
        }
      }
      return det;
    }
  }
}

double principal_minor(const Eigen::MatrixXd& M, const IndexSet& I) {
  const int k = static_cast<int>(I.size());
  Eigen::MatrixXd sub(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) sub(r, c) = M(I[r], I[c]);
  }
  return det_dense(sub);
}

Eigen::MatrixXd comatrix(const Eigen::MatrixXd& A) {
  const int k = static_cast<int>(A.rows());
  if (k != A.cols()) throw std::invalid_argument("comatrix of a non-square matrix");
  if (k == 1) return Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd C(k, k);
  Eigen::MatrixXd sub(k - 1, k - 1);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      for (int r = 0, rr = 0; r < k; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < k; ++c) {
          if (c == j) continue;
          sub(rr, cc) = A(r, c);
          ++cc;
        }
        ++rr;
      }
      const double d = det_dense(sub);
      C(i, j) = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return C;
}

MinorEvaluation evaluate_minor(const Eigen::MatrixXd& M, const IndexSet& I) {
  const int k = static_cast<int>(I.size());
  Eigen::MatrixXd sub(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) sub(r, c) = M(I[r], I[c]);
  }
  return MinorEvaluation{I, det_dense(sub), comatrix(sub)};
}

double gradient_coefficient(const MinorEvaluation& me, const MatrixStructure& s,
                            const MultiIndex& alpha) {
  const int target = s.moment_basis().position(alpha);
  const int k = static_cast<int>(me.index_set.size());
  double acc = 0.0;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      for (const auto& e : s.entry(me.index_set[r], me.index_set[c])) {
        if (e.moment == target) acc += me.comatrix(c, r) * e.coeff;
      }
    }
  }
  return acc;
}

void accumulate_gradient_column(const MinorEvaluation& me, const MatrixStructure& s,
                                Eigen::VectorXd& out) {
  const int k = static_cast<int>(me.index_set.size());
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const double w = me.comatrix(c, r);
      if (w == 0.0) continue;
      for (const auto& e : s.entry(me.index_set[r], me.index_set[c])) {
        out[e.moment] += w * e.coeff;
      }
    }
  }
}

}  // namespace popcert
