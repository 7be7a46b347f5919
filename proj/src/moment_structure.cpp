#include "popcert/moment_structure.hpp"

#include <stdexcept>

#include "popcert/errors.hpp"

namespace popcert {

LiftedPoint lift_point(const CandidatePoint& x, int nvars, int order) {
  if (static_cast<int>(x.values.size()) != nvars) {
    throw std::invalid_argument("candidate point length mismatch");
  }
  LiftedPoint y;
  y.order = order;
  y.basis = MonomialBasis(nvars, 2 * order);
  y.values.resize(y.basis.size());
  for (int i = 0; i < y.basis.size(); ++i) {
    const MultiIndex& a = y.basis[i];
    if (total_degree(a) == 0) {
      y.values[i] = 1.0;
      continue;
    }
    int k = 0;
    while (a[k] == 0) ++k;
    MultiIndex prev = a;
    prev[k] -= 1;
    y.values[i] = y.values[y.basis.position(prev)] * x.values[k];
  }
  return y;
}

MatrixStructure MatrixStructure::moment(int nvars, int order) {
  if (order < 1) throw std::invalid_argument("moment structure requires order >= 1");
  MatrixStructure s;
  s.kind_ = Kind::Moment;
  s.order_ = order;
  s.rows_ = MonomialBasis(nvars, order);
  s.moment_basis_ = MonomialBasis(nvars, 2 * order);
  const int m = s.rows_.size();
  s.entries_.resize(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      s.entries_[r * m + c] = {
          Entry{1.0, s.moment_basis_.position(add(s.rows_[r], s.rows_[c]))}};
    }
  }
  return s;
}

MatrixStructure MatrixStructure::localizing(const Polynomial& g, int order,
                                            int constraint_index) {
  const int k = g.half_degree();
  if (order < k) throw OrderTooSmallError(order, k);
  MatrixStructure s;
  s.kind_ = Kind::Localizing;
  s.constraint_index_ = constraint_index;
  s.order_ = order;
  s.rows_ = MonomialBasis(g.nvars(), order - k);
  s.moment_basis_ = MonomialBasis(g.nvars(), 2 * order);
  const int m = s.rows_.size();
  s.entries_.resize(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      auto& list = s.entries_[r * m + c];
      const MultiIndex rc = add(s.rows_[r], s.rows_[c]);
      for (const auto& [gamma, coeff] : g.terms()) {
        list.push_back(Entry{coeff, s.moment_basis_.position(add(rc, gamma))});
      }
    }
  }
  return s;
}

Eigen::MatrixXd MatrixStructure::evaluate(std::span<const double> moments) const {
  if (static_cast<int>(moments.size()) < moment_basis_.size()) {
    throw std::out_of_range("moment vector too short for structure evaluation");
  }
  const int m = size();
  Eigen::MatrixXd M(m, m);
  for (int r = 0; r < m; ++r) {
    for (int c = r; c < m; ++c) {
      double v = 0.0;
      for (const Entry& e : entry(r, c)) v += e.coeff * moments[e.moment];
      M(r, c) = v;
      M(c, r) = v;
    }
  }
  return M;
}

MatrixStructure moment_structure(int nvars, int order) {
  return MatrixStructure::moment(nvars, order);
}

MatrixStructure localizing_structure(const Polynomial& g, int order, int constraint_index) {
  return MatrixStructure::localizing(g, order, constraint_index);
}

Eigen::MatrixXd eval_structure(const MatrixStructure& s, const LiftedPoint& y) {
  if (y.order < s.order()) {
    throw std::invalid_argument("lifted point order too small for structure");
  }
  return s.evaluate(y.values);
}

}  // namespace popcert
