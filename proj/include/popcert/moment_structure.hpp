#ifndef POPCERT_MOMENT_STRUCTURE_HPP
#define POPCERT_MOMENT_STRUCTURE_HPP

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "popcert/multiindex.hpp"
#include "popcert/polynomial.hpp"
#include "popcert/problem_io.hpp"

namespace popcert {

// Moment vector of a concrete point: values[i] = x^a over basis(n, 2*order).
// Built by repeated multiplication along the graded basis so that the
// multiplicativity y_{a+b} = y_a * y_b holds bit-consistently.
struct LiftedPoint {
  int order = 0;
  MonomialBasis basis;  // basis(n, 2*order)
  std::vector<double> values;
};

LiftedPoint lift_point(const CandidatePoint& x, int nvars, int order);

// Symbolic structure of a moment or localizing matrix: each entry (r,c) is a
// linear form sum_j coeff_j * y_{moment_j}, with moment indices referring to
// basis(n, 2*order) of the owning relaxation.
class MatrixStructure {
 public:
  enum class Kind { Moment, Localizing };

  static MatrixStructure moment(int nvars, int order);
  static MatrixStructure localizing(const Polynomial& g, int order, int constraint_index);

  Kind kind() const { return kind_; }
  int constraint_index() const { return constraint_index_; }
  int order() const { return order_; }
  int size() const { return rows_.size(); }
  const MonomialBasis& rows() const { return rows_; }
  const MonomialBasis& moment_basis() const { return moment_basis_; }

  struct Entry {
    double coeff;
    int moment;  // index into basis(nvars, 2*order)
  };
  const std::vector<Entry>& entry(int r, int c) const { return entries_[r * size() + c]; }

  // Dense symmetric value at a moment vector indexed by basis(n, 2*order).
  // Only the upper triangle is accumulated, then mirrored.
  Eigen::MatrixXd evaluate(std::span<const double> moments) const;

 private:
  Kind kind_ = Kind::Moment;
  int constraint_index_ = -1;
  int order_ = 0;
  MonomialBasis rows_;
  MonomialBasis moment_basis_;
  std::vector<std::vector<Entry>> entries_;
};

MatrixStructure moment_structure(int nvars, int order);
MatrixStructure localizing_structure(const Polynomial& g, int order, int constraint_index = -1);
Eigen::MatrixXd eval_structure(const MatrixStructure& s, const LiftedPoint& y);

}  // namespace popcert

#endif
