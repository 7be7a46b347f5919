#ifndef POPCERT_MINORS_HPP
#define POPCERT_MINORS_HPP

#include <vector>

#include <Eigen/Dense>

#include "popcert/moment_structure.hpp"
#include "popcert/multiindex.hpp"

namespace popcert {

// Strictly increasing 0-based row/column ordinals of a principal submatrix.
using IndexSet = std::vector<int>;

// All nonempty subsets with |I| <= max_order, by cardinality then
// lexicographically. The order is frozen: multiplier columns depend on it.
std::vector<IndexSet> enumerate_index_sets(int size, int max_order);

// Determinant: closed forms for sizes <= 3, LU with partial pivoting above.
double det_dense(const Eigen::MatrixXd& A);

double principal_minor(const Eigen::MatrixXd& M, const IndexSet& I);

// Signed cofactor matrix co(A)_{ij} = (-1)^{i+j} det(A^(i,j)); the 1x1 case
// returns [[1]] (empty-minor determinant is 1). Equals the gradient of det.
Eigen::MatrixXd comatrix(const Eigen::MatrixXd& A);

struct MinorEvaluation {
  IndexSet index_set;
  double value;            // det of the I x I submatrix
  Eigen::MatrixXd comatrix;  // co of the I x I submatrix
};

MinorEvaluation evaluate_minor(const Eigen::MatrixXd& M, const IndexSet& I);

// trace(co_I . S_{I,alpha}): the coefficient of the multiplier for index set I
// in the stationarity row alpha. S_{I,alpha} is the I x I restriction of the
// coefficient pattern of y_alpha in the structure.
double gradient_coefficient(const MinorEvaluation& me, const MatrixStructure& s,
                            const MultiIndex& alpha);

// Full stationarity column for one index set: out[moment_index] accumulates
// trace(co_I . S_{I,alpha}) for every alpha at once.
void accumulate_gradient_column(const MinorEvaluation& me, const MatrixStructure& s,
                                Eigen::VectorXd& out);

}  // namespace popcert

#endif
