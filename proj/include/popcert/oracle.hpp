#ifndef POPCERT_ORACLE_HPP
#define POPCERT_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "popcert/problem_io.hpp"

namespace popcert {

// Determinant by recursive cofactor expansion along the first row.
// Exponential cost; sizes above 8 are rejected.
double laplace_det(const Eigen::MatrixXd& A);

// Central finite differences with per-coordinate step h * (1 + |x_k|).
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& fn,
                            const Eigen::VectorXd& x, double step);

struct Basin {
  Eigen::VectorXd point;
  double value;
};

struct MinimizeOutcome {
  Eigen::VectorXd best_point;
  double best_value;
  std::vector<Basin> basins;  // distinct local minima, ascending value
};

struct MultistartOptions {
  int starts = 100;
  std::uint64_t seed = 42;
  double default_radius = 5.0;  // sampling half-width for unbounded variables
  double dedup_radius = 1e-3;
  double feasibility_tol = 1e-8;
};

// Penalty-method projected-gradient descent from seeded uniform starts.
// Labels candidate points on desk-scale problems; not a guaranteed global
// optimizer.
MinimizeOutcome multistart_minimize(const PopProblem& problem, const MultistartOptions& options);
MinimizeOutcome multistart_minimize(const PopProblem& problem, int starts, std::uint64_t seed);

// Sampling box inferred from canonical constraints of the shape
// c - sum a_k x_k^2 >= 0 (pure squares, positive c): |x_k| <= sqrt(c / a_k).
std::vector<std::pair<double, double>> infer_sampling_box(const PopProblem& problem,
                                                          double default_radius);

}  // namespace popcert

#endif
