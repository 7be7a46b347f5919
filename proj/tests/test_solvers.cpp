#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "popcert/solvers.hpp"
#include "univariate_reference.hpp"

using namespace popcert;
using popcert_tests::univariate_problem;

namespace {

// Exhaustive vertex enumeration: the optimum of a bounded feasible LP in
// standard form is attained at a basic feasible solution.
double vertex_enumeration_optimum(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                                  const Eigen::VectorXd& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(m);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == m) {
      Eigen::MatrixXd B(m, m);
      for (int i = 0; i < m; ++i) B.col(i) = A.col(pick[i]);
      if (std::fabs(B.determinant()) < 1e-10) return;
      const Eigen::VectorXd xB = B.partialPivLu().solve(b);
      if (xB.minCoeff() < -1e-9) return;
      double v = 0.0;
      for (int i = 0; i < m; ++i) v += c[pick[i]] * xB[i];
      best = std::min(best, v);
      return;
    }
    for (int j = start; j < n; ++j) {
      pick[depth] = j;
      rec(j + 1, depth + 1);
    }
  };
  rec(0, 0);
  return best;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("lp_core basics") {
  // min x s.t. x = 3, x >= 0.
  Eigen::MatrixXd A(1, 1);
  A << 1.0;
  Eigen::VectorXd b(1), c(1);
  b << 3.0;
  c << 1.0;
  const LpResult r = lp_core(c, A, b, {false});
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == doctest::Approx(3.0));

  // min s+ + s- s.t. s+ - s- = 1.
  Eigen::MatrixXd A2(1, 2);
  A2 << 1.0, -1.0;
  Eigen::VectorXd b2(1), c2(2);
  b2 << 1.0;
  c2 << 1.0, 1.0;
  const LpResult r2 = lp_core(c2, A2, b2, {false, false});
  REQUIRE(r2.status == SolveStatus::Optimal);
  CHECK(r2.objective == doctest::Approx(1.0));

  // Infeasible: x1 + x2 = -1 with x >= 0.
  Eigen::MatrixXd A3(1, 2);
  A3 << 1.0, 1.0;
  Eigen::VectorXd b3(1), c3(2);
  b3 << -1.0;
  c3 << 1.0, 1.0;
  CHECK(lp_core(c3, A3, b3, {false, false}).status == SolveStatus::Infeasible);

  // Free variable: min x + y s.t. x + y = -5, x free, y >= 0.
  Eigen::MatrixXd A4(1, 2);
  A4 << 1.0, 1.0;
  Eigen::VectorXd b4(1), c4(2);
  b4 << -5.0;
  c4 << 1.0, 1.0;
  const LpResult r4 = lp_core(c4, A4, b4, {true, false});
  REQUIRE(r4.status == SolveStatus::Optimal);
  CHECK(r4.objective == doctest::Approx(-5.0));
  CHECK(r4.x[0] == doctest::Approx(-5.0));
}

TEST_CASE("lp_core agrees with vertex enumeration on random LPs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.1, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 5);          // <= 6 rows
    const int n = m + 1 + static_cast<int>(rng() % 3);
    Eigen::MatrixXd A(m, n);
    for (int i = 0; i < m * n; ++i) A(i / n, i % n) = unit(rng);
    Eigen::VectorXd x0(n);
    for (int j = 0; j < n; ++j) x0[j] = pos(rng);            // feasible by construction
    const Eigen::VectorXd b = A * x0;
    Eigen::VectorXd c(n);
    for (int j = 0; j < n; ++j) c[j] = pos(rng);             // bounded below by zero

    const double oracle = vertex_enumeration_optimum(c, A, b);
    const LpResult r = lp_core(c, A, b, std::vector<bool>(n, false));
    REQUIRE(r.status == SolveStatus::Optimal);
    CHECK(std::fabs(r.objective - oracle) <= 1e-8 * (1.0 + std::fabs(oracle)));
  }
}

TEST_CASE("univariate golden residuals") {
  const PopProblem p = univariate_problem();

  const KktSystem global = assemble(p, {{2.0}}, 2);
  const SolveOutcome g1 = solve_l1(global);
  const SolveOutcome g2 = solve_l2(global);
  REQUIRE(g1.status == SolveStatus::Optimal);
  REQUIRE(g2.status == SolveStatus::Optimal);
  CHECK(g1.residual_norm <= 1e-10);
  CHECK(g2.residual_norm <= 1e-10);

  const KktSystem local = assemble(p, {{-2.0}}, 2);
  const SolveOutcome l1 = solve_l1(local);
  const SolveOutcome l2 = solve_l2(local);
  REQUIRE(l1.status == SolveStatus::Optimal);
  REQUIRE(l2.status == SolveStatus::Optimal);
  // Hand-derivable optimum: the alpha = 1 row is -3/2 - 4 mu1 - 20 mu5 with
  // mu >= 0, so |r_1| >= 3/2; zeroing rows 2 and 3 leaves |r_4| = 3/64.
  CHECK(l1.residual_norm == doctest::Approx(99.0 / 64.0).epsilon(1e-10));
  CHECK(l2.residual_norm == doctest::Approx(1.5006327).epsilon(1e-6));
  CHECK(l2.residual_norm >= 1.5);
}

TEST_CASE("multiplier sign constraints hold at the solution") {
  const PopProblem p = univariate_problem();
  const KktSystem sys = assemble(p, {{-2.0}}, 2);
  for (const SolveOutcome& out : {solve_l1(sys), solve_l2(sys)}) {
    REQUIRE(out.multipliers.size() == sys.coefficients.cols());
    for (int j = 1; j < out.multipliers.size(); ++j) {
      CHECK(out.multipliers[j] >= -1e-12);
    }
  }
}

TEST_CASE("a system with no retained multipliers is absorbed by lambda") {
  KktSystem sys;
  sys.rows = MonomialBasis(1, 2);
  sys.coefficients = Eigen::MatrixXd::Zero(sys.rows.size(), 1);
  sys.coefficients(0, 0) = 1.0;
  sys.rhs = Eigen::VectorXd::Zero(sys.rows.size());
  sys.rhs[0] = 7.0;  // constant objective
  const SolveOutcome o1 = solve_l1(sys);
  REQUIRE(o1.status == SolveStatus::Optimal);
  CHECK(o1.residual_norm <= 1e-12);
  CHECK(o1.multipliers[0] == doctest::Approx(7.0));
  const SolveOutcome o2 = solve_l2(sys);
  REQUIRE(o2.status == SolveStatus::Optimal);
  CHECK(o2.residual_norm <= 1e-12);
  CHECK(o2.multipliers[0] == doctest::Approx(7.0));
}

TEST_CASE("zero right-hand side gives zero multipliers and residual") {
  const PopProblem p = univariate_problem();
  KktSystem sys = assemble(p, {{2.0}}, 2);
  sys.rhs.setZero();
  const SolveOutcome o2 = solve_l2(sys);
  REQUIRE(o2.status == SolveStatus::Optimal);
  CHECK(o2.residual_norm == 0.0);
  CHECK(o2.multipliers.cwiseAbs().maxCoeff() == 0.0);
  const SolveOutcome o1 = solve_l1(sys);
  REQUIRE(o1.status == SolveStatus::Optimal);
  CHECK(o1.residual_norm <= 1e-12);
}

TEST_CASE("norm ordering at the respective optima") {
  const PopProblem p = univariate_problem();
  for (const double xv : {2.0, -2.0}) {
    const KktSystem sys = assemble(p, {{xv}}, 2);
    const SolveOutcome o1 = solve_l1(sys);
    const SolveOutcome o2 = solve_l2(sys);
    const Eigen::VectorXd r1 = sys.rhs - sys.coefficients * o1.multipliers;
    CHECK(o2.residual_norm <= r1.norm() + 1e-9);
    CHECK(r1.norm() <= r1.lpNorm<1>() + 1e-9);
    CHECK(std::fabs(r1.lpNorm<1>() - o1.residual_norm) <= 1e-9);
  }
}

TEST_CASE("complementary slackness of the l1 slack pair") {
  const PopProblem p = univariate_problem();
  const KktSystem sys = assemble(p, {{-2.0}}, 2);
  const SolveOutcome o1 = solve_l1(sys);
  const Eigen::VectorXd r = sys.rhs - sys.coefficients * o1.multipliers;
  // s+ = max(r, 0), s- = max(-r, 0) at the optimum: their product vanishes.
  for (int i = 0; i < r.size(); ++i) {
    const double splus = std::max(r[i], 0.0);
    const double sminus = std::max(-r[i], 0.0);
    CHECK(splus * sminus <= 1e-12);
  }
}

TEST_CASE("repeated solves are bit-identical") {
  const PopProblem p = univariate_problem();
  const KktSystem sys = assemble(p, {{-2.0}}, 2);
  const SolveOutcome a1 = solve_l1(sys);
  const SolveOutcome b1 = solve_l1(sys);
  REQUIRE(a1.multipliers.size() == b1.multipliers.size());
  for (int j = 0; j < a1.multipliers.size(); ++j) {
    CHECK(a1.multipliers[j] == b1.multipliers[j]);
  }
  const SolveOutcome a2 = solve_l2(sys);
  const SolveOutcome b2 = solve_l2(sys);
  for (int j = 0; j < a2.multipliers.size(); ++j) {
    CHECK(a2.multipliers[j] == b2.multipliers[j]);
  }
}

TEST_CASE("nnls_free agrees with brute-force support enumeration") {
  std::mt19937_64 rng(54321);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 5);
    const int n = 2 + static_cast<int>(rng() % 6);
    Eigen::MatrixXd G(m, n);
    for (int i = 0; i < m * n; ++i) G(i / n, i % n) = unit(rng);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b[i] = unit(rng);

    double best = b.norm();
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> S;
      for (int j = 0; j < n; ++j) {
        if (mask & (1 << j)) S.push_back(j);
      }
      Eigen::MatrixXd Gs(m, S.size());
      for (std::size_t k = 0; k < S.size(); ++k) Gs.col(k) = G.col(S[k]);
      const Eigen::VectorXd sol = Gs.completeOrthogonalDecomposition().solve(b);
      if (sol.minCoeff() < 0.0) continue;
      best = std::min(best, (b - Gs * sol).norm());
    }
    const SolveOutcome out = nnls_free(G, b, std::vector<bool>(n, false));
    REQUIRE(out.status == SolveStatus::Optimal);
    CHECK(out.residual_norm <= best + 1e-8 * (1.0 + best));
  }
}

}  // TEST_SUITE
