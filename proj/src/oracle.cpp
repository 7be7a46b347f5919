#include "popcert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace popcert {

double laplace_det(const Eigen::MatrixXd& A) {
  const int k = static_cast<int>(A.rows());
  if (k != A.cols()) throw std::invalid_argument("laplace_det of a non-square matrix");
  if (k > 8) throw std::invalid_argument("laplace_det capped at size 8");
  if (k == 0) return 1.0;
  if (k == 1) return A(0, 0);
  double acc = 0.0;
  Eigen::MatrixXd sub(k - 1, k - 1);
  for (int j = 0; j < k; ++j) {
    if (A(0, j) == 0.0) continue;
    for (int r = 1; r < k; ++r) {
      for (int c = 0, cc = 0; c < k; ++c) {
        if (c == j) continue;
        sub(r - 1, cc++) = A(r, c);
      }
    }
    acc += (j % 2 == 0 ? 1.0 : -1.0) * A(0, j) * laplace_det(sub);
  }
  return acc;
}

Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& fn,
                            const Eigen::VectorXd& x, double step) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd xp = x;
  for (int k = 0; k < x.size(); ++k) {
    const double h = step * (1.0 + std::fabs(x[k]));
    xp[k] = x[k] + h;
    const double fp = fn(xp);
    xp[k] = x[k] - h;
    const double fm = fn(xp);
    xp[k] = x[k];
    g[k] = (fp - fm) / (2.0 * h);
  }
  return g;
}

std::vector<std::pair<double, double>> infer_sampling_box(const PopProblem& problem,
                                                          double default_radius) {
  const int n = problem.nvars();
  std::vector<std::pair<double, double>> box(n, {-default_radius, default_radius});
  for (const auto& g : problem.constraints) {
    double c = 0.0;
    bool shape_ok = true;
    std::vector<std::pair<int, double>> squares;  // (variable, positive weight)
    for (const auto& [a, coef] : g.terms()) {
      const int deg = total_degree(a);
      if (deg == 0) {
        c = coef;
      } else if (deg == 2 && coef < 0.0 &&
                 std::count(a.begin(), a.end(), 2) == 1) {
        const int var =
            static_cast<int>(std::find(a.begin(), a.end(), 2) - a.begin());
        squares.emplace_back(var, -coef);
      } else {
        shape_ok = false;
        break;
      }
    }
    if (!shape_ok || c <= 0.0 || squares.empty()) continue;
    for (const auto& [var, weight] : squares) {
      const double r = std::sqrt(c / weight);
      box[var].first = std::max(box[var].first, -r);
      box[var].second = std::min(box[var].second, r);
    }
  }
  return box;
}

namespace {

struct PenaltyModel {
  const PopProblem* problem;
  std::vector<Polynomial> obj_grad;
  std::vector<std::vector<Polynomial>> con_grad;

  explicit PenaltyModel(const PopProblem& p) : problem(&p) {
    const int n = p.nvars();
    for (int k = 0; k < n; ++k) obj_grad.push_back(p.objective.partial(k));
    for (const auto& g : p.constraints) {
      std::vector<Polynomial> row;
      for (int k = 0; k < n; ++k) row.push_back(g.partial(k));
      con_grad.push_back(std::move(row));
    }
  }

  double value(const Eigen::VectorXd& x, double rho) const {
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    double v = problem->objective.evaluate(xs);
    for (const auto& g : problem->constraints) {
      const double gi = g.evaluate(xs);
      if (gi < 0.0) v += rho * gi * gi;
    }
    return v;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x, double rho) const {
    const int n = problem->nvars();
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    Eigen::VectorXd g(n);
    for (int k = 0; k < n; ++k) g[k] = obj_grad[k].evaluate(xs);
    for (std::size_t i = 0; i < problem->constraints.size(); ++i) {
      const double gi = problem->constraints[i].evaluate(xs);
      if (gi < 0.0) {
        for (int k = 0; k < n; ++k) g[k] += 2.0 * rho * gi * con_grad[i][k].evaluate(xs);
      }
    }
    return g;
  }

  double max_violation(const Eigen::VectorXd& x) const {
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    double v = 0.0;
    for (const auto& g : problem->constraints) v = std::max(v, -g.evaluate(xs));
    return v;
  }
};

Eigen::VectorXd project_box(Eigen::VectorXd x,
                            const std::vector<std::pair<double, double>>& box) {
  for (int k = 0; k < x.size(); ++k) {
    x[k] = std::clamp(x[k], box[static_cast<std::size_t>(k)].first,
                      box[static_cast<std::size_t>(k)].second);
  }
  return x;
}

// Projected gradient descent with Armijo backtracking on the penalty surface.
Eigen::VectorXd descend(const PenaltyModel& model, Eigen::VectorXd x,
                        const std::vector<std::pair<double, double>>& box, double rho,
                        int max_steps) {
  double step = 1.0;
  double fx = model.value(x, rho);
  for (int it = 0; it < max_steps; ++it) {
    const Eigen::VectorXd g = model.gradient(x, rho);
    if (g.norm() <= 1e-12 * (1.0 + std::fabs(fx))) break;
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Eigen::VectorXd cand = project_box(x - step * g, box);
      const double fc = model.value(cand, rho);
      const double decrease = g.dot(x - cand);
      if (fc <= fx - 1e-4 * decrease && fc < fx) {
        const double dx = (cand - x).norm();
        x = std::move(cand);
        fx = fc;
        moved = true;
        step *= 1.6;
        if (dx <= 1e-10 * (1.0 + x.norm())) return x;
        break;
      }
      step *= 0.5;
      if (step < 1e-16) break;
    }
    if (!moved) break;
  }
  return x;
}

// Gauss-Newton restoration onto the violated constraint boundary.
void polish_feasibility(const PenaltyModel& model, Eigen::VectorXd& x, double tol) {
  const auto& constraints = model.problem->constraints;
  const int n = model.problem->nvars();
  for (int round = 0; round < 40; ++round) {
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    std::vector<int> violated;
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (constraints[i].evaluate(xs) < -tol * 1e-4) violated.push_back(static_cast<int>(i));
    }
    if (violated.empty()) return;
    Eigen::MatrixXd J(violated.size(), n);
    Eigen::VectorXd r(violated.size());
    for (std::size_t q = 0; q < violated.size(); ++q) {
      r[q] = constraints[violated[q]].evaluate(xs);
      for (int k = 0; k < n; ++k) J(q, k) = model.con_grad[violated[q]][k].evaluate(xs);
    }
    const Eigen::VectorXd delta = J.completeOrthogonalDecomposition().solve(-r);
    if (!delta.allFinite() || delta.norm() > 1.0) return;
    x += delta;
    if (delta.norm() <= 1e-14 * (1.0 + x.norm())) return;
  }
}

}  // namespace

MinimizeOutcome multistart_minimize(const PopProblem& problem,
                                    const MultistartOptions& options) {
  if (problem.nvars() > 3) {
    throw std::invalid_argument("multistart_minimize is desk-scale only (n <= 3)");
  }
  const PenaltyModel model(problem);
  const auto box = infer_sampling_box(problem, options.default_radius);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = problem.nvars();

  std::vector<Basin> basins;
  for (int s = 0; s < options.starts; ++s) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) {
      const auto& [lo, hi] = box[static_cast<std::size_t>(k)];
      x[k] = lo + (hi - lo) * unit(rng);
    }
    double rho = 10.0;
    for (int round = 0; round < 20; ++round) {
      x = descend(model, x, box, rho, 400);
      rho *= 2.0;
    }
    polish_feasibility(model, x, options.feasibility_tol);
    if (model.max_violation(x) > options.feasibility_tol) continue;
    std::span<const double> xs(x.data(), static_cast<std::size_t>(x.size()));
    const double value = problem.objective.evaluate(xs);

    bool merged = false;
    for (auto& basin : basins) {
      if ((basin.point - x).norm() <= options.dedup_radius) {
        if (value < basin.value) {
          basin.point = x;
          basin.value = value;
        }
        merged = true;
        break;
      }
    }
    if (!merged) basins.push_back({x, value});
  }

  if (basins.empty()) {
    throw std::runtime_error("multistart_minimize: no feasible basin found");
  }
  std::sort(basins.begin(), basins.end(),
            [](const Basin& a, const Basin& b) { return a.value < b.value; });
  MinimizeOutcome out;
  out.basins = std::move(basins);
  out.best_point = out.basins.front().point;
  out.best_value = out.basins.front().value;
  return out;
}

MinimizeOutcome multistart_minimize(const PopProblem& problem, int starts, std::uint64_t seed) {
  MultistartOptions options;
  options.starts = starts;
  options.seed = seed;
  return multistart_minimize(problem, options);
}

}  // namespace popcert
