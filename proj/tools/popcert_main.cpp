// popcert: certify global optimality of candidate points of polynomial
// optimization problems via the KKT system of the determinant-relaxed moment
// relaxation at the candidate's rank-1 lift.
//
// Exit codes: 0 = certified, 2 = not-certified, 1 = error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "popcert/certifier.hpp"
#include "popcert/errors.hpp"
#include "popcert/oracle.hpp"
#include "popcert/problem_io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CommonArgs {
  std::string problem_path;
  std::string output = "text";
};

popcert::PopProblem load_problem(const std::string& path) {
  return popcert::parse_problem(read_file(path));
}

int run_certify(const CommonArgs& common, const std::string& point_spec,
                const popcert::CertifyConfig& config, const std::string& dump_path) {
  const popcert::PopProblem problem = load_problem(common.problem_path);
  const popcert::CandidatePoint point = popcert::parse_point(point_spec, problem);
  const popcert::CertifyResult result = popcert::certify_full(problem, point, config);

  if (!dump_path.empty()) {
    std::ofstream out(dump_path);
    if (!out) throw std::runtime_error("cannot open dump file: " + dump_path);
    popcert::dump_kkt_csv(result.system, out);
  }
  const auto format = common.output == "json" ? popcert::ReportFormat::Json
                                              : popcert::ReportFormat::Text;
  std::cout << popcert::emit_report(result.report, format);
  return result.report.verdict == "certified" ? 0 : 2;
}

int run_inspect(const CommonArgs& common, int order) {
  const popcert::PopProblem problem = load_problem(common.problem_path);
  const int n = problem.nvars();
  const int dmin = problem.min_order();
  const int d = order > 0 ? order : dmin;
  if (d < dmin) throw popcert::OrderTooSmallError(d, dmin);
  std::cout << "problem:  " << problem.name << "\n";
  std::cout << "n:        " << n << "\n";
  std::cout << "d_min:    " << dmin << "\n";
  std::cout << "order:    " << d << "\n";
  std::cout << "n0:       " << popcert::basis_size(n, d) << "\n";
  std::cout << "ni:       [";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    std::cout << (i ? ", " : "")
              << popcert::basis_size(n, d - problem.constraints[i].half_degree());
  }
  std::cout << "]\n";
  std::cout << "constraints (canonical g >= 0):\n";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    std::cout << "  g" << (i + 1) << ": "
              << popcert::format_polynomial(problem.constraints[i], problem.variables)
              << " >= 0\n";
  }
  const popcert::MonomialBasis basis(n, d);
  std::cout << "monomial basis (degree <= " << d << "):\n ";
  for (int i = 0; i < basis.size(); ++i) {
    std::cout << " ";
    const auto& a = basis[i];
    if (popcert::total_degree(a) == 0) {
      std::cout << "1";
      continue;
    }
    bool first = true;
    for (int k = 0; k < n; ++k) {
      if (a[k] == 0) continue;
      if (!first) std::cout << "*";
      std::cout << problem.variables[k];
      if (a[k] > 1) std::cout << "^" << a[k];
      first = false;
    }
  }
  std::cout << "\n";
  return 0;
}

int run_oracle(const CommonArgs& common, int starts, std::uint64_t seed) {
  const popcert::PopProblem problem = load_problem(common.problem_path);
  popcert::MultistartOptions options;
  options.starts = starts;
  options.seed = seed;
  const popcert::MinimizeOutcome outcome = popcert::multistart_minimize(problem, options);
  std::cout << "basins found: " << outcome.basins.size() << "\n";
  for (const auto& basin : outcome.basins) {
    std::cout << "  value " << basin.value << " at (";
    for (int k = 0; k < basin.point.size(); ++k) {
      std::cout << (k ? ", " : "") << basin.point[k];
    }
    std::cout << ")\n";
  }
  std::cout << "best value: " << outcome.best_value << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certify global optimality of candidate points of polynomial programs"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string point_spec;
  std::string dump_path;
  popcert::CertifyConfig config;
  int order = 0;
  int max_minor_order = 0;
  std::string norm = "both";
  int starts = 100;
  std::uint64_t seed = 42;

  CLI::App* certify = app.add_subcommand("certify", "run the optimality certificate");
  certify->add_option("--problem", common.problem_path, "problem file")->required();
  certify->add_option("--point", point_spec, "candidate point, e.g. \"x1=0.5,x2=-1\" or JSON")
      ->required();
  certify->add_option("--order", order, "relaxation order d (default: minimal admissible)");
  certify->add_option("--norm", norm, "residual norm to minimize: l1, l2 or both")
      ->check(CLI::IsMember({"l1", "l2", "both"}));
  certify->add_option("--tol-cert", config.tol_cert, "verdict threshold on normalized residual");
  certify->add_option("--tol-feas", config.tol_feas, "candidate feasibility tolerance");
  certify->add_option("--tol-comp", config.tol_comp, "complementarity activity tolerance");
  certify->add_option("--max-minor-order", max_minor_order, "cap on principal minor order");
  certify->add_flag("--scale-rows", config.scale_rows, "normalize rows to unit infinity norm");
  certify->add_option("--dump-kkt", dump_path, "write the assembled system as CSV");
  certify->add_option("--output", common.output, "report format")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* inspect = app.add_subcommand("inspect", "print relaxation structure sizes");
  inspect->add_option("--problem", common.problem_path, "problem file")->required();
  int inspect_order = 0;
  inspect->add_option("--order", inspect_order, "relaxation order (default: minimal admissible)");

  CLI::App* oracle = app.add_subcommand("oracle", "multistart minimization for labeling");
  oracle->add_option("--problem", common.problem_path, "problem file")->required();
  oracle->add_option("--starts", starts, "number of descent starts");
  oracle->add_option("--seed", seed, "random seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) {
      if (order > 0) config.order = order;
      if (max_minor_order > 0) config.max_minor_order = max_minor_order;
      config.norm = norm == "l1"   ? popcert::NormChoice::L1
                    : norm == "l2" ? popcert::NormChoice::L2
                                   : popcert::NormChoice::Both;
      return run_certify(common, point_spec, config, dump_path);
    }
    if (inspect->parsed()) return run_inspect(common, inspect_order);
    if (oracle->parsed()) return run_oracle(common, starts, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
