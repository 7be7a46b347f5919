#ifndef POPCERT_PROBLEM_IO_HPP
#define POPCERT_PROBLEM_IO_HPP

#include <string>
#include <vector>

#include "popcert/errors.hpp"
#include "popcert/polynomial.hpp"

namespace popcert {

// Source form a canonical constraint was derived from.
enum class ConstraintOrigin {
  Inequality,     // e >= c or e <= c, already one-sided
  EqualityPlus,   // e - c from e == c
  EqualityMinus,  // c - e from e == c
  BoundLower,     // e - lo from lo <= e <= hi
  BoundUpper,     // hi - e from lo <= e <= hi
};

struct ConstraintProvenance {
  ConstraintOrigin origin;
  int source_line;
};

struct RawConstraint {
  enum class Kind { GreaterEqual, LessEqual, Equality, TwoSided };
  Kind kind = Kind::GreaterEqual;
  Polynomial body{1};
  double lo = 0.0;  // rhs for >=, ==; lower bound for two-sided
  double hi = 0.0;  // rhs for <=; upper bound for two-sided
  int source_line = 0;
};

// A polynomial optimization problem in the canonical form
//   minimize f(x)  subject to  g_i(x) >= 0.
struct PopProblem {
  std::string name;
  std::vector<std::string> variables;
  Polynomial objective;
  std::vector<Polynomial> constraints;
  std::vector<ConstraintProvenance> provenance;

  PopProblem() : objective(1) {}

  int nvars() const { return static_cast<int>(variables.size()); }
  // Half-degree of constraint i.
  int constraint_half_degree(int i) const { return constraints[i].half_degree(); }
  // Minimal admissible relaxation order: the moment matrix must reach the
  // objective's half-degree and every localizing matrix must be nonempty.
  int min_order() const;
};

struct CandidatePoint {
  std::vector<double> values;
};

// Rewrites raw constraints to the canonical g >= 0 list. Equalities split into
// two adjacent one-sided halves; two-sided bounds split into lower/upper.
std::vector<Polynomial> canonicalize(const std::vector<RawConstraint>& raw,
                                     std::vector<ConstraintProvenance>* provenance = nullptr);

// Parses the line-oriented problem format (see README). Throws ParseError.
PopProblem parse_problem(const std::string& text);

// Point spec: "x1=0.5,x2=-1" or a JSON object {"x1": 0.5, "x2": -1}.
CandidatePoint parse_point(const std::string& text, const PopProblem& problem);

// Deterministic pretty-printer; parse_problem(format_problem(p)) reproduces
// the exact term maps.
std::string format_problem(const PopProblem& problem);
std::string format_polynomial(const Polynomial& p, const std::vector<std::string>& variables);

}  // namespace popcert

#endif
