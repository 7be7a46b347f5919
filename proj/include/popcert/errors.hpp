#ifndef POPCERT_ERRORS_HPP
#define POPCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace popcert {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// The candidate violates a constraint by more than tol_feas.
class InfeasibleCandidateError : public std::runtime_error {
 public:
  InfeasibleCandidateError(int constraint_index, double value)
      : std::runtime_error("candidate infeasible: constraint " +
                           std::to_string(constraint_index + 1) +
                           " evaluates to " + std::to_string(value)),
        constraint_index_(constraint_index),
        value_(value) {}

  int constraint_index() const { return constraint_index_; }
  double value() const { return value_; }

 private:
  int constraint_index_;
  double value_;
};

class OrderTooSmallError : public std::runtime_error {
 public:
  OrderTooSmallError(int requested, int minimum)
      : std::runtime_error("relaxation order " + std::to_string(requested) +
                           " is below the minimal admissible order " +
                           std::to_string(minimum)),
        requested_(requested),
        minimum_(minimum) {}

  int requested() const { return requested_; }
  int minimum() const { return minimum_; }

 private:
  int requested_;
  int minimum_;
};

}  // namespace popcert

#endif
