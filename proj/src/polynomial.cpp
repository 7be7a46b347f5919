#include "popcert/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace popcert {

Polynomial Polynomial::constant(int nvars, double c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

double Polynomial::coefficient(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& a, double c) {
  if (static_cast<int>(a.size()) != nvars_) {
    throw std::invalid_argument("term multiindex length mismatch");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != nvars_) {
    throw std::invalid_argument("evaluation point length mismatch");
  }
  double acc = 0.0;
  for (const auto& [a, c] : terms_) {
    double mono = 1.0;
    for (int k = 0; k < nvars_; ++k) {
      for (int e = 0; e < a[k]; ++e) mono *= x[k];
    }
    acc += c * mono;
  }
  return acc;
}

int Polynomial::degree() const {
  if (terms_.empty()) {
    throw std::domain_error("degree of the zero polynomial");
  }
  int d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, total_degree(a));
  return d;
}

int Polynomial::half_degree() const {
  return (degree() + 1) / 2;
}

Polynomial Polynomial::partial(int var) const {
  Polynomial out(nvars_);
  for (const auto& [a, c] : terms_) {
    if (a[var] == 0) continue;
    MultiIndex b = a;
    b[var] -= 1;
    out.add_term(b, c * a[var]);
  }
  return out;
}

double Polynomial::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [a, c] : terms_) s += c * c;
  return std::sqrt(s);
}

Polynomial Polynomial::operator-() const {
  Polynomial out(nvars_);
  for (const auto& [a, c] : terms_) out.add_term(a, -c);
  return out;
}

Polynomial linear_combine(double a, const Polynomial& p, double b, const Polynomial& q) {
  if (p.nvars() != q.nvars()) {
    throw std::invalid_argument("linear_combine on mismatched variable counts");
  }
  Polynomial out(p.nvars());
  for (const auto& [idx, c] : p.terms()) out.add_term(idx, a * c);
  for (const auto& [idx, c] : q.terms()) out.add_term(idx, b * c);
  return out;
}

}  // namespace popcert
