#ifndef POPCERT_MULTIINDEX_HPP
#define POPCERT_MULTIINDEX_HPP

#include <map>
#include <optional>
#include <vector>

namespace popcert {

// Exponent vector of a monomial x^a = x_1^{a_1} ... x_n^{a_n}.
using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& a);

// Componentwise sum; lengths must agree.
MultiIndex add(const MultiIndex& a, const MultiIndex& b);

// a - b when a >= b componentwise, empty otherwise.
std::optional<MultiIndex> sub_checked(const MultiIndex& a, const MultiIndex& b);

// Basis ordering: ascending total degree; within a degree block the
// exponent vector with the larger leading exponents comes first, so the
// degree-2 block in two variables reads x1^2, x1*x2, x2^2.
bool basis_order_less(const MultiIndex& a, const MultiIndex& b);

struct BasisOrderLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return basis_order_less(a, b);
  }
};

// All monomials with |a| <= degree over nvars variables, in basis order.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(int nvars, int degree);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const MultiIndex& operator[](int i) const { return entries_[i]; }
  const std::vector<MultiIndex>& entries() const { return entries_; }

  // Ordinal of a basis member; throws std::out_of_range for non-members.
  int position(const MultiIndex& a) const;
  bool contains(const MultiIndex& a) const;

 private:
  int nvars_ = 0;
  int degree_ = 0;
  std::vector<MultiIndex> entries_;
  std::map<MultiIndex, int, BasisOrderLess> position_;
};

// Number of monomials with |a| <= degree in nvars variables: C(nvars+degree, nvars).
long long basis_size(int nvars, int degree);

}  // namespace popcert

#endif
