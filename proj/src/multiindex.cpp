#include "popcert/multiindex.hpp"

#include <numeric>
#include <stdexcept>

namespace popcert {

int total_degree(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("multiindex length mismatch in add");
  }
  MultiIndex out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + b[k];
  return out;
}

std::optional<MultiIndex> sub_checked(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("multiindex length mismatch in sub_checked");
  }
  MultiIndex out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return std::nullopt;
    out[k] = a[k] - b[k];
  }
  return out;
}

bool basis_order_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  // Same degree: x1-major, i.e. the lexicographically larger vector first.
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return false;
}

namespace {

void emit_degree_block(int deg, int nvars, MultiIndex& scratch, int pos,
                       std::vector<MultiIndex>& out) {
  if (pos == nvars - 1) {
    scratch[pos] = deg;
    out.push_back(scratch);
    return;
  }
  for (int first = deg; first >= 0; --first) {
    scratch[pos] = first;
    emit_degree_block(deg - first, nvars, scratch, pos + 1, out);
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int nvars, int degree) : nvars_(nvars), degree_(degree) {
  if (nvars < 1 || degree < 0) {
    throw std::invalid_argument("monomial basis requires nvars >= 1, degree >= 0");
  }
  entries_.reserve(static_cast<std::size_t>(basis_size(nvars, degree)));
  MultiIndex scratch(nvars, 0);
  for (int deg = 0; deg <= degree; ++deg) {
    emit_degree_block(deg, nvars, scratch, 0, entries_);
  }
  for (int i = 0; i < size(); ++i) position_.emplace(entries_[i], i);
}

int MonomialBasis::position(const MultiIndex& a) const {
  auto it = position_.find(a);
  if (it == position_.end()) {
    throw std::out_of_range("multiindex not in monomial basis");
  }
  return it->second;
}

bool MonomialBasis::contains(const MultiIndex& a) const {
  return position_.find(a) != position_.end();
}

long long basis_size(int nvars, int degree) {
  long long v = 1;
  for (int k = 1; k <= nvars; ++k) {
    v = v * (degree + k) / k;
  }
  return v;
}

}  // namespace popcert
