#include "hmpack/linalg.hpp"

#include <string>

#include "hmpack/errors.hpp"

namespace hmpack {

RatMatrix RatMatrix::from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InputError("matrix row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RatMatrix RatMatrix::from_int_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  RatMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw InputError("matrix row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(rows[r][c]);
  }
  return m;
}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatVector RatMatrix::operator*(std::span<const Rational> x) const {
  if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  RatVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(row(r), x);
  return out;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RatVector to_rational(std::span<const std::int64_t> v) {
  RatVector out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw InputError("dot product dimension mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

namespace {

// Reduces [m | rhs] to row echelon form in place, returning pivot columns.
std::vector<std::size_t> eliminate(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<RatVector> solve_linear_system(const RatMatrix& m, std::span<const Rational> rhs) {
  if (rhs.size() != m.rows()) throw InputError("linear system: rhs length does not match rows");
  const std::size_t n = m.cols();
  RatMatrix aug(m.rows(), n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = rhs[r];
  }
  auto pivots = eliminate(aug);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // inconsistent
  if (pivots.size() != n) return std::nullopt;                     // not unique
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[pivots[i]] = aug(i, n);
  return x;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix copy = m;
  return eliminate(copy).size();
}

std::vector<std::size_t> independent_subset(const std::vector<RatVector>& vectors) {
  std::vector<std::size_t> chosen;
  std::vector<RatVector> basis;  // reduced rows with leading entry 1
  std::vector<std::size_t> lead;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    RatVector v = vectors[i];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (v[lead[b]].is_zero()) continue;
      const Rational f = v[lead[b]];
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!basis[b][c].is_zero()) v[c] -= f * basis[b][c];
    }
    std::size_t l = 0;
    while (l < v.size() && v[l].is_zero()) ++l;
    if (l == v.size()) continue;
    const Rational inv = Rational(1) / v[l];
    for (auto& e : v) e *= inv;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (basis[b][l].is_zero()) continue;
      const Rational f = basis[b][l];
      for (std::size_t c = 0; c < v.size(); ++c)
        if (!v[c].is_zero()) basis[b][c] -= f * v[c];
    }
    basis.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
  }
  return chosen;
}

}  // namespace hmpack
