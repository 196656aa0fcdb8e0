#pragma once

// Exact linear algebra over the coefficient field, plus polynomial matrices
// and the homogeneous lifting solver used to build the q-maps.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "trimcx/ring.hpp"

namespace trimcx {

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ScalarMatrix identity(std::size_t n);
  static ScalarMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ScalarMatrix transpose() const;
  bool is_zero() const;
  bool operator==(const ScalarMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b, const Field& field);

/// Exact rank. Prime fields use word-size elimination, QQ uses Bareiss.
std::size_t rank_over_field(const ScalarMatrix& m, const Field& field);

/// Some X with a*X = b, or nullopt when inconsistent.
std::optional<ScalarMatrix> solve_scalar(const ScalarMatrix& a, const ScalarMatrix& b, const Field& field);

/// Columns form a basis of {x : a*x = 0}.
ScalarMatrix nullspace(const ScalarMatrix& a, const Field& field);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-() const;
  PolyMatrix transpose() const;
  PolyMatrix select_rows(const std::vector<std::size_t>& rows) const;
  PolyMatrix select_cols(const std::vector<std::size_t>& cols) const;
  /// Stacks matrices with equal column counts.
  static PolyMatrix vstack(const std::vector<PolyMatrix>& parts, const RingPtr& ring, std::size_t cols);

  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  /// Reduction modulo the irrelevant ideal: the matrix of constant terms.
  ScalarMatrix constant_part() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Polynomial> data_;
};

/// Rank of the specialization at a seeded uniform point of GF(p)^n. Over QQ
/// the matrix is first reduced modulo kDefaultPrime.
std::size_t rank_at_random_point(const PolyMatrix& m, std::uint64_t seed);

struct LiftOptions {
  /// When set, free parameters are drawn at random instead of set to zero.
  std::optional<std::uint64_t> seed;
};

/// Solves a*X = b with X homogeneous, entry (j,k) of degree
/// col_degrees_b[k] - col_degrees_a[j]. Returns nullopt when no such X exists.
/// Exact: the residual is checked before returning.
std::optional<PolyMatrix> solve_poly_homogeneous(const PolyMatrix& a, const PolyMatrix& b,
                                                 const std::vector<int>& col_degrees_a,
                                                 const std::vector<int>& col_degrees_b,
                                                 const LiftOptions& opts = {});

namespace detail {

// Word-size arithmetic modulo a prime below 2^31.
struct ModP {
  using T = std::uint32_t;
  std::uint32_t p;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  T add(T a, T b) const { T s = a + b; return s >= p ? s - p : s; }
  T sub(T a, T b) const { return a >= b ? a - b : a + p - b; }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T mul(T a, T b) const { return static_cast<T>(std::uint64_t(a) * b % p); }
  T inv(T a) const;
  T from(const Scalar& s) const;  // any rational with denominator prime to p
  Scalar to(T a) const { return Scalar(static_cast<unsigned long>(a)); }
};

struct Rat {
  using T = Scalar;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(const T& a) const { return sgn(a) == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T neg(const T& a) const { return -a; }
  T mul(const T& a, const T& b) const { return a * b; }
  T inv(const T& a) const { return 1 / a; }
  T from(const Scalar& s) const { return s; }
  Scalar to(const T& a) const { return a; }
};

template <class Ops>
struct Dense {
  using T = typename Ops::T;
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;
  Dense() = default;
  Dense(std::size_t r, std::size_t c, const Ops& ops) : rows(r), cols(c), a(r * c, ops.zero()) {}
  T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

/// In-place reduced row echelon form restricted to the first `ncols` columns
/// for pivot selection (all columns are transformed). Returns pivot columns;
/// rows [0, pivots.size()) hold the pivot rows afterwards.
template <class Ops>
std::vector<std::size_t> rref(const Ops& ops, Dense<Ops>& m, std::size_t ncols) {
  using T = typename Ops::T;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.rows; ++c) {
    std::size_t piv = m.rows;
    for (std::size_t i = r; i < m.rows; ++i)
      if (!ops.is_zero(m.at(i, c))) {
        piv = i;
        break;
      }
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    T inv = ops.inv(m.at(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m.at(r, j) = ops.mul(m.at(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || ops.is_zero(m.at(i, c))) continue;
      T f = m.at(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        if (!ops.is_zero(m.at(r, j))) m.at(i, j) = ops.sub(m.at(i, j), ops.mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Ops>
std::size_t rank(const Ops& ops, Dense<Ops> m) {
  using T = typename Ops::T;
  // Row echelon only (no back substitution).
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t piv = m.rows;
    for (std::size_t i = r; i < m.rows; ++i)
      if (!ops.is_zero(m.at(i, c))) {
        piv = i;
        break;
      }
    if (piv == m.rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
    T inv = ops.inv(m.at(r, c));
    for (std::size_t i = r + 1; i < m.rows; ++i) {
      if (ops.is_zero(m.at(i, c))) continue;
      T f = ops.mul(m.at(i, c), inv);
      for (std::size_t j = c; j < m.cols; ++j)
        if (!ops.is_zero(m.at(r, j))) m.at(i, j) = ops.sub(m.at(i, j), ops.mul(f, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

/// Fraction-free rank over QQ.
std::size_t bareiss_rank(const ScalarMatrix& m);

template <class Fn>
decltype(auto) with_ops(const Field& field, Fn&& fn) {
  if (field.is_prime()) return fn(ModP{field.characteristic()});
  return fn(Rat{});
}

template <class Ops>
Dense<Ops> to_dense(const Ops& ops, const ScalarMatrix& m) {
  Dense<Ops> d(m.rows(), m.cols(), ops);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d.at(i, j) = ops.from(m(i, j));
  return d;
}

/// Incremental echelon basis of a subspace of k^n, for membership tests.
template <class Ops>
class Echelon {
 public:
  using T = typename Ops::T;
  Echelon(const Ops& ops, std::size_t n) : ops_(ops), n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }

  /// Reduces v in place against the basis; returns true iff v became zero.
  bool reduce(std::vector<T>& v) const {
    bool zero = true;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      std::size_t c = pivots_[k];
      if (ops_.is_zero(v[c])) continue;
      T f = v[c];
      const auto& row = rows_[k];
      for (std::size_t j = c; j < n_; ++j)
        if (!ops_.is_zero(row[j])) v[j] = ops_.sub(v[j], ops_.mul(f, row[j]));
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (!ops_.is_zero(v[j])) {
        zero = false;
        break;
      }
    return zero;
  }

  /// Adds v to the span; returns true when the dimension grew.
  bool insert(std::vector<T> v) {
    if (reduce(v)) return false;
    std::size_t c = 0;
    while (ops_.is_zero(v[c])) ++c;
    T inv = ops_.inv(v[c]);
    for (std::size_t j = c; j < n_; ++j) v[j] = ops_.mul(v[j], inv);
    // Keep rows sorted by pivot and mutually reduced at pivots.
    for (auto& row : rows_) {
      if (ops_.is_zero(row[c])) continue;
      T f = row[c];
      for (std::size_t j = c; j < n_; ++j)
        if (!ops_.is_zero(v[j])) row[j] = ops_.sub(row[j], ops_.mul(f, v[j]));
    }
    auto it = std::lower_bound(pivots_.begin(), pivots_.end(), c);
    auto pos = it - pivots_.begin();
    pivots_.insert(it, c);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::vector<T>>& rows() const { return rows_; }

 private:
  Ops ops_;
  std::size_t n_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<T>> rows_;
};

/// Evaluates a polynomial modulo p at a point given by residues.
std::uint32_t eval_modp(const Polynomial& f, const std::vector<std::uint32_t>& point,
                        const ModP& ops);

}  // namespace detail

}  // namespace trimcx
