#include "trimcx/linalg.hpp"

#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace trimcx {

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ScalarMatrix ScalarMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  ScalarMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool ScalarMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

ScalarMatrix multiply(const ScalarMatrix& a, const ScalarMatrix& b, const Field& field) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shapes do not compose");
  ScalarMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) c(i, j) = field.add(c(i, j), field.mul(a(i, k), b(k, j)));
    }
  return c;
}

namespace detail {

ModP::T ModP::inv(T a) const {
  if (a == 0) throw std::domain_error("division by zero");
  // Fermat inverse.
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<T>(r);
}

ModP::T ModP::from(const Scalar& s) const {
  mpz_class pz(p);
  mpz_class num = s.get_num() % pz;
  if (num < 0) num += pz;
  T n = static_cast<T>(num.get_ui());
  if (s.get_den() == 1) return n;
  mpz_class den = s.get_den() % pz;
  if (den == 0) throw std::domain_error("denominator divisible by the characteristic");
  return mul(n, inv(static_cast<T>(den.get_ui())));
}

std::size_t bareiss_rank(const ScalarMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<mpz_class> a(rows * cols);
  // Clear denominators row by row; rank is unchanged.
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * cols + j]; };
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (sgn(at(i, c)) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(piv, j), at(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        at(i, j) = at(r, c) * at(i, j) - at(i, c) * at(r, j);
        mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

std::uint32_t eval_modp(const Polynomial& f, const std::vector<std::uint32_t>& point, const ModP& ops) {
  std::uint32_t total = 0;
  for (const auto& t : f.terms()) {
    std::uint32_t v = ops.from(t.coeff);
    for (std::size_t i = 0; i < point.size() && v != 0; ++i) {
      for (std::uint16_t e = 0; e < t.mono[i]; ++e) v = ops.mul(v, point[i]);
    }
    total = ops.add(total, v);
  }
  return total;
}

}  // namespace detail

using detail::Dense;
using detail::ModP;
using detail::Rat;

std::size_t rank_over_field(const ScalarMatrix& m, const Field& field) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (!field.is_prime()) return detail::bareiss_rank(m);
  ModP ops{field.characteristic()};
  return detail::rank(ops, detail::to_dense(ops, m));
}

std::optional<ScalarMatrix> solve_scalar(const ScalarMatrix& a, const ScalarMatrix& b, const Field& field) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_scalar: row counts differ");
  return detail::with_ops(field, [&](auto ops) -> std::optional<ScalarMatrix> {
    using Ops = decltype(ops);
    std::size_t n = a.cols(), k = b.cols();
    Dense<Ops> aug(a.rows(), n + k, ops);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = ops.from(a(i, j));
      for (std::size_t j = 0; j < k; ++j) aug.at(i, n + j) = ops.from(b(i, j));
    }
    auto piv = detail::rref(ops, aug, n);
    for (std::size_t i = piv.size(); i < aug.rows; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (!ops.is_zero(aug.at(i, n + j))) return std::nullopt;
    ScalarMatrix x(n, k);
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (std::size_t j = 0; j < k; ++j) x(piv[r], j) = ops.to(aug.at(r, n + j));
    return x;
  });
}

ScalarMatrix nullspace(const ScalarMatrix& a, const Field& field) {
  return detail::with_ops(field, [&](auto ops) -> ScalarMatrix {
    auto d = detail::to_dense(ops, a);
    auto piv = detail::rref(ops, d, a.cols());
    std::vector<bool> is_piv(a.cols(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!is_piv[c]) free.push_back(c);
    ScalarMatrix ns(a.cols(), free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
      ns(free[f], f) = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) ns(piv[r], f) = ops.to(ops.neg(d.at(r, free[f])));
    }
    return ns;
  });
}

// ---------------------------------------------------------------------------

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shapes do not compose");
  if (!same_ring(ring_, o.ring_)) throw RingMismatch();
  PolyMatrix c(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& aik = (*this)(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const auto& bkj = o(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  return c;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shapes differ");
  PolyMatrix c(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] += o.data_[i];
  return c;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix c(*this);
  for (auto& p : c.data_) p = -p;
  return c;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  PolyMatrix s(ring_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(rows.at(i), j);
  return s;
}

PolyMatrix PolyMatrix::select_cols(const std::vector<std::size_t>& cols) const {
  PolyMatrix s(ring_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(i, cols.at(j));
  return s;
}

PolyMatrix PolyMatrix::vstack(const std::vector<PolyMatrix>& parts, const RingPtr& ring, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw std::invalid_argument("vstack: column counts differ");
    rows += p.rows();
  }
  PolyMatrix s(ring, rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) s(r0 + i, j) = p(i, j);
    r0 += p.rows();
  }
  return s;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

ScalarMatrix PolyMatrix::constant_part() const {
  ScalarMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j).constant_term();
  return s;
}

std::size_t rank_at_random_point(const PolyMatrix& m, std::uint64_t seed) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const Field& f = m.ring()->field();
  ModP ops{f.is_prime() ? f.characteristic() : kDefaultPrime};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, ops.p - 1);
  std::vector<std::uint32_t> point(m.ring()->nvars());
  for (auto& v : point) v = dist(rng);
  Dense<ModP> d(m.rows(), m.cols(), ops);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d.at(i, j) = detail::eval_modp(m(i, j), point, ops);
  return detail::rank(ops, std::move(d));
}

// ---------------------------------------------------------------------------
// Homogeneous lifting. Variables split into y (those occurring in a) and z
// (the rest). Since a involves only y, writing X = sum_beta z^beta X_beta and
// b = sum_beta z^beta b_beta decouples the system into a*X_beta = b_beta, one
// small y-only system per z-monomial beta that actually occurs in b.

namespace {

struct SplitMono {
  Monomial y, z;
};

template <class Ops>
std::optional<PolyMatrix> solve_split(const Ops& ops, const PolyMatrix& a, const PolyMatrix& b,
                                      const std::vector<int>& cola, const std::vector<int>& colb,
                                      const LiftOptions& opts) {
  using T = typename Ops::T;
  const RingPtr& ring = a.ring();
  const std::size_t nv = ring->nvars();
  std::vector<int> yidx(nv, -1);
  std::vector<std::size_t> yvars, zvars;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (const auto& t : a(i, j).terms())
        for (std::size_t v = 0; v < nv; ++v)
          if (t.mono[v] > 0 && yidx[v] < 0) yidx[v] = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (yidx[v] >= 0) {
      yidx[v] = static_cast<int>(yvars.size());
      yvars.push_back(v);
    } else {
      zvars.push_back(v);
    }
  }
  const std::size_t ny = yvars.size(), nz = zvars.size();
  auto split = [&](const Monomial& m) {
    SplitMono s{Monomial(ny), Monomial(nz)};
    for (std::size_t k = 0; k < ny; ++k) s.y.set(k, m[yvars[k]]);
    for (std::size_t k = 0; k < nz; ++k) s.z.set(k, m[zvars[k]]);
    return s;
  };
  auto join = [&](const Monomial& y, const Monomial& z) {
    Monomial m(nv);
    for (std::size_t k = 0; k < ny; ++k) m.set(yvars[k], y[k]);
    for (std::size_t k = 0; k < nz; ++k) m.set(zvars[k], z[k]);
    return m;
  };

  // a's entries as y-only term lists.
  struct YTerm {
    Monomial y;
    T c;
  };
  std::vector<std::vector<YTerm>> aent(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (const auto& t : a(i, j).terms()) aent[i * a.cols() + j].push_back({split(t.mono).y, ops.from(t.coeff)});

  // Right-hand sides keyed by (target y-degree e, beta): column k of b.
  struct Rhs {
    std::size_t col;
    Monomial beta;
    std::vector<std::vector<YTerm>> rows;  // per row of b
  };
  std::map<int, std::vector<Rhs>> by_e;
  for (std::size_t k = 0; k < b.cols(); ++k) {
    std::unordered_map<Monomial, std::size_t, MonomialHash> seen;
    std::vector<Rhs> local;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (const auto& t : b(i, k).terms()) {
        auto s = split(t.mono);
        auto [it, fresh] = seen.try_emplace(s.z, local.size());
        if (fresh) local.push_back({k, s.z, std::vector<std::vector<YTerm>>(b.rows())});
        local[it->second].rows[i].push_back({s.y, ops.from(t.coeff)});
      }
    for (auto& r : local) by_e[colb[k] - r.beta.degree()].push_back(std::move(r));
  }

  std::mt19937_64 rng(opts.seed.value_or(0));
  std::vector<std::vector<Term>> xterms(a.cols() * b.cols());
  std::map<int, std::vector<Monomial>> ymons;
  auto ymon_of = [&](int d) -> const std::vector<Monomial>& {
    auto it = ymons.find(d);
    if (it == ymons.end()) it = ymons.emplace(d, monomials_of_degree(ny, d)).first;
    return it->second;
  };

  for (auto& [e, rhss] : by_e) {
    // Unknowns: (j, gamma) with |gamma| = e - cola[j].
    std::vector<std::pair<std::size_t, const Monomial*>> unknowns;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      int d = e - cola[j];
      if (d < 0) continue;
      for (const auto& g : ymon_of(d)) unknowns.emplace_back(j, &g);
    }
    // Equation index: (row i, y-monomial).
    std::vector<std::unordered_map<Monomial, std::size_t, MonomialHash>> eq(a.rows());
    std::size_t neq = 0;
    struct Entry {
      std::size_t row, col;
      T c;
    };
    std::vector<Entry> entries;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      auto [j, g] = unknowns[u];
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (const auto& t : aent[i * a.cols() + j]) {
          auto [it, fresh] = eq[i].try_emplace(t.y * *g, neq);
          if (fresh) ++neq;
          entries.push_back({it->second, u, t.c});
        }
    }
    // Right-hand side monomials outside the image pattern make the block inconsistent.
    for (const auto& r : rhss)
      for (std::size_t i = 0; i < r.rows.size(); ++i)
        for (const auto& t : r.rows[i])
          if (!eq[i].count(t.y)) return std::nullopt;

    const std::size_t nu = unknowns.size(), nr = rhss.size();
    detail::Dense<Ops> aug(neq, nu + nr, ops);
    for (const auto& en : entries) aug.at(en.row, en.col) = ops.add(aug.at(en.row, en.col), en.c);
    for (std::size_t k = 0; k < nr; ++k)
      for (std::size_t i = 0; i < rhss[k].rows.size(); ++i)
        for (const auto& t : rhss[k].rows[i]) aug.at(eq[i].at(t.y), nu + k) = t.c;
    auto piv = detail::rref(ops, aug, nu);
    for (std::size_t r = piv.size(); r < neq; ++r)
      for (std::size_t k = 0; k < nr; ++k)
        if (!ops.is_zero(aug.at(r, nu + k))) return std::nullopt;

    std::vector<bool> is_piv(nu, false);
    for (auto c : piv) is_piv[c] = true;
    std::uniform_int_distribution<std::uint64_t> dist(0, 1000);
    for (std::size_t k = 0; k < nr; ++k) {
      std::vector<T> sol(nu, ops.zero());
      if (opts.seed) {
        for (std::size_t u = 0; u < nu; ++u)
          if (!is_piv[u]) sol[u] = ops.from(Scalar(static_cast<long>(dist(rng))));
      }
      for (std::size_t r = 0; r < piv.size(); ++r) {
        T v = aug.at(r, nu + k);
        if (opts.seed)
          for (std::size_t u = piv[r] + 1; u < nu; ++u)
            if (!is_piv[u] && !ops.is_zero(aug.at(r, u))) v = ops.sub(v, ops.mul(aug.at(r, u), sol[u]));
        sol[piv[r]] = v;
      }
      const auto& rh = rhss[k];
      for (std::size_t u = 0; u < nu; ++u) {
        if (ops.is_zero(sol[u])) continue;
        auto [j, g] = unknowns[u];
        xterms[j * b.cols() + rh.col].push_back({join(*g, rh.beta), ops.to(sol[u])});
      }
    }
  }

  PolyMatrix x(ring, a.cols(), b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t k = 0; k < b.cols(); ++k)
      x(j, k) = Polynomial::from_terms(ring, std::move(xterms[j * b.cols() + k]));
  return x;
}

}  // namespace

std::optional<PolyMatrix> solve_poly_homogeneous(const PolyMatrix& a, const PolyMatrix& b,
                                                 const std::vector<int>& col_degrees_a,
                                                 const std::vector<int>& col_degrees_b,
                                                 const LiftOptions& opts) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_poly_homogeneous: row counts differ");
  if (col_degrees_a.size() != a.cols() || col_degrees_b.size() != b.cols())
    throw std::invalid_argument("solve_poly_homogeneous: degree list length mismatch");
  if (!same_ring(a.ring(), b.ring())) throw RingMismatch();
  auto x = detail::with_ops(a.ring()->field(), [&](auto ops) {
    return solve_split(ops, a, b, col_degrees_a, col_degrees_b, opts);
  });
  if (!x) return std::nullopt;
  if (a * *x != b) return std::nullopt;
  return x;
}

}  // namespace trimcx
