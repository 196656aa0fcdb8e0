#include "trimcx/oracle.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace trimcx {

namespace {

using Key = std::vector<long>;

Key operator+(Key a, const Key& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
Key operator-(Key a, const Key& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

// Finest grading that keeps every given polynomial homogeneous: the integer
// weights w with w.(a - b) = 0 for any two terms a, b of one polynomial.
struct Grading {
  std::size_t nvars = 0;
  std::vector<std::vector<long>> w;  // w[k][v]
  std::vector<Key> var_keys;

  Key key(const Monomial& m) const {
    Key k(w.size(), 0);
    for (std::size_t r = 0; r < w.size(); ++r)
      for (std::size_t v = 0; v < nvars; ++v) k[r] += w[r][v] * m[v];
    return k;
  }
};

Grading fine_grading(std::size_t nvars, const std::vector<const Polynomial*>& polys) {
  std::vector<std::vector<long>> diffs;
  for (const auto* p : polys) {
    const auto& t = p->terms();
    for (std::size_t i = 1; i < t.size(); ++i) {
      std::vector<long> d(nvars);
      for (std::size_t v = 0; v < nvars; ++v) d[v] = long(t[i].mono[v]) - long(t[0].mono[v]);
      diffs.push_back(std::move(d));
    }
  }
  Grading g;
  g.nvars = nvars;
  if (diffs.empty()) {
    for (std::size_t v = 0; v < nvars; ++v) {
      g.w.emplace_back(nvars, 0);
      g.w.back()[v] = 1;
    }
  } else {
    ScalarMatrix d(diffs.size(), nvars);
    for (std::size_t i = 0; i < diffs.size(); ++i)
      for (std::size_t v = 0; v < nvars; ++v) d(i, v) = diffs[i][v];
    ScalarMatrix ns = nullspace(d, Field::rationals());
    for (std::size_t c = 0; c < ns.cols(); ++c) {
      mpz_class l = 1, gc = 0;
      for (std::size_t v = 0; v < nvars; ++v) l = lcm(l, mpz_class(ns(v, c).get_den()));
      std::vector<mpz_class> col(nvars);
      for (std::size_t v = 0; v < nvars; ++v) {
        col[v] = ns(v, c).get_num() * (l / ns(v, c).get_den());
        gc = gcd(gc, col[v]);
      }
      std::vector<long> row(nvars);
      for (std::size_t v = 0; v < nvars; ++v) row[v] = mpz_class(col[v] / gc).get_si();
      g.w.push_back(std::move(row));
    }
  }
  for (std::size_t v = 0; v < nvars; ++v) {
    Monomial m(nvars);
    m.set(v, 1);
    g.var_keys.push_back(g.key(m));
  }
  return g;
}

void check_gens(const IdealBasis& gens, const char* what) {
  for (const auto& g : gens) {
    if (g.is_zero()) throw std::invalid_argument(std::string(what) + ": zero generator");
    if (!g.homogeneous_degree()) throw std::invalid_argument(std::string(what) + ": generator " + g.to_string() +
                                                             " is not homogeneous");
  }
}

// Monomials of a fixed degree and grading class, enumerated on demand.
class Buckets {
 public:
  explicit Buckets(const Grading& g) : g_(g) {
    std::size_t n = g.nvars, r = g.w.size();
    smin_.assign(n + 1, Key(r, 0));
    smax_.assign(n + 1, Key(r, 0));
    for (std::size_t v = n; v-- > 0;)
      for (std::size_t k = 0; k < r; ++k) {
        long x = g.w[k][v];
        smin_[v][k] = v + 1 == n ? x : std::min(x, smin_[v + 1][k]);
        smax_[v][k] = v + 1 == n ? x : std::max(x, smax_[v + 1][k]);
      }
  }

  const std::vector<Monomial>& get(int d, const Key& key) {
    auto id = std::make_pair(d, key);
    auto it = memo_.find(id);
    if (it != memo_.end()) return it->second;
    std::vector<Monomial> out;
    if (d >= 0 && g_.nvars > 0) {
      std::vector<std::uint16_t> e(g_.nvars, 0);
      Key rest = key;
      dfs(0, d, rest, e, out);
    } else if (d == 0 && std::all_of(key.begin(), key.end(), [](long x) { return x == 0; })) {
      out.emplace_back(g_.nvars);
    }
    std::sort(out.begin(), out.end(), GrevlexGreater{});
    work_ += out.size();
    return memo_.emplace(id, std::move(out)).first->second;
  }

  std::size_t work() const { return work_; }
  void forget(int d, const Key& key) { memo_.erase(std::make_pair(d, key)); }

 private:
  bool feasible(std::size_t v, int r, const Key& rest) const {
    for (std::size_t k = 0; k < rest.size(); ++k)
      if (rest[k] < r * smin_[v][k] || rest[k] > r * smax_[v][k]) return false;
    return true;
  }

  void dfs(std::size_t v, int r, Key& rest, std::vector<std::uint16_t>& e, std::vector<Monomial>& out) {
    std::size_t n = g_.nvars;
    if (v + 1 == n) {
      for (std::size_t k = 0; k < rest.size(); ++k)
        if (rest[k] != r * g_.w[k][v]) return;
      e[v] = static_cast<std::uint16_t>(r);
      out.emplace_back(e);
      e[v] = 0;
      return;
    }
    for (int x = r; x >= 0; --x) {
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= x * g_.w[k][v];
      if (feasible(v + 1, r - x, rest)) {
        e[v] = static_cast<std::uint16_t>(x);
        dfs(v + 1, r - x, rest, e, out);
        e[v] = 0;
      }
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] += x * g_.w[k][v];
    }
  }

  const Grading& g_;
  std::vector<Key> smin_, smax_;
  std::map<std::pair<int, Key>, std::vector<Monomial>> memo_;
  std::size_t work_ = 0;
};

// The ideal's part in one (degree, class) piece, in reduced echelon form.
template <class Ops>
struct Piece {
  using T = typename Ops::T;
  const std::vector<Monomial>* monos = nullptr;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  detail::Echelon<Ops> ech;
  std::vector<long> std_pos;  // position among standard monomials, -1 at pivots
  std::size_t nstd = 0;

  Piece(const Ops& ops, const std::vector<Monomial>& m) : monos(&m), ech(ops, m.size()) {
    for (std::size_t i = 0; i < m.size(); ++i) index.emplace(m[i], i);
  }
};

template <class Ops>
class Slicer {
 public:
  using T = typename Ops::T;

  Slicer(const Ops& ops, const Grading& g, Buckets& b, const IdealBasis& gens)
      : ops_(ops), g_(g), b_(b), gens_(gens) {
    for (const auto& p : gens_) {
      keys_.push_back(g_.key(p.terms()[0].mono));
      std::vector<T> c;
      for (const auto& t : p.terms()) c.push_back(ops_.from(t.coeff));
      coeffs_.push_back(std::move(c));
    }
  }

  Piece<Ops>& piece(int d, const Key& key) {
    auto id = std::make_pair(d, key);
    auto it = pieces_.find(id);
    if (it != pieces_.end()) return it->second;
    Piece<Ops> pc(ops_, b_.get(d, key));
    for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
      int dg = *gens_[gi].homogeneous_degree();
      if (dg > d) continue;
      for (const auto& mu : b_.get(d - dg, key - keys_[gi])) {
        std::vector<T> v(pc.monos->size(), ops_.zero());
        const auto& terms = gens_[gi].terms();
        for (std::size_t t = 0; t < terms.size(); ++t) v[pc.index.at(terms[t].mono * mu)] = coeffs_[gi][t];
        pc.ech.insert(std::move(v));
        if (pc.ech.dim() == pc.monos->size()) break;
      }
      if (pc.ech.dim() == pc.monos->size()) break;
    }
    pc.std_pos.assign(pc.monos->size(), -1);
    std::vector<bool> piv(pc.monos->size(), false);
    for (auto c : pc.ech.pivots()) piv[c] = true;
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!piv[i]) pc.std_pos[i] = static_cast<long>(pc.nstd++);
    return pieces_.emplace(id, std::move(pc)).first->second;
  }

  std::vector<T> vector_of(const Piece<Ops>& pc, const Polynomial& p) const {
    std::vector<T> v(pc.monos->size(), ops_.zero());
    for (const auto& t : p.terms()) v[pc.index.at(t.mono)] = ops_.from(t.coeff);
    return v;
  }

  bool contains(const Polynomial& p) {
    if (p.is_zero()) return true;
    auto& pc = piece(*p.homogeneous_degree(), g_.key(p.terms()[0].mono));
    auto v = vector_of(pc, p);
    return pc.ech.reduce(v);
  }

  const Ops& ops() const { return ops_; }
  void forget(int d, const Key& key) { pieces_.erase(std::make_pair(d, key)); }

 private:
  Ops ops_;
  const Grading& g_;
  Buckets& b_;
  const IdealBasis& gens_;
  std::vector<Key> keys_;
  std::vector<std::vector<T>> coeffs_;
  std::map<std::pair<int, Key>, Piece<Ops>> pieces_;
};

std::vector<const Polynomial*> pointers(std::initializer_list<const IdealBasis*> lists) {
  std::vector<const Polynomial*> out;
  for (const auto* l : lists)
    for (const auto& p : *l) out.push_back(&p);
  return out;
}

const RingPtr& ring_of(std::initializer_list<const IdealBasis*> lists) {
  const RingPtr* r = nullptr;
  for (const auto* l : lists)
    for (const auto& p : *l) {
      if (!r)
        r = &p.ring();
      else if (!same_ring(*r, p.ring()))
        throw RingMismatch();
    }
  if (!r) throw std::invalid_argument("oracle needs at least one polynomial to fix the ring");
  return *r;
}

// Monomials of R_d grouped by class, in grevlex order within each class.
std::map<Key, std::vector<Monomial>> classes_of_degree(const Grading& g, int d) {
  std::map<Key, std::vector<Monomial>> out;
  if (d < 0) return out;
  for (auto& m : monomials_of_degree(g.nvars, d)) out[g.key(m)].push_back(std::move(m));
  return out;
}

template <class Ops>
std::vector<std::vector<typename Ops::T>> null_vectors(const Ops& ops, detail::Dense<Ops> m) {
  auto piv = detail::rref(ops, m, m.cols);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<typename Ops::T>> out;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<typename Ops::T> v(m.cols, ops.zero());
    v[f] = ops.one();
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = ops.neg(m.at(r, f));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

Polynomial DegreeSlice::column(const RingPtr& ring, std::size_t j) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < monomials.size(); ++i)
    if (basis(i, j) != 0) terms.push_back({monomials[i], basis(i, j)});
  return Polynomial::from_terms(ring, std::move(terms));
}

DegreeSlice ideal_slice(const IdealBasis& gens, int d) {
  check_gens(gens, "ideal_slice");
  if (d < 0) throw std::invalid_argument("ideal_slice needs d >= 0");
  const RingPtr& ring = ring_of({&gens});
  Grading g = fine_grading(ring->nvars(), pointers({&gens}));
  Buckets b(g);
  DegreeSlice out;
  out.degree = d;
  out.monomials = monomials_of_degree(ring->nvars(), d);
  std::unordered_map<Monomial, std::size_t, MonomialHash> pos;
  for (std::size_t i = 0; i < out.monomials.size(); ++i) pos.emplace(out.monomials[i], i);
  return detail::with_ops(ring->field(), [&](auto ops) {
    Slicer<decltype(ops)> s(ops, g, b, gens);
    std::vector<std::vector<Scalar>> cols;
    for (const auto& [key, monos] : classes_of_degree(g, d)) {
      auto& pc = s.piece(d, key);
      for (const auto& row : pc.ech.rows()) {
        std::vector<Scalar> col(out.monomials.size(), Scalar(0));
        for (std::size_t i = 0; i < row.size(); ++i)
          if (!ops.is_zero(row[i])) col[pos.at((*pc.monos)[i])] = ops.to(row[i]);
        cols.push_back(std::move(col));
      }
    }
    out.basis = ScalarMatrix(out.monomials.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i) out.basis(i, j) = cols[j][i];
    return out;
  });
}

bool ideal_contains(const IdealBasis& gens, const Polynomial& p) {
  check_gens(gens, "ideal_contains");
  if (p.is_zero()) return true;
  if (!p.homogeneous_degree()) throw std::invalid_argument("ideal_contains needs a homogeneous polynomial");
  IdealBasis one{p};
  const RingPtr& ring = ring_of({&gens, &one});
  Grading g = fine_grading(ring->nvars(), pointers({&gens, &one}));
  Buckets b(g);
  return detail::with_ops(ring->field(), [&](auto ops) {
    Slicer<decltype(ops)> s(ops, g, b, gens);
    return s.contains(p);
  });
}

bool ideal_equal_upto(const IdealBasis& a, const IdealBasis& b, int dmax) {
  check_gens(a, "ideal_equal_upto");
  check_gens(b, "ideal_equal_upto");
  const RingPtr& ring = ring_of({&a, &b});
  Grading g = fine_grading(ring->nvars(), pointers({&a, &b}));
  Buckets bk(g);
  return detail::with_ops(ring->field(), [&](auto ops) {
    Slicer<decltype(ops)> sa(ops, g, bk, a), sb(ops, g, bk, b);
    for (const auto& p : a)
      if (*p.homogeneous_degree() <= dmax && !sb.contains(p)) return false;
    for (const auto& p : b)
      if (*p.homogeneous_degree() <= dmax && !sa.contains(p)) return false;
    return true;
  });
}

namespace {

// Per-class colon computation shared by colon_slice and the containment check.
// Calls fn(key, monos, null vectors over monos) for each class of R_d.
// Each target piece is used by one class only and is dropped afterwards.
template <class Ops, class Fn>
void colon_classes(Slicer<Ops>& kp, Buckets& b, const Grading& g, const Polynomial& k0, int d, Fn&& fn) {
  const Ops& ops = kp.ops();
  int dk = *k0.homogeneous_degree();
  Key wk = g.key(k0.terms()[0].mono);
  for (const auto& [key, monos] : classes_of_degree(g, d)) {
    auto& pc = kp.piece(d + dk, key + wk);
    detail::Dense<Ops> m(pc.monos->size(), monos.size(), ops);
    for (std::size_t j = 0; j < monos.size(); ++j) {
      auto v = kp.vector_of(pc, k0.times_monomial(monos[j], Scalar(1)));
      pc.ech.reduce(v);
      for (std::size_t i = 0; i < v.size(); ++i) m.at(i, j) = v[i];
    }
    fn(key, monos, null_vectors(ops, std::move(m)));
    if (dk > 0) {
      kp.forget(d + dk, key + wk);
      b.forget(d + dk, key + wk);
    }
  }
}

}  // namespace

DegreeSlice colon_slice(const IdealBasis& kprime, const Polynomial& k0, int d) {
  check_gens(kprime, "colon_slice");
  IdealBasis one{k0};
  check_gens(one, "colon_slice");
  if (d < 0) throw std::invalid_argument("colon_slice needs d >= 0");
  const RingPtr& ring = ring_of({&kprime, &one});
  Grading g = fine_grading(ring->nvars(), pointers({&kprime, &one}));
  Buckets b(g);
  DegreeSlice out;
  out.degree = d;
  out.monomials = monomials_of_degree(ring->nvars(), d);
  std::unordered_map<Monomial, std::size_t, MonomialHash> pos;
  for (std::size_t i = 0; i < out.monomials.size(); ++i) pos.emplace(out.monomials[i], i);
  return detail::with_ops(ring->field(), [&](auto ops) {
    Slicer<decltype(ops)> s(ops, g, b, kprime);
    std::vector<std::vector<Scalar>> cols;
    colon_classes(s, b, g, k0, d, [&](const Key&, const std::vector<Monomial>& monos, const auto& nulls) {
      for (const auto& nv : nulls) {
        std::vector<Scalar> col(out.monomials.size(), Scalar(0));
        for (std::size_t j = 0; j < monos.size(); ++j)
          if (!ops.is_zero(nv[j])) col[pos.at(monos[j])] = ops.to(nv[j]);
        cols.push_back(std::move(col));
      }
    });
    out.basis = ScalarMatrix(out.monomials.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].size(); ++i) out.basis(i, j) = cols[j][i];
    return out;
  });
}

ColonReport colon_contained_upto(const IdealBasis& kprime, const Polynomial& k0, const IdealBasis& a, int dmax,
                                 std::size_t budget) {
  check_gens(kprime, "colon_contained_upto");
  check_gens(a, "colon_contained_upto");
  IdealBasis one{k0};
  check_gens(one, "colon_contained_upto");
  const RingPtr& ring = ring_of({&kprime, &one, &a});
  Grading g = fine_grading(ring->nvars(), pointers({&kprime, &one, &a}));
  Buckets b(g);
  int dk = *k0.homogeneous_degree();
  return detail::with_ops(ring->field(), [&](auto ops) {
    using Ops = decltype(ops);
    Slicer<Ops> s(ops, g, b, kprime), sa(ops, g, b, a);
    ColonReport rep;
    for (int d = 0; d + dk <= dmax; ++d) {
      if (b.work() > budget) {
        rep.complete = false;
        break;
      }
      colon_classes(s, b, g, k0, d, [&](const Key& key, const std::vector<Monomial>& monos, const auto& nulls) {
        if (nulls.empty()) return;
        auto& pc = sa.piece(d, key);
        for (const auto& nv : nulls) {
          std::vector<typename Ops::T> v(pc.monos->size(), ops.zero());
          for (std::size_t j = 0; j < monos.size(); ++j) v[pc.index.at(monos[j])] = nv[j];
          if (!pc.ech.reduce(v)) rep.contained = false;
        }
      });
      rep.checked_through = d;
    }
    return rep;
  });
}

BettiTable koszul_betti(const IdealBasis& gens, int imax, int dmax) {
  check_gens(gens, "koszul_betti");
  const RingPtr& ring = ring_of({&gens});
  std::size_t n = ring->nvars();
  if (n > kKoszulMaxVariables)
    throw SizeGuardError("koszul_betti limited to " + std::to_string(kKoszulMaxVariables) + " variables, got " +
                         std::to_string(n));
  if (dmax > kKoszulMaxDegree)
    throw SizeGuardError("koszul_betti limited to degree " + std::to_string(kKoszulMaxDegree));
  if (imax < 0 || dmax < 0) throw std::invalid_argument("koszul_betti needs imax, dmax >= 0");
  int top = std::min<int>(imax + 1, static_cast<int>(n));
  Grading g = fine_grading(n, pointers({&gens}));
  Buckets b(g);
  std::vector<std::vector<IndexSet>> subsets(top + 1);
  std::vector<std::vector<Key>> subset_keys(top + 1);
  for (int i = 0; i <= top; ++i) {
    subsets[i] = subsets_lex(static_cast<int>(n), i);
    for (const auto& s : subsets[i]) {
      Key k(g.w.size(), 0);
      for (int v : s) k = k + g.var_keys[v - 1];
      subset_keys[i].push_back(std::move(k));
    }
  }
  return detail::with_ops(ring->field(), [&](auto ops) {
    using Ops = decltype(ops);
    using T = typename Ops::T;
    Slicer<Ops> s(ops, g, b, gens);
    BettiTable out;
    for (int D = 0; D <= dmax; ++D) {
      std::vector<Key> classes;
      for (int i = 0; i <= top && i <= D; ++i) {
        auto cl = classes_of_degree(g, D - i);
        for (const auto& [key, monos] : cl)
          for (const auto& wk : subset_keys[i]) classes.push_back(key + wk);
      }
      std::sort(classes.begin(), classes.end());
      classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
      for (const auto& C : classes) {
        // K_i in (D, C): pairs (subset, standard monomial); offsets per subset.
        std::vector<std::size_t> dim(top + 2, 0);
        std::vector<std::vector<std::size_t>> offset(top + 1);
        for (int i = 0; i <= top && i <= D; ++i) {
          offset[i].resize(subsets[i].size());
          for (std::size_t si = 0; si < subsets[i].size(); ++si) {
            offset[i][si] = dim[i];
            dim[i] += s.piece(D - i, C - subset_keys[i][si]).nstd;
          }
        }
        std::vector<std::size_t> rk(top + 2, 0);
        for (int i = 1; i <= top && i <= D; ++i) {
          if (dim[i] == 0 || dim[i - 1] == 0) continue;
          detail::Dense<Ops> m(dim[i - 1], dim[i], ops);
          for (std::size_t si = 0; si < subsets[i].size(); ++si) {
            const auto& I = subsets[i][si];
            auto& src = s.piece(D - i, C - subset_keys[i][si]);
            if (src.nstd == 0) continue;
            for (std::size_t a = 0; a < src.monos->size(); ++a) {
              if (src.std_pos[a] < 0) continue;
              std::size_t col = offset[i][si] + static_cast<std::size_t>(src.std_pos[a]);
              for (std::size_t p = 0; p < I.size(); ++p) {
                IndexSet rest = I;
                rest.erase(rest.begin() + static_cast<long>(p));
                std::size_t ri = subset_rank(rest, static_cast<int>(n));
                auto& tgt = s.piece(D - i + 1, C - subset_keys[i - 1][ri]);
                if (tgt.nstd == 0) continue;
                Monomial xm(n);
                xm.set(I[p] - 1, 1);
                std::vector<T> v(tgt.monos->size(), ops.zero());
                v[tgt.index.at((*src.monos)[a] * xm)] = ops.one();
                tgt.ech.reduce(v);
                for (std::size_t q = 0; q < v.size(); ++q) {
                  if (ops.is_zero(v[q])) continue;
                  T val = p % 2 == 0 ? v[q] : ops.neg(v[q]);
                  std::size_t row = offset[i - 1][ri] + static_cast<std::size_t>(tgt.std_pos[q]);
                  m.at(row, col) = ops.add(m.at(row, col), val);
                }
              }
            }
          }
          rk[i] = detail::rank(ops, std::move(m));
        }
        for (int i = 0; i <= imax && i <= top; ++i) {
          long h = static_cast<long>(dim[i]) - static_cast<long>(rk[i]) - static_cast<long>(rk[i + 1]);
          if (h < 0) throw std::logic_error("negative Koszul homology dimension");
          if (h > 0) out[{i, D}] += h;
        }
      }
    }
    return out;
  });
}

}  // namespace trimcx
