#include "trimcx/trim.hpp"

#include <algorithm>
#include <set>

#include "trimcx/builders.hpp"

namespace trimcx {

int TrimSetup::twist(std::size_t i) const {
  return f.module(1).degrees.at(summands.at(i));
}

std::vector<std::size_t> TrimSetup::kept_columns() const {
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < f.module(1).rank(); ++c)
    if (std::find(summands.begin(), summands.end(), c) == summands.end()) keep.push_back(c);
  return keep;
}

namespace {

void check_summands(const GradedFreeComplex& f, const std::vector<std::size_t>& summands) {
  std::set<std::size_t> seen;
  for (auto s : summands) {
    if (s >= f.module(1).rank())
      throw std::invalid_argument("summand index " + std::to_string(s + 1) + " out of range 1.." +
                                  std::to_string(f.module(1).rank()));
    if (!seen.insert(s).second) throw std::invalid_argument("summand index " + std::to_string(s + 1) + " repeated");
  }
}

}  // namespace

D2Decomposition decompose_d2(const GradedFreeComplex& f, const std::vector<std::size_t>& summands) {
  check_summands(f, summands);
  PolyMatrix d2 = f.differential(2);
  D2Decomposition out{d2, {}};
  for (auto s : summands) {
    out.d0.push_back(d2.select_rows({s}));
    for (std::size_t c = 0; c < d2.cols(); ++c) out.d2_prime(s, c) = Polynomial(d2.ring());
  }
  return out;
}

std::vector<Polynomial> derive_ideal_a(const PolyMatrix& d0_row) {
  std::vector<Polynomial> entries;
  for (std::size_t i = 0; i < d0_row.rows(); ++i)
    for (std::size_t j = 0; j < d0_row.cols(); ++j) {
      const auto& e = d0_row(i, j);
      if (e.is_zero()) continue;
      if (!e.homogeneous_degree()) throw std::invalid_argument("d_0 entry " + e.to_string() + " is not homogeneous");
      Polynomial m = e.monic();
      if (std::find(entries.begin(), entries.end(), m) == entries.end()) entries.push_back(std::move(m));
    }
  if (entries.empty()) throw std::invalid_argument("d_0 row is zero; the marked generator is not a trimmable summand");
  const RingPtr& ring = entries[0].ring();
  for (const auto& e : entries)
    if (e.is_constant()) return {Polynomial::constant(ring, 1)};
  // Keep an entry unless it lies in the ideal of the entries kept so far.
  std::stable_sort(entries.begin(), entries.end(), [](const Polynomial& a, const Polynomial& b) {
    return *a.homogeneous_degree() < *b.homogeneous_degree();
  });
  std::vector<Polynomial> kept;
  for (const auto& g : entries) {
    if (!kept.empty()) {
      PolyMatrix a(ring, 1, kept.size()), b(ring, 1, 1);
      std::vector<int> cola;
      for (std::size_t k = 0; k < kept.size(); ++k) {
        a(0, k) = kept[k];
        cola.push_back(*kept[k].homogeneous_degree());
      }
      b(0, 0) = g;
      if (solve_poly_homogeneous(a, b, cola, {*g.homogeneous_degree()})) continue;
    }
    kept.push_back(g);
  }
  return kept;
}

TrimSetup make_trim_setup(const GradedFreeComplex& f, const std::vector<std::size_t>& summands,
                          const std::vector<std::vector<Polynomial>>& a_override) {
  check_summands(f, summands);
  if (f.length() < 2) throw std::invalid_argument("trimming needs a resolution with F_2 nonzero");
  if (!a_override.empty() && a_override.size() != summands.size())
    throw std::invalid_argument("need one a-ideal per marked summand");
  TrimSetup s{f, summands, {}, {}};
  auto dec = decompose_d2(f, summands);
  for (std::size_t i = 0; i < summands.size(); ++i) {
    std::vector<Polynomial> a = a_override.empty() ? derive_ideal_a(dec.d0[i]) : a_override[i];
    if (a.empty()) throw std::invalid_argument("a-ideal needs at least one generator");
    for (const auto& g : a)
      if (!same_ring(g.ring(), f.ring())) throw RingMismatch();
    s.g.push_back(koszul_complex(a));
    s.a.push_back(std::move(a));
  }
  return s;
}

LiftFamily lift_q(const TrimSetup& setup, const LiftOptions& opts) {
  const auto& f = setup.f;
  auto dec = decompose_d2(f, setup.summands);
  LiftFamily fam;
  for (std::size_t i = 0; i < setup.t(); ++i) {
    GradedFreeComplex g = setup.g[i];
    int tw = setup.twist(i);
    std::vector<PolyMatrix> q;
    PolyMatrix rhs = dec.d0[i];
    for (std::size_t k = 1; k + 1 <= f.length(); ++k) {
      PolyMatrix m = g.differential(k);
      auto cola = twist(g.module(k), tw).degrees;
      auto colb = f.module(k + 1).degrees;
      LiftOptions o = opts;
      if (o.seed) o.seed = *o.seed * 7919 + i * 131 + k;
      auto x = solve_poly_homogeneous(m, rhs, cola, colb, o);
      if (!x)
        throw LiftError("no lift q_" + std::to_string(k) + " for summand " + std::to_string(setup.summands[i] + 1) +
                        "; d_0(F_2) is not contained in a e_0");
      q.push_back(*x);
      if (k + 2 <= f.length()) rhs = *x * f.differential(k + 2);
    }
    fam.q.push_back(std::move(q));
  }
  return fam;
}

bool verify_lifts(const TrimSetup& setup, const LiftFamily& lifts) {
  const auto& f = setup.f;
  if (lifts.q.size() != setup.t()) return false;
  auto dec = decompose_d2(f, setup.summands);
  for (std::size_t i = 0; i < setup.t(); ++i) {
    const auto& q = lifts.q[i];
    const auto& g = setup.g[i];
    if (q.size() + 1 != f.length()) return false;
    for (std::size_t k = 1; k <= q.size(); ++k) {
      PolyMatrix rhs = k == 1 ? dec.d0[i] : q[k - 2] * f.differential(k + 1);
      PolyMatrix m = g.differential(k);
      if (m.cols() != q[k - 1].rows() || q[k - 1].cols() != f.module(k + 1).rank()) return false;
      if (m * q[k - 1] != rhs) return false;
    }
  }
  return true;
}

namespace {

PolyMatrix stacked_q(const TrimSetup& s, const LiftFamily& lifts, std::size_t k) {
  const RingPtr& ring = s.f.ring();
  std::size_t cols = s.f.module(k + 1).rank();
  std::vector<PolyMatrix> parts;
  for (std::size_t i = 0; i < s.t(); ++i) {
    if (k >= 1 && k <= lifts.q[i].size())
      parts.push_back(lifts.q[i][k - 1]);
    else
      parts.push_back(PolyMatrix(ring, s.g[i].module(k).rank(), cols));
  }
  return PolyMatrix::vstack(parts, ring, cols);
}

std::size_t max_g_length(const TrimSetup& s) {
  std::size_t len = 0;
  for (const auto& g : s.g) len = std::max(len, g.length());
  return len;
}

GradedFreeModule bottom_module(const TrimSetup& s, std::size_t k) {
  if (k == 0) return GradedFreeModule{{0}};
  GradedFreeModule m;
  for (std::size_t i = 0; i < s.t(); ++i) m = direct_sum(m, twist(s.g[i].module(k), s.twist(i)));
  return m;
}

}  // namespace

GradedFreeComplex trimming_complex(const TrimSetup& setup, const LiftFamily& lifts) {
  if (!verify_lifts(setup, lifts)) throw LiftError("lift family does not satisfy its commuting identities");
  const auto& f = setup.f;
  const RingPtr& ring = f.ring();
  auto keep = setup.kept_columns();
  PolyMatrix d1 = f.differential(1);

  // Top row: F_1' <- F_2 <- F_3 <- ...
  std::vector<GradedFreeModule> tmods;
  GradedFreeModule f1p;
  for (auto c : keep) f1p.degrees.push_back(f.module(1).degrees[c]);
  tmods.push_back(f1p);
  for (std::size_t j = 2; j <= f.length(); ++j) tmods.push_back(f.module(j));
  std::vector<PolyMatrix> tmaps;
  tmaps.push_back(f.differential(2).select_rows(keep));
  for (std::size_t j = 3; j <= f.length(); ++j) tmaps.push_back(f.differential(j));
  GradedFreeComplex top(ring, tmods, tmaps);

  // Bottom row: R <- (+) G^i_1 <- (+) G^i_2 <- ..., augmented by -m_1(-) d_1(e_0^i).
  std::size_t glen = max_g_length(setup);
  std::vector<GradedFreeModule> bmods;
  for (std::size_t k = 0; k <= glen; ++k) bmods.push_back(bottom_module(setup, k));
  std::vector<PolyMatrix> bmaps;
  for (std::size_t k = 1; k <= glen; ++k) {
    PolyMatrix m(ring, bmods[k - 1].rank(), bmods[k].rank());
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t i = 0; i < setup.t(); ++i) {
      PolyMatrix gi = setup.g[i].differential(k);
      if (k == 1) {
        Polynomial scale = -d1(0, setup.summands[i]);
        for (std::size_t c = 0; c < gi.cols(); ++c) m(0, c0 + c) = gi(0, c) * scale;
      } else {
        for (std::size_t r = 0; r < gi.rows(); ++r)
          for (std::size_t c = 0; c < gi.cols(); ++c) m(r0 + r, c0 + c) = gi(r, c);
        r0 += gi.rows();
      }
      c0 += gi.cols();
    }
    bmaps.push_back(std::move(m));
  }
  GradedFreeComplex bottom(ring, bmods, bmaps);

  ChainMapData cm{top, bottom, {}, 0};
  cm.maps.push_back(d1.select_cols(keep));
  for (std::size_t j = 1; j <= top.length(); ++j) cm.maps.push_back(stacked_q(setup, lifts, j));
  return mapping_cone(cm);
}

BettiTable trimmed_betti(const TrimSetup& setup, const LiftFamily& lifts) {
  const auto& f = setup.f;
  if (!is_minimal(f)) throw ComplexError("trimmed_betti needs a minimal resolution F");
  for (const auto& g : setup.g)
    if (!is_minimal(g)) throw ComplexError("trimmed_betti needs minimal resolutions of every a_i");
  const Field& field = f.ring()->field();
  auto keep = setup.kept_columns();

  // rank_j of (stacked q_k (x) k), for k = 1 .. length(F) - 1.
  std::size_t L = f.length();
  std::size_t top = std::max(L, max_g_length(setup));
  std::vector<std::map<int, std::size_t>> rq(top + 2);
  for (std::size_t k = 1; k + 1 <= L; ++k) {
    PolyMatrix q = stacked_q(setup, lifts, k);
    auto rows = bottom_module(setup, k).degrees;
    auto cols = f.module(k + 1).degrees;
    std::set<int> degs(cols.begin(), cols.end());
    for (int j : degs) {
      std::vector<std::size_t> ri, ci;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r] == j) ri.push_back(r);
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (cols[c] == j) ci.push_back(c);
      if (ri.empty()) continue;
      rq[k][j] = rank_over_field(q.select_rows(ri).select_cols(ci).constant_part(), field);
    }
  }

  BettiTable t;
  t[{0, 0}] = 1;
  for (std::size_t i = 1; i <= top; ++i) {
    std::map<int, long> count;
    if (i == 1) {
      for (auto c : keep) count[f.module(1).degrees[c]] += 1;
    } else {
      for (int d : f.module(i).degrees) count[d] += 1;
    }
    for (int d : bottom_module(setup, i).degrees) count[d] += 1;
    for (auto& [j, n] : count) {
      long v = n;
      if (auto it = rq[i - 1].find(j); it != rq[i - 1].end()) v -= static_cast<long>(it->second);
      if (auto it = rq[i].find(j); it != rq[i].end()) v -= static_cast<long>(it->second);
      if (v < 0) throw ComplexError("negative Betti count from the rank formula");
      if (v > 0) t[{static_cast<int>(i), j}] = v;
    }
  }
  return t;
}

std::vector<Polynomial> trimmed_ideal_generators(const TrimSetup& setup) {
  PolyMatrix d1 = setup.f.differential(1);
  std::vector<Polynomial> gens;
  for (auto c : setup.kept_columns()) gens.push_back(d1(0, c));
  for (std::size_t i = 0; i < setup.t(); ++i)
    for (const auto& a : setup.a[i]) gens.push_back(a * d1(0, setup.summands[i]));
  return gens;
}

std::vector<Polynomial> ideal_without(const GradedFreeComplex& f, std::size_t column) {
  PolyMatrix d1 = f.differential(1);
  std::vector<Polynomial> gens;
  for (std::size_t c = 0; c < d1.cols(); ++c)
    if (c != column) gens.push_back(d1(0, c));
  return gens;
}

std::vector<Polynomial> h0_generators(const GradedFreeComplex& c) {
  PolyMatrix d1 = c.differential(1);
  std::vector<Polynomial> gens;
  for (std::size_t k = 0; k < d1.cols(); ++k)
    if (!d1(0, k).is_zero()) gens.push_back(d1(0, k));
  return gens;
}

}  // namespace trimcx
