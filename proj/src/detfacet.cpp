#include "trimcx/detfacet.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace trimcx {

std::vector<LMatching> l_set(const std::vector<int>& alpha, const IndexSet& tau) {
  std::vector<LMatching> out;
  long total = std::accumulate(alpha.begin(), alpha.end(), 0L);
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("alpha entries must be nonnegative");
  if (total != static_cast<long>(tau.size())) return out;
  std::vector<int> left(alpha);
  LMatching cur;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == tau.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i] == 0) continue;
      --left[i];
      cur.pairs.emplace_back(static_cast<int>(i) + 1, tau[k]);
      self(self, k + 1);
      cur.pairs.pop_back();
      ++left[i];
    }
  };
  rec(rec, 0);
  return out;
}

void check_sigmas(int n, int m, const std::vector<IndexSet>& sigmas) {
  for (std::size_t a = 0; a < sigmas.size(); ++a) {
    check_index_set(sigmas[a], m, "sigma");
    if (static_cast<int>(sigmas[a].size()) != n)
      throw std::invalid_argument("sigma " + format_index_list(sigmas[a]) + " must have " + std::to_string(n) +
                                  " entries");
    for (std::size_t b = 0; b < a; ++b)
      if (!disjoint(sigmas[a], sigmas[b]))
        throw std::invalid_argument("sigmas " + format_index_list(sigmas[b]) + " and " +
                                    format_index_list(sigmas[a]) + " overlap");
  }
}

namespace {

IndexSet complement(const IndexSet& s, int m) {
  IndexSet out;
  for (int k = 1; k <= m; ++k)
    if (!std::binary_search(s.begin(), s.end(), k)) out.push_back(k);
  return out;
}

bool contains_all(const IndexSet& big, const IndexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<Polynomial> minor_a_generators(const GenericMatrixSpec& m, const IndexSet& sigma) {
  check_sigmas(m.rows, m.cols, {sigma});
  std::vector<Polynomial> gens;
  for (int i = 0; i < m.rows; ++i)
    for (int k : complement(sigma, m.cols)) gens.push_back(m.entries(i, k - 1));
  return gens;
}

std::vector<ScalarMatrix> explicit_q(int n, int m, const std::vector<IndexSet>& sigmas, int ell) {
  if (n < 1 || n > m) throw std::invalid_argument("explicit_q needs 1 <= n <= m");
  if (ell < 1) throw std::invalid_argument("explicit_q needs ell >= 1");
  check_sigmas(n, m, sigmas);
  auto basis = en_basis(n, m, ell);
  int u = n * (m - n);
  std::size_t rows = ell <= u ? static_cast<std::size_t>(binom_small(u, ell)) : 0;
  std::vector<ScalarMatrix> out;
  for (const auto& sigma : sigmas) {
    ScalarMatrix q(rows, basis.size());
    IndexSet comp = complement(sigma, m);
    std::vector<int> pos(m + 1, -1);
    for (std::size_t k = 0; k < comp.size(); ++k) pos[comp[k]] = static_cast<int>(k);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto& [alpha, T] = basis[c];
      if (!contains_all(T, sigma)) continue;
      IndexSet tau = set_difference(T, sigma);
      // f_T = s * f_tau ^ f_sigma
      int s = merge_sign(tau, sigma).sign;
      for (const auto& L : l_set(alpha, tau)) {
        std::vector<int> seq;
        for (auto [r, col] : L.pairs) seq.push_back((r - 1) * (m - n) + pos[col] + 1);
        int sg = sort_sign(seq);
        q(subset_rank(seq, u), c) += s * sg;
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

LiftFamily explicit_lifts(const GenericMatrixSpec& m, const std::vector<IndexSet>& sigmas) {
  const RingPtr& ring = m.entries.ring();
  int n = m.rows, cols = m.cols;
  LiftFamily fam;
  fam.q.resize(sigmas.size());
  // F_{k+1} -> G_k for k = 1 .. m-n, the length of EN minus one.
  for (int k = 1; k <= cols - n; ++k) {
    auto qs = explicit_q(n, cols, sigmas, k);
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
      const auto& q = qs[s];
      PolyMatrix p(ring, q.rows(), q.cols());
      for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
          if (q(i, j) != 0) p(i, j) = Polynomial::constant(ring, q(i, j));
      fam.q[s].push_back(std::move(p));
    }
  }
  return fam;
}

mpz_class rank_formula(int n, int m, int r, int ell) {
  mpz_class sum = 0;
  for (int i = 1; i <= r; ++i) {
    mpz_class t = binom(r, i) * binom(m - static_cast<long>(i) * n, ell - static_cast<long>(i - 1) * n);
    if (i % 2 == 1)
      sum += t;
    else
      sum -= t;
  }
  return binom(n + ell - 1, ell) * sum;
}

namespace {

void add_entry(BettiTable& t, int i, int j, const mpz_class& v) {
  if (v == 0) return;
  mpz_class& slot = t[{i, j}];
  slot += v;
  if (slot < 0) throw std::logic_error("negative Betti number from closed form");
  if (slot == 0) t.erase({i, j});
}

}  // namespace

BettiTable betti_pfaffian_trim(int n) {
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("pfaffian table needs odd n >= 5");
  BettiTable t;
  t[{0, 0}] = 1;
  int low = (n - 3) / 2, high = (n - 1) / 2;
  add_entry(t, 1, 1 + low, n - 1);
  add_entry(t, 2, 2 + low, 1);
  for (int k = 2; k <= n - 1; ++k) add_entry(t, k, k + high, binom(n - 1, k));
  add_entry(t, 3, 3 + (n - 3), 1);
  return t;
}

namespace {

BettiTable minor_table(int n, int m, int r) {
  BettiTable t;
  t[{0, 0}] = 1;
  int top = std::max(m - n + 1, n * (m - n));
  for (int l = 1; l <= top; ++l) {
    mpz_class lin = binom(n + l - 2, l - 1) * binom(m, n + l - 1) - rank_formula(n, m, r, l - 1);
    mpz_class next = r * binom(static_cast<long>(n) * (m - n), l) - rank_formula(n, m, r, l);
    add_entry(t, l, n - 1 + l, lin);
    add_entry(t, l, n + l, next);
  }
  return t;
}

}  // namespace

BettiTable betti_single_minor(int n, int m) {
  if (n < 1 || n > m) throw std::invalid_argument("betti_single_minor needs 1 <= n <= m");
  return minor_table(n, m, 1);
}

BettiTable betti_multi_minor(int n, int m, const std::vector<IndexSet>& sigmas) {
  if (n < 1 || n > m) throw std::invalid_argument("betti_multi_minor needs 1 <= n <= m");
  if (sigmas.empty()) throw std::invalid_argument("betti_multi_minor needs at least one sigma");
  check_sigmas(n, m, sigmas);
  return minor_table(n, m, static_cast<int>(sigmas.size()));
}

Clutter clutter_removed(int n, int m, const std::vector<IndexSet>& removed) {
  if (n < 1 || n > m) throw std::invalid_argument("clutter needs 1 <= n <= m");
  for (const auto& s : removed) {
    check_index_set(s, m, "removed set");
    if (static_cast<int>(s.size()) != n) throw std::invalid_argument("removed sets must have n entries");
  }
  Clutter c{n, m, {}};
  for (auto& s : subsets_lex(m, n))
    if (std::find(removed.begin(), removed.end(), s) == removed.end()) c.circuits.push_back(std::move(s));
  return c;
}

std::vector<IndexSet> parse_index_sets(std::string_view text) {
  std::vector<IndexSet> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_index_list(piece));
    start = end + 1;
  }
  return out;
}

ClutterSpec parse_clutter_spec(std::string_view text) {
  ClutterSpec spec;
  bool have_n = false, have_m = false;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("clutter spec token '" + tok + "' lacks '='");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "n") {
        spec.n = std::stoi(val);
        have_n = true;
      } else if (key == "m") {
        spec.m = std::stoi(val);
        have_m = true;
      } else if (key == "remove") {
        spec.removed = parse_index_sets(val);
      } else {
        throw std::invalid_argument("unknown clutter spec key '" + key + "'");
      }
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("clutter spec value '" + val + "' out of range");
    }
  }
  if (!have_n || !have_m) throw std::invalid_argument("clutter spec needs n= and m=");
  return spec;
}

std::vector<mpz_class> clique_fvector_enumerate(const Clutter& c) {
  if (c.m > kMaxEnumerationVertices)
    throw SizeGuardError("f-vector enumeration limited to m <= " + std::to_string(kMaxEnumerationVertices));
  if (c.m < 0 || c.n < 1) throw std::invalid_argument("bad clutter");
  const std::uint32_t full = 1u << c.m;
  std::vector<std::uint8_t> circuit(full, 0), face(full, 0);
  for (const auto& s : c.circuits) {
    std::uint32_t mask = 0;
    for (int v : s) mask |= 1u << (v - 1);
    circuit[mask] = 1;
  }
  // Small sets: contained in a circuit. Walk masks downward so supersets come first.
  for (std::uint32_t mask = full; mask-- > 0;) {
    int k = std::popcount(mask);
    if (k == c.n) {
      face[mask] = circuit[mask];
    } else if (k < c.n) {
      for (int b = 0; b < c.m && !face[mask]; ++b)
        if (!(mask & (1u << b)) && face[mask | (1u << b)]) face[mask] = 1;
    }
  }
  // Large sets: every facet is a face. Proper subsets are numerically smaller.
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    if (std::popcount(mask) <= c.n) continue;
    bool ok = true;
    for (int b = 0; b < c.m && ok; ++b)
      if ((mask & (1u << b)) && !face[mask ^ (1u << b)]) ok = false;
    face[mask] = ok;
  }
  std::vector<mpz_class> f(c.m, 0);
  for (std::uint32_t mask = 1; mask < full; ++mask)
    if (face[mask]) f[std::popcount(mask) - 1] += 1;
  return f;
}

std::vector<mpz_class> clique_fvector_formula(int n, int m, int r, IndexConvention conv) {
  if (n < 1 || n > m || r < 0) throw std::invalid_argument("f-vector formula needs 1 <= n <= m, r >= 0");
  std::vector<mpz_class> out;
  for (int l = 1; l <= m - n + 1; ++l) {
    int shift = conv == IndexConvention::shifted ? 1 : 0;
    mpz_class sum = 0;
    for (int i = 1; i <= r; ++i) {
      mpz_class t = binom(r, i) * binom(m - static_cast<long>(i) * n, (l - shift) - static_cast<long>(i - 1) * n);
      if (i % 2 == 1)
        sum += t;
      else
        sum -= t;
    }
    out.push_back(binom(m, n + l - 1) - sum);
  }
  return out;
}

}  // namespace trimcx
