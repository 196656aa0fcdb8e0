#include "trimcx/builders.hpp"

#include <istream>
#include <sstream>
#include <unordered_map>

namespace trimcx {

GradedFreeComplex koszul_complex(const std::vector<Polynomial>& gens, int twist) {
  if (gens.empty()) throw std::invalid_argument("koszul_complex needs at least one generator");
  const RingPtr& ring = gens[0].ring();
  std::vector<int> deg;
  for (const auto& g : gens) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch();
    if (g.is_zero()) throw std::invalid_argument("koszul_complex: zero generator");
    auto d = g.homogeneous_degree();
    if (!d) throw std::invalid_argument("koszul_complex: generator " + g.to_string() + " is not homogeneous");
    deg.push_back(*d);
  }
  int q = static_cast<int>(gens.size());
  std::vector<GradedFreeModule> mods;
  std::vector<std::vector<IndexSet>> bases;
  for (int l = 0; l <= q; ++l) {
    bases.push_back(subsets_lex(q, l));
    GradedFreeModule m;
    for (const auto& I : bases.back()) {
      int d = twist;
      for (int i : I) d += deg[i - 1];
      m.degrees.push_back(d);
    }
    mods.push_back(m);
  }
  std::vector<PolyMatrix> maps;
  for (int l = 1; l <= q; ++l) {
    PolyMatrix d(ring, bases[l - 1].size(), bases[l].size());
    for (std::size_t c = 0; c < bases[l].size(); ++c) {
      const auto& I = bases[l][c];
      for (int s = 0; s < l; ++s) {
        IndexSet rest = I;
        rest.erase(rest.begin() + s);
        std::size_t r = subset_rank(rest, q);
        d(r, c) = (s % 2 == 0) ? gens[I[s] - 1] : -gens[I[s] - 1];
      }
    }
    maps.push_back(std::move(d));
  }
  return GradedFreeComplex(ring, std::move(mods), std::move(maps));
}

std::string matrix_variable(int i, int j, int max_index) {
  if (max_index < 10) return "x" + std::to_string(i) + std::to_string(j);
  return "x_" + std::to_string(i) + "_" + std::to_string(j);
}

SkewMatrix make_skew(PolyMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("skew matrix must be square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m(i, i).is_zero()) throw std::invalid_argument("skew matrix has a nonzero diagonal entry");
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != -m(j, i))
        throw std::invalid_argument("matrix is not skew-symmetric at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
  }
  return SkewMatrix{std::move(m)};
}

SkewMatrix generic_skew(int n, const Field& field) {
  if (n < 1) throw std::invalid_argument("skew matrix size must be positive");
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) vars.push_back(matrix_variable(i, j, n));
  RingPtr ring = PolyRing::make(vars, field);
  PolyMatrix m(ring, n, n);
  std::size_t v = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = Polynomial::variable(ring, v++);
      m(j, i) = -m(i, j);
    }
  return SkewMatrix{std::move(m)};
}

namespace {

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    return true;
  }
  return false;
}

}  // namespace

SkewMatrix read_skew(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::invalid_argument("empty skew file");
  RingPtr ring = parse_ring_header(line);
  if (!next_line(in, line)) throw std::invalid_argument("missing 'skew <n>' line");
  std::istringstream ls(line);
  std::string kw;
  int n = 0;
  if (!(ls >> kw >> n) || kw != "skew" || n < 1) throw std::invalid_argument("expected 'skew <n>', got '" + line + "'");
  PolyMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) {
    if (!next_line(in, line)) throw std::invalid_argument("skew file has fewer than " + std::to_string(n) + " rows");
    std::vector<std::string> cells;
    std::string cur;
    int depth = 0;
    for (char ch : line) {
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (ch == ',' && depth == 0) {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    cells.push_back(cur);
    if (static_cast<int>(cells.size()) != n)
      throw std::invalid_argument("skew row " + std::to_string(i + 1) + " has " + std::to_string(cells.size()) +
                                  " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) m(i, j) = Polynomial::parse(cells[j], ring);
  }
  return make_skew(std::move(m));
}

namespace {

// Pfaffian of the principal submatrix on the index set `mask`, memoized.
Polynomial pf_rec(const PolyMatrix& m, std::uint64_t mask,
                  std::unordered_map<std::uint64_t, Polynomial>& memo) {
  if (mask == 0) return Polynomial::constant(m.ring(), 1);
  if (auto it = memo.find(mask); it != memo.end()) return it->second;
  int first = __builtin_ctzll(mask);
  std::uint64_t rest = mask & ~(1ULL << first);
  Polynomial total(m.ring());
  int pos = 2;  // position of the partner within the current index list
  for (std::uint64_t r = rest; r; r &= r - 1, ++pos) {
    int j = __builtin_ctzll(r);
    const auto& a = m(first, j);
    if (a.is_zero()) continue;
    Polynomial sub = pf_rec(m, rest & ~(1ULL << j), memo);
    if (sub.is_zero()) continue;
    Polynomial term = a * sub;
    if (pos % 2 == 0)
      total += term;
    else
      total -= term;
  }
  memo.emplace(mask, total);
  return total;
}

}  // namespace

Polynomial pfaffian_even(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pfaffian needs a square matrix");
  if (m.rows() % 2 != 0) throw std::invalid_argument("pfaffian needs an even-sized matrix");
  if (m.rows() > 64) throw std::invalid_argument("pfaffian size limit exceeded");
  std::unordered_map<std::uint64_t, Polynomial> memo;
  std::uint64_t mask = m.rows() == 64 ? ~0ULL : ((1ULL << m.rows()) - 1);
  return pf_rec(m, mask, memo);
}

Polynomial pfaffian(const SkewMatrix& x, int j) {
  int n = static_cast<int>(x.size());
  if (n % 2 == 0) throw std::invalid_argument("Pf_j needs an odd-sized skew matrix");
  if (j < 1 || j > n) throw std::invalid_argument("pfaffian index out of range");
  std::vector<std::size_t> keep;
  for (int i = 0; i < n; ++i)
    if (i != j - 1) keep.push_back(i);
  return pfaffian_even(x.entries.select_rows(keep).select_cols(keep));
}

GradedFreeComplex pfaffian_resolution(const SkewMatrix& x) {
  int n = static_cast<int>(x.size());
  if (n % 2 == 0 || n < 3) throw std::invalid_argument("pfaffian resolution needs odd n >= 3");
  const RingPtr& ring = x.entries.ring();
  PolyMatrix d1(ring, 1, n);
  std::vector<int> f1(n);
  for (int j = 1; j <= n; ++j) {
    Polynomial p = pfaffian(x, j);
    auto deg = p.homogeneous_degree();
    if (!deg) throw std::invalid_argument("Pf_" + std::to_string(j) + " is zero or not homogeneous");
    f1[j - 1] = *deg;
    d1(0, j - 1) = (j % 2 == 1) ? p : -p;
  }
  // Degrees of F_2 read off X: deg F2_j = deg X_ij + deg F1_i for any nonzero entry.
  std::vector<int> f2(n);
  for (int j = 0; j < n; ++j) {
    bool found = false;
    for (int i = 0; i < n && !found; ++i) {
      const auto& e = x.entries(i, j);
      if (e.is_zero()) continue;
      auto d = e.homogeneous_degree();
      if (!d) throw std::invalid_argument("skew matrix entry is not homogeneous");
      f2[j] = *d + f1[i];
      found = true;
    }
    if (!found) throw std::invalid_argument("skew matrix has a zero column");
  }
  int f3 = f1[0] + f2[0];
  return GradedFreeComplex(ring, {GradedFreeModule{{0}}, GradedFreeModule{f1}, GradedFreeModule{f2}, GradedFreeModule{{f3}}},
                           {d1, x.entries, d1.transpose()});
}

GenericMatrixSpec generic_matrix(int n, int m, const Field& field) {
  if (n < 1 || m < 1) throw std::invalid_argument("matrix dimensions must be positive");
  std::vector<std::string> vars;
  int mx = std::max(n, m);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) vars.push_back(matrix_variable(i, j, mx));
  RingPtr ring = PolyRing::make(vars, field);
  PolyMatrix e(ring, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = Polynomial::variable(ring, static_cast<std::size_t>(i * m + j));
  return GenericMatrixSpec{n, m, std::move(e)};
}

namespace {

Polynomial det_rec(const PolyMatrix& m, std::size_t row, std::uint64_t cols,
                   std::unordered_map<std::uint64_t, Polynomial>& memo) {
  if (row == m.rows()) return Polynomial::constant(m.ring(), 1);
  if (auto it = memo.find(cols); it != memo.end()) return it->second;
  Polynomial total(m.ring());
  int pos = 0;
  for (std::uint64_t c = cols; c; c &= c - 1, ++pos) {
    int j = __builtin_ctzll(c);
    const auto& a = m(row, j);
    if (a.is_zero()) continue;
    Polynomial sub = det_rec(m, row + 1, cols & ~(1ULL << j), memo);
    if (pos % 2 == 0)
      total += a * sub;
    else
      total -= a * sub;
  }
  memo.emplace(cols, total);
  return total;
}

}  // namespace

Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant needs a square matrix");
  if (m.rows() > 63) throw std::invalid_argument("determinant size limit exceeded");
  std::unordered_map<std::uint64_t, Polynomial> memo;
  return det_rec(m, 0, (1ULL << m.rows()) - 1, memo);
}

Polynomial minor(const GenericMatrixSpec& m, const IndexSet& tau) {
  if (static_cast<int>(tau.size()) != m.rows)
    throw std::invalid_argument("minor needs exactly " + std::to_string(m.rows) + " columns");
  check_index_set(tau, m.cols, "minor columns");
  std::vector<std::size_t> cols;
  for (int t : tau) cols.push_back(static_cast<std::size_t>(t - 1));
  return determinant(m.entries.select_cols(cols));
}

std::vector<ENBasisElement> en_basis(int n, int m, int ell) {
  std::vector<ENBasisElement> out;
  auto Ts = subsets_lex(m, n + ell);
  if (Ts.empty()) return out;
  for (const auto& a : compositions_desc(n, ell))
    for (const auto& T : Ts) out.push_back({a, T});
  return out;
}

std::size_t en_index(int n, int m, const std::vector<int>& alpha, const IndexSet& T) {
  int ell = 0;
  for (int a : alpha) ell += a;
  // Position of alpha among descending-lex compositions of ell into n parts.
  std::size_t apos = 0;
  int left = ell;
  for (int i = 0; i + 1 < n; ++i) {
    for (int k = left; k > alpha[i]; --k) apos += binom_small(left - k + (n - i - 2), n - i - 2);
    left -= alpha[i];
  }
  return apos * binom_small(m, n + ell) + subset_rank(T, m);
}

GradedFreeComplex eagon_northcott(const GenericMatrixSpec& spec) {
  int n = spec.rows, m = spec.cols;
  if (n > m) throw std::invalid_argument("eagon_northcott needs rows <= cols");
  const RingPtr& ring = spec.entries.ring();
  // Common degree of the entries; generic matrices are linear.
  int e = -1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const auto& x = spec.entries(i, j);
      if (x.is_zero()) continue;
      auto d = x.homogeneous_degree();
      if (!d || (e >= 0 && *d != e)) throw std::invalid_argument("matrix entries must share one degree");
      e = *d;
    }
  if (e < 0) e = 1;
  int len = m - n + 1;
  std::vector<GradedFreeModule> mods;
  std::vector<std::vector<ENBasisElement>> bases;
  mods.push_back(GradedFreeModule{{0}});
  bases.emplace_back();
  for (int l = 0; l < len; ++l) {
    bases.push_back(en_basis(n, m, l));
    mods.push_back(GradedFreeModule{std::vector<int>(bases.back().size(), (n + l) * e)});
  }
  std::vector<PolyMatrix> maps;
  PolyMatrix d1(ring, 1, bases[1].size());
  for (std::size_t c = 0; c < bases[1].size(); ++c) d1(0, c) = minor(spec, bases[1][c].T);
  maps.push_back(std::move(d1));
  for (int l = 1; l < len; ++l) {
    const auto& src = bases[l + 1];
    PolyMatrix d(ring, bases[l].size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c) {
      const auto& [alpha, T] = src[c];
      for (int i = 0; i < n; ++i) {
        if (alpha[i] == 0) continue;
        auto a2 = alpha;
        --a2[i];
        for (std::size_t j = 0; j < T.size(); ++j) {
          IndexSet rest = T;
          rest.erase(rest.begin() + static_cast<long>(j));
          std::size_t r = en_index(n, m, a2, rest);
          const auto& x = spec.entries(i, T[j] - 1);
          d(r, c) += (j % 2 == 0) ? x : -x;
        }
      }
    }
    maps.push_back(std::move(d));
  }
  return GradedFreeComplex(ring, std::move(mods), std::move(maps));
}

}  // namespace trimcx
