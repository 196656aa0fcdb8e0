#include "trimcx/chain.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace trimcx {

GradedFreeModule twist(const GradedFreeModule& m, int shift) {
  GradedFreeModule r = m;
  for (auto& d : r.degrees) d += shift;
  return r;
}

GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b) {
  GradedFreeModule r = a;
  r.degrees.insert(r.degrees.end(), b.degrees.begin(), b.degrees.end());
  return r;
}

bool GradedMap::is_homogeneous() const {
  if (matrix.rows() != target.rank() || matrix.cols() != source.rank()) return false;
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j) {
      const auto& e = matrix(i, j);
      if (e.is_zero()) continue;
      auto d = e.homogeneous_degree();
      if (!d || *d != source.degrees[j] - target.degrees[i]) return false;
    }
  return true;
}

GradedFreeComplex::GradedFreeComplex(RingPtr ring, std::vector<GradedFreeModule> modules,
                                     std::vector<PolyMatrix> maps)
    : ring_(std::move(ring)), modules_(std::move(modules)), maps_(std::move(maps)) {
  if (modules_.empty()) throw ComplexError("complex needs at least F_0");
  if (maps_.size() + 1 != modules_.size()) throw ComplexError("complex needs one map per module after F_0");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const auto& m = maps_[i];
    if (m.rows() != modules_[i].rank() || m.cols() != modules_[i + 1].rank())
      throw ComplexError("d_" + std::to_string(i + 1) + " has shape " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(modules_[i].rank()) + "x" +
                         std::to_string(modules_[i + 1].rank()));
    if (m.rows() * m.cols() > 0 && !same_ring(m.ring(), ring_)) throw RingMismatch();
  }
  // Drop trailing zero modules so length() is meaningful.
  while (modules_.size() > 1 && modules_.back().rank() == 0) {
    modules_.pop_back();
    maps_.pop_back();
  }
}

GradedFreeModule GradedFreeComplex::module(std::size_t i) const {
  return i < modules_.size() ? modules_[i] : GradedFreeModule{};
}

PolyMatrix GradedFreeComplex::differential(std::size_t i) const {
  if (i >= 1 && i <= maps_.size()) return maps_[i - 1];
  std::size_t rows = i >= 1 ? module(i - 1).rank() : 0;
  return PolyMatrix(ring_, rows, module(i).rank());
}

GradedMap GradedFreeComplex::graded_differential(std::size_t i) const {
  return {module(i), i >= 1 ? module(i - 1) : GradedFreeModule{}, differential(i)};
}

std::vector<std::size_t> GradedFreeComplex::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& m : modules_) r.push_back(m.rank());
  return r;
}

void GradedFreeComplex::set_differential(std::size_t i, PolyMatrix m) {
  if (i < 1 || i > maps_.size()) throw ComplexError("no differential d_" + std::to_string(i));
  if (m.rows() != maps_[i - 1].rows() || m.cols() != maps_[i - 1].cols())
    throw ComplexError("replacement differential has the wrong shape");
  maps_[i - 1] = std::move(m);
}

bool verify_complex(const GradedFreeComplex& c) {
  for (std::size_t i = 1; i <= c.length(); ++i)
    if (!c.graded_differential(i).is_homogeneous()) return false;
  for (std::size_t i = 1; i < c.length(); ++i)
    if (!(c.differential(i) * c.differential(i + 1)).is_zero()) return false;
  return true;
}

bool commutes(const ChainMapData& f) {
  const auto& s = f.source;
  const auto& t = f.target;
  if (f.maps.size() != s.length() + 1) return false;
  for (std::size_t k = 0; k < f.maps.size(); ++k) {
    long tk = static_cast<long>(k) + f.shift;
    if (tk < 0) return false;
    if (f.maps[k].rows() != t.module(tk).rank() || f.maps[k].cols() != s.module(k).rank()) return false;
  }
  for (std::size_t k = 1; k < f.maps.size(); ++k) {
    std::size_t tk = k + f.shift;
    // d^t_{tk} f_k = f_{k-1} d^s_k
    PolyMatrix lhs = t.differential(tk) * f.maps[k];
    PolyMatrix rhs = f.maps[k - 1] * s.differential(k);
    if (lhs != rhs) return false;
  }
  return true;
}

GradedFreeComplex mapping_cone(const ChainMapData& f) {
  if (f.shift != 0) throw ComplexError("mapping_cone expects a degree-0 chain map");
  if (!commutes(f)) throw ComplexError("chain map squares do not commute");
  const auto& s = f.source;
  const auto& t = f.target;
  const RingPtr& ring = t.ring();
  std::size_t len = std::max(t.length(), s.length() + 1);
  auto fmap = [&](std::size_t k) {
    if (k < f.maps.size()) return f.maps[k];
    return PolyMatrix(ring, t.module(k).rank(), s.module(k).rank());
  };
  std::vector<GradedFreeModule> mods;
  for (std::size_t i = 0; i <= len; ++i)
    mods.push_back(i == 0 ? t.module(0) : direct_sum(t.module(i), s.module(i - 1)));
  std::vector<PolyMatrix> maps;
  for (std::size_t i = 1; i <= len; ++i) {
    std::size_t ti = t.module(i).rank(), si = s.module(i - 1).rank();
    std::size_t tr = t.module(i - 1).rank(), sr = i >= 2 ? s.module(i - 2).rank() : 0;
    PolyMatrix m(ring, tr + sr, ti + si);
    PolyMatrix dt = t.differential(i);
    PolyMatrix fi = fmap(i - 1);
    for (std::size_t r = 0; r < tr; ++r) {
      for (std::size_t c = 0; c < ti; ++c) m(r, c) = dt(r, c);
      for (std::size_t c = 0; c < si; ++c) m(r, ti + c) = fi(r, c);
    }
    if (i >= 2) {
      PolyMatrix ds = s.differential(i - 1);
      for (std::size_t r = 0; r < sr; ++r)
        for (std::size_t c = 0; c < si; ++c) m(tr + r, ti + c) = -ds(r, c);
    }
    maps.push_back(std::move(m));
  }
  return GradedFreeComplex(ring, std::move(mods), std::move(maps));
}

bool is_minimal(const GradedFreeComplex& c) {
  for (std::size_t i = 1; i <= c.length(); ++i) {
    PolyMatrix d = c.differential(i);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t k = 0; k < d.cols(); ++k)
        if (d(r, k).constant_term() != 0) return false;
  }
  return true;
}

BettiTable betti_from_minimal(const GradedFreeComplex& c) {
  if (!is_minimal(c)) throw ComplexError("complex is not minimal");
  BettiTable t;
  for (std::size_t i = 0; i <= c.length(); ++i)
    for (int d : c.module(i).degrees) t[{static_cast<int>(i), d}] += 1;
  return t;
}

namespace {

// rank of (d_i (x) k) restricted to generators of degree j, for each j.
std::map<int, std::size_t> constant_ranks_by_degree(const GradedFreeComplex& c, std::size_t i) {
  std::map<int, std::size_t> out;
  if (i < 1 || i > c.length()) return out;
  PolyMatrix d = c.differential(i);
  auto src = c.module(i).degrees;
  auto tgt = c.module(i - 1).degrees;
  std::set<int> degs(src.begin(), src.end());
  for (int j : degs) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < tgt.size(); ++r)
      if (tgt[r] == j) rows.push_back(r);
    for (std::size_t k = 0; k < src.size(); ++k)
      if (src[k] == j) cols.push_back(k);
    if (rows.empty()) continue;
    ScalarMatrix s(rows.size(), cols.size());
    bool any = false;
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) {
        s(a, b) = d(rows[a], cols[b]).constant_term();
        any = any || s(a, b) != 0;
      }
    if (any) out[j] = rank_over_field(s, c.ring()->field());
  }
  return out;
}

}  // namespace

BettiTable betti_from_resolution(const GradedFreeComplex& c) {
  std::vector<std::map<int, std::size_t>> rk(c.length() + 2);
  for (std::size_t i = 1; i <= c.length(); ++i) rk[i] = constant_ranks_by_degree(c, i);
  BettiTable t;
  for (std::size_t i = 0; i <= c.length(); ++i) {
    std::map<int, long> count;
    for (int d : c.module(i).degrees) count[d] += 1;
    for (auto [j, n] : count) {
      long v = n;
      if (auto it = rk[i].find(j); it != rk[i].end()) v -= static_cast<long>(it->second);
      if (auto it = rk[i + 1].find(j); it != rk[i + 1].end()) v -= static_cast<long>(it->second);
      if (v < 0) throw ComplexError("negative Betti count; input is not a complex");
      if (v > 0) t[{static_cast<int>(i), j}] = v;
    }
  }
  return t;
}

bool rank_acyclicity_evidence(const GradedFreeComplex& c, std::uint64_t seed) {
  std::size_t L = c.length();
  if (L == 0) return true;
  std::vector<std::size_t> r(L + 2, 0);
  for (std::size_t i = 1; i <= L; ++i) r[i] = rank_at_random_point(c.differential(i), seed * 1000003ULL + i);
  for (std::size_t i = 1; i < L; ++i)
    if (r[i] + r[i + 1] != c.module(i).rank()) return false;
  return r[L] == c.module(L).rank();
}

std::vector<mpz_class> betti_totals(const BettiTable& t) {
  int imax = -1;
  for (const auto& [k, v] : t) imax = std::max(imax, k.first);
  std::vector<mpz_class> out(imax + 1);
  for (const auto& [k, v] : t) out[k.first] += v;
  return out;
}

std::string format_betti_table(const BettiTable& t) {
  if (t.empty()) return "(empty)\n";
  int imax = 0, rmin = 0, rmax = 0;
  bool first = true;
  for (const auto& [k, v] : t) {
    imax = std::max(imax, k.first);
    int row = k.second - k.first;
    if (first) {
      rmin = rmax = row;
      first = false;
    }
    rmin = std::min(rmin, row);
    rmax = std::max(rmax, row);
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{""};
  for (int i = 0; i <= imax; ++i) header.push_back(std::to_string(i));
  cells.push_back(header);
  std::vector<std::string> totals{"total:"};
  for (const auto& v : betti_totals(t)) totals.push_back(v.get_str());
  cells.push_back(totals);
  for (int r = rmin; r <= rmax; ++r) {
    std::vector<std::string> line{std::to_string(r) + ":"};
    for (int i = 0; i <= imax; ++i) {
      auto it = t.find({i, i + r});
      line.push_back(it == t.end() ? "." : it->second.get_str());
    }
    cells.push_back(line);
  }
  std::vector<std::size_t> width(imax + 2, 0);
  for (const auto& line : cells)
    for (std::size_t k = 0; k < line.size(); ++k) width[k] = std::max(width[k], line[k].size());
  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      out << std::string(width[k] - line[k].size(), ' ') << line[k];
      if (k + 1 < line.size()) out << ' ';
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::string ring_header(const PolyRing& ring) {
  std::string s = "ring ";
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (i) s += ',';
    s += ring.variable(i);
  }
  return s + " over " + ring.field().to_string();
}

RingPtr parse_ring_header(const std::string& line) {
  std::istringstream in(line);
  std::string kw, vars, over, field;
  in >> kw >> vars >> over >> field;
  std::string extra;
  if (kw != "ring" || over != "over" || field.empty() || (in >> extra))
    throw std::invalid_argument("expected 'ring <vars> over <QQ|gf:p>', got '" + line + "'");
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos <= vars.size()) {
    std::size_t comma = vars.find(',', pos);
    if (comma == std::string::npos) comma = vars.size();
    names.push_back(vars.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return PolyRing::make(std::move(names), Field::parse(field));
}

namespace {

const char* kMagic = "trimcx-complex v1";

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    line = line.substr(b);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    return true;
  }
  return false;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_complex(std::ostream& out, const GradedFreeComplex& c) {
  out << kMagic << '\n' << ring_header(*c.ring()) << '\n';
  out << "length " << c.length() << '\n';
  for (std::size_t i = 0; i <= c.length(); ++i) {
    out << "module " << i << ':';
    for (int d : c.module(i).degrees) out << ' ' << d;
    out << '\n';
  }
  for (std::size_t i = 1; i <= c.length(); ++i) {
    PolyMatrix d = c.differential(i);
    out << "map " << i << ' ' << d.rows() << ' ' << d.cols() << '\n';
    for (std::size_t r = 0; r < d.rows() && d.cols() > 0; ++r) {
      for (std::size_t k = 0; k < d.cols(); ++k) {
        if (k) out << ", ";
        out << d(r, k).to_string();
      }
      out << '\n';
    }
  }
}

GradedFreeComplex read_complex(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line) || line != kMagic) throw std::invalid_argument("missing complex header");
  if (!next_content_line(in, line)) throw std::invalid_argument("missing ring line");
  RingPtr ring = parse_ring_header(line);
  if (!next_content_line(in, line)) throw std::invalid_argument("missing length line");
  std::size_t len = 0;
  {
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw >> len) || kw != "length") throw std::invalid_argument("bad length line '" + line + "'");
  }
  std::vector<GradedFreeModule> mods(len + 1);
  for (std::size_t i = 0; i <= len; ++i) {
    if (!next_content_line(in, line)) throw std::invalid_argument("missing module line");
    std::istringstream ls(line);
    std::string kw, idx;
    ls >> kw >> idx;
    if (kw != "module" || idx != std::to_string(i) + ":") throw std::invalid_argument("bad module line '" + line + "'");
    int d;
    while (ls >> d) mods[i].degrees.push_back(d);
  }
  std::vector<PolyMatrix> maps;
  for (std::size_t i = 1; i <= len; ++i) {
    if (!next_content_line(in, line)) throw std::invalid_argument("missing map line");
    std::istringstream ls(line);
    std::string kw;
    std::size_t idx, rows, cols;
    if (!(ls >> kw >> idx >> rows >> cols) || kw != "map" || idx != i)
      throw std::invalid_argument("bad map line '" + line + "'");
    PolyMatrix m(ring, rows, cols);
    for (std::size_t r = 0; r < rows && cols > 0; ++r) {
      if (!next_content_line(in, line)) throw std::invalid_argument("truncated matrix");
      auto cells = split_commas(line);
      if (cells.size() != cols) throw std::invalid_argument("matrix row has wrong length");
      for (std::size_t k = 0; k < cols; ++k) m(r, k) = Polynomial::parse(cells[k], ring);
    }
    maps.push_back(std::move(m));
  }
  return GradedFreeComplex(ring, std::move(mods), std::move(maps));
}

}  // namespace trimcx
