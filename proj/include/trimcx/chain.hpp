#pragma once

// Graded free complexes, chain maps, mapping cones and Betti tables.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "trimcx/linalg.hpp"

namespace trimcx {

struct GradedFreeModule {
  std::vector<int> degrees;  // internal degrees of the free generators
  std::size_t rank() const { return degrees.size(); }
  bool operator==(const GradedFreeModule&) const = default;
};

GradedFreeModule twist(const GradedFreeModule& m, int shift);
GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b);

/// A homogeneous map; matrix rows index target generators.
struct GradedMap {
  GradedFreeModule source, target;
  PolyMatrix matrix;

  /// Entry (i,j) is zero or homogeneous of degree source[j] - target[i].
  bool is_homogeneous() const;
};

class ComplexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// F_0 <- F_1 <- ... <- F_L. differential(i) maps F_i to F_{i-1}, 1 <= i <= L.
class GradedFreeComplex {
 public:
  GradedFreeComplex() = default;
  GradedFreeComplex(RingPtr ring, std::vector<GradedFreeModule> modules, std::vector<PolyMatrix> maps);

  const RingPtr& ring() const { return ring_; }
  std::size_t length() const { return modules_.empty() ? 0 : modules_.size() - 1; }
  /// F_i, or the zero module outside [0, length].
  GradedFreeModule module(std::size_t i) const;
  const std::vector<GradedFreeModule>& modules() const { return modules_; }
  /// Matrix of d_i : F_i -> F_{i-1}; a zero matrix of the right shape outside range.
  PolyMatrix differential(std::size_t i) const;
  GradedMap graded_differential(std::size_t i) const;
  std::vector<std::size_t> ranks() const;

  /// Replaces d_i; used by fault-injection tests.
  void set_differential(std::size_t i, PolyMatrix m);

 private:
  RingPtr ring_;
  std::vector<GradedFreeModule> modules_;
  std::vector<PolyMatrix> maps_;  // maps_[i-1] = d_i
};

/// Chain map f_k : source_k -> target_{k + shift}.
struct ChainMapData {
  GradedFreeComplex source, target;
  std::vector<PolyMatrix> maps;  // maps[k] defined for k = 0..source.length()
  int shift = 0;
};

using BettiTable = std::map<std::pair<int, int>, mpz_class>;

bool verify_complex(const GradedFreeComplex& c);
/// Does every square d_target f_k = f_{k-1} d_source commute?
bool commutes(const ChainMapData& f);

/// Cone_i = target_i (+) source_{i-1}, differential [[d_target, f], [0, -d_source]].
/// Throws ComplexError if f does not commute.
GradedFreeComplex mapping_cone(const ChainMapData& f);

bool is_minimal(const GradedFreeComplex& c);

/// Betti table read off a minimal complex. Throws ComplexError otherwise.
BettiTable betti_from_minimal(const GradedFreeComplex& c);

/// Betti table of whatever the (possibly non-minimal) resolution resolves:
/// beta_{i,j} = rank_j F_i - rank_j(d_i (x) k) - rank_j(d_{i+1} (x) k).
BettiTable betti_from_resolution(const GradedFreeComplex& c);

/// Buchsbaum-Eisenbud style rank condition checked at a random point.
bool rank_acyclicity_evidence(const GradedFreeComplex& c, std::uint64_t seed);

/// Sums of the table by homological index, from 0 to the largest index.
std::vector<mpz_class> betti_totals(const BettiTable& t);
std::string format_betti_table(const BettiTable& t);

void write_complex(std::ostream& out, const GradedFreeComplex& c);
GradedFreeComplex read_complex(std::istream& in);

std::string ring_header(const PolyRing& ring);
RingPtr parse_ring_header(const std::string& line);

}  // namespace trimcx
