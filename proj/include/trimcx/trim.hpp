#pragma once

// Trimming complexes: remove (or trim) marked generators of an ideal whose
// resolution is known, by gluing in resolutions of auxiliary ideals a_i.

#include <optional>
#include <stdexcept>
#include <vector>

#include "trimcx/chain.hpp"

namespace trimcx {

class LiftError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrimSetup {
  GradedFreeComplex f;                       // resolves R/I
  std::vector<std::size_t> summands;         // 0-based columns of d_1 marked e_0^i
  std::vector<std::vector<Polynomial>> a;    // generators of a_i
  std::vector<GradedFreeComplex> g;          // resolutions of R/a_i, untwisted

  std::size_t t() const { return summands.size(); }
  /// deg d_1(e_0^i), the twist carried by G^i in the cone.
  int twist(std::size_t i) const;
  std::vector<std::size_t> kept_columns() const;  // F_1' basis
};

struct D2Decomposition {
  PolyMatrix d2_prime;            // d_2 with marked rows zeroed
  std::vector<PolyMatrix> d0;     // 1 x rank F_2 rows, one per summand
};

D2Decomposition decompose_d2(const GradedFreeComplex& f, const std::vector<std::size_t>& summands);

/// Nonzero entries of a d_0 row, made monic, deduplicated and pruned to a
/// minimal generating set. A unit entry gives the unit ideal.
std::vector<Polynomial> derive_ideal_a(const PolyMatrix& d0_row);

/// Builds a setup, deriving a_i from d_0 unless overrides are given, and
/// resolving each a_i by the Koszul complex on its generators.
TrimSetup make_trim_setup(const GradedFreeComplex& f, const std::vector<std::size_t>& summands,
                          const std::vector<std::vector<Polynomial>>& a_override = {});

/// q[i][k-1] : F_{k+1} -> G^i_k for k = 1 .. length(F) - 1.
struct LiftFamily {
  std::vector<std::vector<PolyMatrix>> q;
};

LiftFamily lift_q(const TrimSetup& setup, const LiftOptions& opts = {});
/// m_1 q_1 = d_0' and m_k q_k = q_{k-1} d_{k+1}, exactly, for all summands.
bool verify_lifts(const TrimSetup& setup, const LiftFamily& lifts);

GradedFreeComplex trimming_complex(const TrimSetup& setup, const LiftFamily& lifts);

/// Graded Betti numbers from the rank formula; needs F and every G^i minimal.
BettiTable trimmed_betti(const TrimSetup& setup, const LiftFamily& lifts);

/// Generators of J = K' + sum a_i K_0^i, computed directly from d_1.
std::vector<Polynomial> trimmed_ideal_generators(const TrimSetup& setup);
/// Generators of I with one generator removed.
std::vector<Polynomial> ideal_without(const GradedFreeComplex& f, std::size_t column);

/// Entries of the first differential of a complex.
std::vector<Polynomial> h0_generators(const GradedFreeComplex& c);

}  // namespace trimcx
