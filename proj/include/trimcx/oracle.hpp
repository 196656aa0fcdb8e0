#pragma once

// Brute-force ground truth for small instances: degree slices of ideals,
// truncated membership and equality, colon slices, and Betti numbers from
// Koszul homology. Plain dense linear algebra, no Groebner bases.

#include <cstddef>
#include <vector>

#include "trimcx/chain.hpp"
#include "trimcx/combinat.hpp"

namespace trimcx {

using IdealBasis = std::vector<Polynomial>;

/// Columns of `basis` are coefficient vectors over `monomials`.
struct DegreeSlice {
  int degree = 0;
  std::vector<Monomial> monomials;  // all of R_d, grevlex-descending
  ScalarMatrix basis;
  std::size_t dim() const { return basis.cols(); }
  Polynomial column(const RingPtr& ring, std::size_t j) const;
};

DegreeSlice ideal_slice(const IdealBasis& gens, int d);
/// Membership of a homogeneous polynomial.
bool ideal_contains(const IdealBasis& gens, const Polynomial& p);
/// The ideals agree in every degree up to dmax (checked through mutual
/// membership of the generators of degree <= dmax).
bool ideal_equal_upto(const IdealBasis& a, const IdealBasis& b, int dmax);

/// {r in R_d : r * k0 in (kprime)}.
DegreeSlice colon_slice(const IdealBasis& kprime, const Polynomial& k0, int d);

struct ColonReport {
  bool contained = true;  // every computed slice lies in a
  int checked_through = -1;  // largest d checked
  bool complete = true;  // false if the work budget stopped early
};
/// Checks (kprime : k0)_d inside a for d + deg k0 <= dmax, stopping when
/// the monomial work budget runs out.
ColonReport colon_contained_upto(const IdealBasis& kprime, const Polynomial& k0, const IdealBasis& a, int dmax,
                                 std::size_t budget = 20'000'000);

inline constexpr std::size_t kKoszulMaxVariables = 10;
inline constexpr int kKoszulMaxDegree = 12;

/// beta_{i,j}(R/J) for i <= imax, j <= dmax from Koszul homology slices.
/// Throws SizeGuardError beyond kKoszulMaxVariables or kKoszulMaxDegree.
BettiTable koszul_betti(const IdealBasis& gens, int imax, int dmax);

}  // namespace trimcx
