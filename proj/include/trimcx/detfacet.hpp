#pragma once

// Closed forms for trimmed pfaffian and maximal-minor ideals: L-sets, the
// explicit q-maps for determinantal setups, rank formulas, Betti tables,
// clutters and f-vectors of their clique complexes.

#include <string_view>
#include <utility>
#include <vector>

#include "trimcx/builders.hpp"
#include "trimcx/trim.hpp"

namespace trimcx {

/// Pairs (row, column) ordered by column; the columns run through tau.
struct LMatching {
  std::vector<std::pair<int, int>> pairs;
  bool operator==(const LMatching&) const = default;
};

/// All matchings of tau with rows such that row i is used alpha_i times.
/// Empty unless |alpha| = |tau|.
std::vector<LMatching> l_set(const std::vector<int>& alpha, const IndexSet& tau);

/// Throws unless every sigma is an n-subset of [m] and they are pairwise disjoint.
void check_sigmas(int n, int m, const std::vector<IndexSet>& sigmas);

/// x_{ik} for i = 1..n (outer) and k not in sigma (inner); the generators of
/// the ideal a for the minor Delta_sigma, in the order used for U.
std::vector<Polynomial> minor_a_generators(const GenericMatrixSpec& m, const IndexSet& sigma);

/// Constant matrix of q_ell for each sigma, from the Eagon-Northcott module
/// F_{ell+1} (basis as in en_basis) to the exterior power of U, basis the
/// ell-subsets of U in lex order. Zero columns when ell > m - n.
std::vector<ScalarMatrix> explicit_q(int n, int m, const std::vector<IndexSet>& sigmas, int ell);

/// The explicit maps packaged as a lift family for make_trim_setup(EN, sigmas)
/// with a_i = minor_a_generators(sigma_i).
LiftFamily explicit_lifts(const GenericMatrixSpec& m, const std::vector<IndexSet>& sigmas);

/// C(n+l-1, l) * sum_{i=1}^r (-1)^(i+1) C(r,i) C(m-in, l-(i-1)n).
mpz_class rank_formula(int n, int m, int r, int ell);

BettiTable betti_pfaffian_trim(int n);
BettiTable betti_single_minor(int n, int m);
BettiTable betti_multi_minor(int n, int m, const std::vector<IndexSet>& sigmas);

struct Clutter {
  int n = 0, m = 0;
  std::vector<IndexSet> circuits;
};

/// All n-subsets of [m] with the given sets removed.
Clutter clutter_removed(int n, int m, const std::vector<IndexSet>& removed);

struct ClutterSpec {
  int n = 0, m = 0;
  std::vector<IndexSet> removed;
};
/// "n=2 m=4 remove=1,2;3,4" (remove may be empty or omitted).
ClutterSpec parse_clutter_spec(std::string_view text);
/// "1,2;3,4" into index sets.
std::vector<IndexSet> parse_index_sets(std::string_view text);

inline constexpr int kMaxEnumerationVertices = 20;

/// f_0 .. f_{m-1} of the clique complex: sets of size n are faces iff they
/// are circuits, larger sets iff all their facets are faces, smaller sets iff
/// they lie in some circuit.
std::vector<mpz_class> clique_fvector_enumerate(const Clutter& c);

enum class IndexConvention { as_printed, shifted };

/// Values for l = 1 .. m-n+1, which are f_{n+l-2}, i.e. f_{n-1} .. f_{m-1}.
std::vector<mpz_class> clique_fvector_formula(int n, int m, int r, IndexConvention conv);

}  // namespace trimcx
