#pragma once

// Koszul complexes, Eagon-Northcott complexes and Buchsbaum-Eisenbud
// pfaffian resolutions, with the pfaffian and minor constructors they use.

#include <iosfwd>
#include <string>
#include <vector>

#include "trimcx/chain.hpp"
#include "trimcx/combinat.hpp"

namespace trimcx {

/// Koszul complex on homogeneous generators; F_l has the l-subsets of
/// generators in lex order as basis and d(e_I) = sum_s (-1)^(s+1) g_{i_s} e_{I minus i_s}.
/// Generator degrees are shifted by `twist`.
GradedFreeComplex koszul_complex(const std::vector<Polynomial>& gens, int twist = 0);

/// Variable name for entry (i,j), 1-based: x12 for small sizes, x_1_12 otherwise.
std::string matrix_variable(int i, int j, int max_index);

struct SkewMatrix {
  PolyMatrix entries;
  std::size_t size() const { return entries.rows(); }
};

/// Validates skew-symmetry and a zero diagonal.
SkewMatrix make_skew(PolyMatrix m);
/// Generic n x n skew matrix over k[x_ij | i < j].
SkewMatrix generic_skew(int n, const Field& field);
/// Reads the `ring ... over ...` / `skew n` / rows text format.
SkewMatrix read_skew(std::istream& in);

/// Pfaffian of an even skew matrix by expansion along the first row.
Polynomial pfaffian_even(const PolyMatrix& m);
/// Pf_j: pfaffian after deleting row and column j (1-based). n must be odd.
Polynomial pfaffian(const SkewMatrix& x, int j);
/// 0 -> R -> R^n -> R^n -> R with d1 = (Pf_1, -Pf_2, ...), d2 = X, d3 = d1^T.
GradedFreeComplex pfaffian_resolution(const SkewMatrix& x);

struct GenericMatrixSpec {
  int rows = 0, cols = 0;
  PolyMatrix entries;
};

/// Generic n x m matrix over k[x_ij], variables in row-major order.
GenericMatrixSpec generic_matrix(int n, int m, const Field& field);
Polynomial determinant(const PolyMatrix& m);
/// Delta_tau: determinant of the columns tau (1-based, increasing).
Polynomial minor(const GenericMatrixSpec& m, const IndexSet& tau);
/// Basis of F_{l+1}: alpha in descending lex order outside, T in lex order inside.
struct ENBasisElement {
  std::vector<int> alpha;
  IndexSet T;
};
std::vector<ENBasisElement> en_basis(int n, int m, int ell);
std::size_t en_index(int n, int m, const std::vector<int>& alpha, const IndexSet& T);
GradedFreeComplex eagon_northcott(const GenericMatrixSpec& m);

}  // namespace trimcx
