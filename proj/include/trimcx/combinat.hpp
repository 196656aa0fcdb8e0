#pragma once

// Index sets, binomials and the basis enumerations shared by the builders
// and the closed-form layer. Index sets are 1-based and strictly increasing.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trimcx {

/// Raised when an input exceeds a brute-force size limit.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using IndexSet = std::vector<int>;

/// C(a, b) with the convention C(a, b) = 0 for b < 0, b > a or a < 0.
mpz_class binom(long a, long b);
long binom_small(long a, long b);  // throws on overflow past 2^62

bool is_index_set(const IndexSet& s, int bound);
/// Throws std::invalid_argument unless strictly increasing with entries in [1, bound].
void check_index_set(const IndexSet& s, int bound, std::string_view what = "index set");

/// All k-subsets of {1..m} in lexicographic order.
std::vector<IndexSet> subsets_lex(int m, int k);

/// Rank of a k-subset of {1..m} in lexicographic order.
std::size_t subset_rank(const IndexSet& s, int m);

/// Sorted union of disjoint sets together with the sign of the permutation
/// taking the concatenation a ++ b into sorted order. Returns sign 0 when
/// the sets intersect.
struct MergeResult {
  IndexSet merged;
  int sign;
};
MergeResult merge_sign(const IndexSet& a, const IndexSet& b);

/// Sign of the permutation sorting the sequence; 0 if it has repeats.
int sort_sign(std::vector<int>& seq);

/// All exponent vectors of length n summing to total, in descending lex
/// order, so (total,0,...,0) comes first.
std::vector<std::vector<int>> compositions_desc(int n, int total);

IndexSet set_difference(const IndexSet& a, const IndexSet& b);
bool disjoint(const IndexSet& a, const IndexSet& b);

/// Parses "1,2,3" into an index set (not validated against a bound).
IndexSet parse_index_list(std::string_view text);
std::string format_index_list(const IndexSet& s);

}  // namespace trimcx
