#include "trimcx/combinat.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace trimcx {

mpz_class binom(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

long binom_small(long a, long b) {
  mpz_class r = binom(a, b);
  if (!r.fits_slong_p()) throw std::overflow_error("binomial coefficient too large");
  return r.get_si();
}

bool is_index_set(const IndexSet& s, int bound) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > bound) return false;
    if (i > 0 && s[i] <= s[i - 1]) return false;
  }
  return true;
}

void check_index_set(const IndexSet& s, int bound, std::string_view what) {
  if (!is_index_set(s, bound))
    throw std::invalid_argument(std::string(what) + " (" + format_index_list(s) +
                                ") must be strictly increasing within 1.." + std::to_string(bound));
}

std::vector<IndexSet> subsets_lex(int m, int k) {
  std::vector<IndexSet> out;
  if (k < 0 || k > m) return out;
  IndexSet cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  for (;;) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == m - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::size_t subset_rank(const IndexSet& s, int m) {
  // Count subsets that precede s lexicographically.
  std::size_t rank = 0;
  int k = static_cast<int>(s.size());
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < s[i]; ++v) rank += binom_small(m - v, k - i - 1);
    prev = s[i];
  }
  return rank;
}

int sort_sign(std::vector<int>& seq) {
  int sign = 1;
  // Insertion sort counting transpositions; sequences here are short.
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
      if (seq[j - 1] == seq[j]) return 0;
      std::swap(seq[j - 1], seq[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1]) return 0;
  return sign;
}

MergeResult merge_sign(const IndexSet& a, const IndexSet& b) {
  std::vector<int> seq(a);
  seq.insert(seq.end(), b.begin(), b.end());
  int s = sort_sign(seq);
  return {seq, s};
}

std::vector<std::vector<int>> compositions_desc(int n, int total) {
  std::vector<std::vector<int>> out;
  if (n <= 0 || total < 0) {
    if (n == 0 && total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, total);
  return out;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const IndexSet& a, const IndexSet& b) {
  for (int x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return false;
  return true;
}

IndexSet parse_index_list(std::string_view text) {
  IndexSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad index list '" + std::string(text) + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string format_index_list(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

}  // namespace trimcx
