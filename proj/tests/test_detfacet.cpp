#include <gtest/gtest.h>

#include <functional>

#include "trimcx/detfacet.hpp"

using namespace trimcx;

namespace {

mpz_class multinomial(const std::vector<int>& alpha) {
  int l = 0;
  for (int a : alpha) l += a;
  mpz_class v = 1;
  for (int k = 2; k <= l; ++k) v *= k;
  for (int a : alpha)
    for (int k = 2; k <= a; ++k) v /= k;
  return v;
}

// All families of r pairwise disjoint n-subsets of [m], up to order.
void disjoint_families(int n, int m, int r, std::function<void(const std::vector<IndexSet>&)> fn) {
  auto all = subsets_lex(m, n);
  std::vector<IndexSet> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == r) {
      fn(cur);
      return;
    }
    for (std::size_t k = start; k < all.size(); ++k) {
      bool ok = true;
      for (auto& s : cur) ok = ok && disjoint(s, all[k]);
      if (!ok) continue;
      cur.push_back(all[k]);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

ScalarMatrix vstack(const std::vector<ScalarMatrix>& parts) {
  std::size_t rows = 0, cols = parts.empty() ? 0 : parts[0].cols();
  for (auto& p : parts) rows += p.rows();
  ScalarMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (auto& p : parts) {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out(r0 + i, j) = p(i, j);
    r0 += p.rows();
  }
  return out;
}

}  // namespace

TEST(LSet, PaperExamples) {
  auto a = l_set({2, 0, 1}, {1, 2, 3});
  std::vector<LMatching> want{{{{3, 1}, {1, 2}, {1, 3}}}, {{{1, 1}, {3, 2}, {1, 3}}}, {{{1, 1}, {1, 2}, {3, 3}}}};
  ASSERT_EQ(a.size(), 3u);
  for (auto& w : want) EXPECT_NE(std::find(a.begin(), a.end(), w), a.end());
  EXPECT_EQ(l_set({2, 0, 2}, {1, 2, 3, 4}).size(), 6u);
  EXPECT_TRUE(l_set({1, 1}, {1, 2, 3}).empty());
  EXPECT_THROW(l_set({-1, 2}, {1}), std::invalid_argument);
}

TEST(LSet, MultinomialCounts) {
  for (int n = 1; n <= 4; ++n)
    for (int l = 0; l <= 5; ++l) {
      IndexSet tau;
      for (int k = 1; k <= l; ++k) tau.push_back(2 * k);
      for (const auto& alpha : compositions_desc(n, l)) {
        auto ls = l_set(alpha, tau);
        EXPECT_EQ(mpz_class(ls.size()), multinomial(alpha));
        for (const auto& L : ls) {
          std::vector<int> used(n, 0);
          for (std::size_t k = 0; k < L.pairs.size(); ++k) {
            EXPECT_EQ(L.pairs[k].second, tau[k]);
            ++used[L.pairs[k].first - 1];
          }
          EXPECT_EQ(used, alpha);
        }
      }
    }
}

TEST(LSet, UniqueExtension) {
  // Every L' in L(alpha - e_i, tau minus tau_k) sits inside exactly one L in L(alpha, tau).
  IndexSet tau{1, 3, 4, 6};
  for (const auto& alpha : compositions_desc(3, 4)) {
    auto big = l_set(alpha, tau);
    for (int i = 0; i < 3; ++i) {
      if (alpha[i] == 0) continue;
      auto ai = alpha;
      --ai[i];
      for (std::size_t k = 0; k < tau.size(); ++k) {
        IndexSet rest = set_difference(tau, {tau[k]});
        for (const auto& Lp : l_set(ai, rest)) {
          int hits = 0;
          for (const auto& L : big) {
            // L restricted to rest equals Lp and tau_k goes to row i+1
            bool ok = true;
            std::size_t p = 0;
            for (const auto& pr : L.pairs) {
              if (pr.second == tau[k]) {
                ok = ok && pr.first == i + 1;
              } else {
                ok = ok && pr == Lp.pairs[p++];
              }
            }
            hits += ok;
          }
          EXPECT_EQ(hits, 1);
        }
      }
    }
  }
}

TEST(ExplicitQ, TwoByFourFirstMap) {
  auto q = explicit_q(2, 4, {{1, 2}}, 1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].rows(), 4u);
  EXPECT_EQ(q[0].cols(), 8u);
  EXPECT_EQ(rank_over_field(q[0], Field::rationals()), 4u);
  // Column g_i* (x) f_{j} ^ f_sigma hits e_{ij} only when T contains sigma.
  auto basis = en_basis(2, 4, 1);
  for (std::size_t c = 0; c < basis.size(); ++c) {
    bool has_sigma = basis[c].T[0] == 1 && basis[c].T[1] == 2;
    int nz = 0;
    for (std::size_t r = 0; r < 4; ++r) nz += q[0](r, c) != 0;
    EXPECT_EQ(nz, has_sigma ? 1 : 0);
  }
}

TEST(ExplicitQ, VanishingAndStacking) {
  for (int l = 3; l <= 5; ++l) EXPECT_TRUE(explicit_q(2, 4, {{1, 2}}, l)[0].is_zero());
  auto q = explicit_q(2, 4, {{1, 2}, {3, 4}}, 1);
  EXPECT_EQ(rank_over_field(vstack(q), Field::rationals()), 8u);
  EXPECT_THROW(explicit_q(2, 4, {{1, 2}, {2, 3}}, 1), std::invalid_argument);
  EXPECT_THROW(explicit_q(2, 4, {{1, 2, 3}}, 1), std::invalid_argument);
  EXPECT_THROW(explicit_q(2, 4, {{1, 2}}, 0), std::invalid_argument);
}

TEST(ExplicitQ, CommutingSquares) {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{1, 3}, {2, 4}, {2, 5}, {3, 5}, {2, 6}, {3, 6}}) {
    auto gm = generic_matrix(n, m, Field::prime(kDefaultPrime));
    auto en = eagon_northcott(gm);
    for (int r = 1; r * n <= m && r <= 3; ++r) {
      std::vector<IndexSet> sig;
      for (int i = 0; i < r; ++i) {
        IndexSet s;
        for (int k = 1; k <= n; ++k) s.push_back(i * n + k);
        sig.push_back(s);
      }
      std::vector<std::size_t> cols;
      std::vector<std::vector<Polynomial>> a;
      for (auto& s : sig) {
        cols.push_back(subset_rank(s, m));
        a.push_back(minor_a_generators(gm, s));
      }
      auto setup = make_trim_setup(en, cols, a);
      EXPECT_TRUE(verify_lifts(setup, explicit_lifts(gm, sig))) << n << " " << m << " r=" << r;
    }
  }
}

TEST(RankFormula, Values) {
  EXPECT_EQ(rank_formula(2, 4, 1, 1), 4);
  EXPECT_EQ(rank_formula(2, 4, 2, 2), 3);
  EXPECT_EQ(rank_formula(2, 4, 2, 1), 8);
  for (int n = 1; n <= 3; ++n)
    for (int m = n; m <= 7; ++m) EXPECT_EQ(rank_formula(n, m, 1, m - n + 2), 0);
}

TEST(RankFormula, BruteForceCountMatches) {
  // Count basis elements g^(alpha) (x) f_T with some sigma_j in T, times nothing:
  // the stacked rank equals C(n+l-1,l) times the number of T containing a sigma.
  for (int n = 1; n <= 3; ++n)
    for (int m = n; m <= 7; ++m)
      for (int r = 1; r * n <= m && r <= 3; ++r) {
        std::vector<IndexSet> sig;
        for (int i = 0; i < r; ++i) {
          IndexSet s;
          for (int k = 1; k <= n; ++k) s.push_back(i * n + k);
          sig.push_back(s);
        }
        for (int l = 1; l <= m - n; ++l) {
          long hits = 0;
          for (const auto& T : subsets_lex(m, n + l)) {
            bool any = false;
            for (auto& s : sig) any = any || std::includes(T.begin(), T.end(), s.begin(), s.end());
            hits += any;
          }
          EXPECT_EQ(rank_formula(n, m, r, l), binom(n + l - 1, l) * hits) << n << m << r << l;
        }
      }
}

TEST(RankFormula, StackedExplicitRankSmall) {
  for (int n = 1; n <= 2; ++n)
    for (int m = n; m <= 6; ++m)
      for (int r = 1; r * n <= m; ++r) {
        disjoint_families(n, m, r, [&](const std::vector<IndexSet>& sig) {
          for (int l = 1; l <= n * (m - n); ++l) {
            auto q = explicit_q(n, m, sig, l);
            EXPECT_EQ(mpz_class(rank_over_field(vstack(q), Field::prime(kDefaultPrime))), rank_formula(n, m, r, l));
          }
        });
      }
}

TEST(ClosedForms, Pfaffian) {
  BettiTable five{{{0, 0}, 1}, {{1, 2}, 4}, {{2, 3}, 1}, {{2, 4}, 6}, {{3, 5}, 5}, {{4, 6}, 1}};
  EXPECT_EQ(betti_pfaffian_trim(5), five);
  auto seven = betti_pfaffian_trim(7);
  EXPECT_EQ(seven.at({1, 3}), 6);
  EXPECT_EQ(seven.at({2, 4}), 1);
  EXPECT_EQ(seven.at({2, 5}), 15);
  EXPECT_EQ(seven.at({6, 9}), 1);
  EXPECT_EQ(seven.at({3, 7}), 1);
  EXPECT_EQ(betti_totals(betti_pfaffian_trim(9))[2], 29);
  auto big = betti_pfaffian_trim(101);
  for (int k = 2; k <= 100; ++k) EXPECT_EQ(big.at({k, k + 50}), binom(100, k));
  EXPECT_THROW(betti_pfaffian_trim(6), std::invalid_argument);
  EXPECT_THROW(betti_pfaffian_trim(3), std::invalid_argument);
}

TEST(ClosedForms, SingleMinor) {
  BettiTable t23{{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}};
  EXPECT_EQ(betti_single_minor(2, 3), t23);
  EXPECT_EQ(betti_single_minor(2, 4).at({1, 2}), 5);
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 4}, {3, 5}, {2, 6}, {3, 6}}) {
    auto t = betti_single_minor(n, m);
    int top = n * (m - n);
    EXPECT_EQ(t.at({top, n + top}), 1);
    EXPECT_EQ(t.at({top - 1, n + top - 1}), top);
  }
  EXPECT_THROW(betti_single_minor(3, 2), std::invalid_argument);
}

TEST(ClosedForms, MultiMinor) {
  auto t = betti_multi_minor(2, 4, {{1, 2}, {3, 4}});
  EXPECT_EQ(t.at({1, 2}), 4);
  EXPECT_EQ(t.count({1, 3}), 0u);
  EXPECT_EQ(t.at({2, 4}), 9);
  for (int m = 4; m <= 7; ++m)
    EXPECT_EQ(betti_multi_minor(2, m, {{1, 2}}), betti_single_minor(2, m));
  for (int r = 1; r <= 3; ++r) {
    std::vector<IndexSet> sig;
    for (int i = 0; i < r; ++i) sig.push_back({2 * i + 1, 2 * i + 2});
    auto tt = betti_multi_minor(2, 6, sig);
    EXPECT_EQ(tt.at({8, 10}), r);
  }
  EXPECT_THROW(betti_multi_minor(2, 4, {{1, 2}, {2, 3}}), std::invalid_argument);
  EXPECT_THROW(betti_multi_minor(2, 4, {}), std::invalid_argument);
}

TEST(Clutters, ParseSpec) {
  auto s = parse_clutter_spec("n=2 m=4 remove=1,2;3,4");
  EXPECT_EQ(s.n, 2);
  EXPECT_EQ(s.m, 4);
  EXPECT_EQ(s.removed, (std::vector<IndexSet>{{1, 2}, {3, 4}}));
  EXPECT_TRUE(parse_clutter_spec("m=3 n=1").removed.empty());
  EXPECT_THROW(parse_clutter_spec("n=2"), std::invalid_argument);
  EXPECT_THROW(parse_clutter_spec("n=2 m=4 k=1"), std::invalid_argument);
  EXPECT_THROW(parse_clutter_spec("n2 m=4"), std::invalid_argument);
  EXPECT_THROW(clutter_removed(2, 4, {{1, 2, 3}}), std::invalid_argument);
}

TEST(FVector, Enumeration) {
  EXPECT_EQ(clique_fvector_enumerate(clutter_removed(2, 4, {{1, 2}})), (std::vector<mpz_class>{4, 5, 2, 0}));
  EXPECT_EQ(clique_fvector_enumerate(clutter_removed(2, 4, {{1, 2}, {3, 4}})), (std::vector<mpz_class>{4, 4, 0, 0}));
  auto full = clique_fvector_enumerate(clutter_removed(3, 6, {}));
  for (int k = 0; k < 6; ++k) EXPECT_EQ(full[k], binom(6, k + 1));
  EXPECT_THROW(clique_fvector_enumerate(clutter_removed(1, 21, {})), SizeGuardError);
}

TEST(FVector, Formulas) {
  EXPECT_EQ(clique_fvector_formula(2, 4, 1, IndexConvention::as_printed)[0], 4);
  EXPECT_EQ(clique_fvector_formula(2, 4, 1, IndexConvention::shifted)[0], 5);
  EXPECT_EQ(clique_fvector_formula(2, 4, 2, IndexConvention::shifted)[0], 4);
  auto zero = clique_fvector_formula(2, 5, 0, IndexConvention::as_printed);
  EXPECT_EQ(zero, clique_fvector_formula(2, 5, 0, IndexConvention::shifted));
  for (int l = 1; l <= 4; ++l) EXPECT_EQ(zero[l - 1], binom(5, l + 1));
}

TEST(FVector, LinearStrandMatchesBetti) {
  // C(n+l-2, l-1) f_{n+l-2} equals the row n-1 entry at column l.
  for (int n = 1; n <= 3; ++n)
    for (int m = n + 1; m <= 8; ++m)
      for (int r = 1; r * n <= m && r <= 3; ++r) {
        std::vector<IndexSet> sig;
        for (int i = 0; i < r; ++i) {
          IndexSet s;
          for (int k = 1; k <= n; ++k) s.push_back(i * n + k);
          sig.push_back(s);
        }
        auto f = clique_fvector_enumerate(clutter_removed(n, m, sig));
        auto t = betti_multi_minor(n, m, sig);
        for (int l = 1; l <= m - n + 1; ++l) {
          mpz_class want = binom(n + l - 2, l - 1) * f[n + l - 2];
          auto it = t.find({l, n - 1 + l});
          mpz_class got = it == t.end() ? mpz_class(0) : it->second;
          EXPECT_EQ(got, want) << n << m << r << l;
        }
      }
}
