#include <gtest/gtest.h>

#include <sstream>

#include "trimcx/builders.hpp"
#include "trimcx/detfacet.hpp"
#include "trimcx/oracle.hpp"
#include "trimcx/trim.hpp"

using namespace trimcx;

namespace {

const char* kGolden = R"(ring x,y,z over QQ
skew 5
0,0,0,-x^2,-z^2
0,0,-x^2,-z^2,-y^2
0,x^2,0,-y^2,0
x^2,z^2,y^2,0,0
z^2,y^2,0,0,0
)";

GradedFreeComplex golden() {
  std::istringstream in(kGolden);
  return pfaffian_resolution(read_skew(in));
}

std::vector<Polynomial> gens(const RingPtr& r, std::initializer_list<const char*> ss) {
  std::vector<Polynomial> out;
  for (auto s : ss) out.push_back(Polynomial::parse(s, r));
  return out;
}

TrimSetup golden_setup(std::vector<std::size_t> summands = {0, 1}) {
  auto f = golden();
  auto a = gens(f.ring(), {"x", "y", "z"});
  return make_trim_setup(f, summands, std::vector<std::vector<Polynomial>>(summands.size(), a));
}

bool all_seeds_ok(const GradedFreeComplex& c) {
  return verify_complex(c) && rank_acyclicity_evidence(c, 101) && rank_acyclicity_evidence(c, 202);
}

}  // namespace

TEST(Decompose, EagonNorthcottTwoByThree) {
  auto en = eagon_northcott(generic_matrix(2, 3, Field::prime(kDefaultPrime)));
  auto r = en.ring();
  auto dec = decompose_d2(en, {subset_rank({1, 2}, 3)});
  ASSERT_EQ(dec.d0.size(), 1u);
  const auto& row = dec.d0[0];
  ASSERT_EQ(row.cols(), 2u);
  // Up to sign the entries are x13 and x23.
  auto x13 = Polynomial::parse("x13", r), x23 = Polynomial::parse("x23", r);
  EXPECT_TRUE(row(0, 0) == x13 || row(0, 0) == -x13);
  EXPECT_TRUE(row(0, 1) == x23 || row(0, 1) == -x23);
  auto a = derive_ideal_a(row);
  EXPECT_EQ(a, (std::vector<Polynomial>{x13, x23}));
}

TEST(Decompose, ReconstructsD2) {
  auto f = golden();
  for (std::vector<std::size_t> s : {std::vector<std::size_t>{}, {0}, {0, 1}, {2, 4}}) {
    auto dec = decompose_d2(f, s);
    PolyMatrix sum = dec.d2_prime;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t c = 0; c < sum.cols(); ++c) sum(s[i], c) += dec.d0[i](0, c);
    EXPECT_EQ(sum, f.differential(2));
  }
  EXPECT_EQ(decompose_d2(f, {}).d2_prime, f.differential(2));
}

TEST(Decompose, GoldenRowsOfX) {
  auto f = golden();
  auto dec = decompose_d2(f, {0, 1});
  EXPECT_EQ(dec.d0[0], f.differential(2).select_rows({0}));
  EXPECT_EQ(dec.d0[1], f.differential(2).select_rows({1}));
  for (std::size_t c = 0; c < 5; ++c) {
    EXPECT_TRUE(dec.d2_prime(0, c).is_zero());
    EXPECT_TRUE(dec.d2_prime(1, c).is_zero());
  }
}

TEST(Decompose, BadSummands) {
  auto f = golden();
  EXPECT_THROW(decompose_d2(f, {5}), std::invalid_argument);
  EXPECT_THROW(decompose_d2(f, {1, 1}), std::invalid_argument);
  EXPECT_THROW(make_trim_setup(f, {0}, {{}}), std::invalid_argument);
  EXPECT_THROW(make_trim_setup(f, {0, 1}, {gens(f.ring(), {"x"})}), std::invalid_argument);
}

TEST(DeriveIdeal, Cases) {
  auto f = golden();
  auto r = f.ring();
  EXPECT_EQ(derive_ideal_a(decompose_d2(f, {0}).d0[0]), gens(r, {"x^2", "z^2"}));

  auto en = eagon_northcott(generic_matrix(2, 4, Field::prime(kDefaultPrime)));
  auto a = derive_ideal_a(decompose_d2(en, {subset_rank({1, 2}, 4)}).d0[0]);
  EXPECT_EQ(a.size(), 4u);
  for (const char* v : {"x13", "x14", "x23", "x24"})
    EXPECT_NE(std::find(a.begin(), a.end(), Polynomial::parse(v, en.ring())), a.end()) << v;

  PolyMatrix row(r, 1, 3);
  row(0, 0) = Polynomial::parse("x", r);
  row(0, 1) = Polynomial::parse("-x", r);
  row(0, 2) = Polynomial::parse("y", r);
  EXPECT_EQ(derive_ideal_a(row), gens(r, {"x", "y"}));

  // x*y is redundant next to x.
  row(0, 1) = Polynomial::parse("x*y", r);
  EXPECT_EQ(derive_ideal_a(row), gens(r, {"x", "y"}));

  row(0, 0) = Polynomial::parse("3", r);
  EXPECT_EQ(derive_ideal_a(row), gens(r, {"1"}));

  EXPECT_THROW(derive_ideal_a(PolyMatrix(r, 1, 3)), std::invalid_argument);
}

TEST(Lifts, Golden) {
  auto s = golden_setup();
  auto lifts = lift_q(s);
  EXPECT_TRUE(verify_lifts(s, lifts));
  ASSERT_EQ(lifts.q.size(), 2u);
  ASSERT_EQ(lifts.q[0].size(), 2u);  // q_1 and q_2
  // The printed q^1_1 also satisfies the identity.
  auto r = s.f.ring();
  auto printed = lifts;
  PolyMatrix q11(r, 3, 5);
  q11(0, 3) = Polynomial::parse("-x", r);
  q11(2, 4) = Polynomial::parse("-z", r);
  printed.q[0][0] = q11;
  PolyMatrix m1 = s.g[0].differential(1);
  EXPECT_EQ(m1 * q11, decompose_d2(s.f, {0}).d0[0]);
  // A wrong matrix breaks it.
  printed.q[0][0](0, 3) = Polynomial::parse("x", r);
  EXPECT_FALSE(verify_lifts(s, printed));
  EXPECT_THROW(trimming_complex(s, printed), LiftError);
}

TEST(Lifts, ViolatedHypothesisThrows) {
  auto f = golden();
  // Row 1 of X is (0,0,0,-x^2,-z^2); z^2 is not in (x).
  auto s = make_trim_setup(f, {0}, {gens(f.ring(), {"x"})});
  EXPECT_THROW(lift_q(s), LiftError);
}

TEST(Lifts, ZeroBeyondLength) {
  // G = Koszul on (x13,x23) has length 2 while EN(2,3) has length 2, so the
  // only map is q_1; with a longer G the tail maps must vanish.
  auto en = eagon_northcott(generic_matrix(2, 3, Field::prime(kDefaultPrime)));
  auto s = make_trim_setup(en, {0});
  auto l = lift_q(s);
  ASSERT_EQ(l.q[0].size(), en.length() - 1);
  EXPECT_TRUE(verify_lifts(s, l));

  auto f = golden();
  auto s3 = golden_setup({0});
  auto l3 = lift_q(s3);
  // F_3 -> G_2 then F_4 = 0: only q_1, q_2.
  EXPECT_EQ(l3.q[0].size(), f.length() - 1);
}

TEST(Lifts, EagonNorthcottFirstRank) {
  auto en = eagon_northcott(generic_matrix(2, 4, Field::prime(kDefaultPrime)));
  auto s = make_trim_setup(en, {subset_rank({1, 2}, 4)});
  for (std::uint64_t seed : {1u, 2u}) {
    auto l = lift_q(s, {seed});
    EXPECT_TRUE(verify_lifts(s, l));
    EXPECT_EQ(rank_over_field(l.q[0][0].constant_part(), en.ring()->field()), 4u);
  }
}

TEST(TrimmingComplex, Golden) {
  auto s = golden_setup();
  auto l = lift_q(s);
  auto c = trimming_complex(s, l);
  EXPECT_TRUE(all_seeds_ok(c));
  EXPECT_TRUE(is_minimal(c));
  BettiTable want{{{0, 0}, 1}, {{1, 4}, 3}, {{1, 5}, 6}, {{2, 6}, 11}, {{3, 7}, 2}, {{3, 10}, 1}};
  EXPECT_EQ(betti_from_minimal(c), want);
  EXPECT_EQ(trimmed_betti(s, l), want);
  auto tot = betti_totals(want);
  EXPECT_EQ(tot, (std::vector<mpz_class>{1, 9, 11, 3}));
  // mu(J) = 5 - 2 + 3 + 3
  EXPECT_EQ(c.module(1).rank(), 9u);
  EXPECT_EQ(rank_over_field(l.q[0][0].constant_part(), s.f.ring()->field()), 0u);
}

TEST(TrimmingComplex, GoldenSingleSummandHasRightH0) {
  auto s = golden_setup({0});
  auto c = trimming_complex(s, lift_q(s));
  EXPECT_TRUE(all_seeds_ok(c));
  EXPECT_TRUE(ideal_equal_upto(h0_generators(c), trimmed_ideal_generators(s), 10));
  // K' + a K_0 with the literal generators
  auto r = s.f.ring();
  auto j = ideal_without(s.f, 0);
  for (const char* v : {"x", "y", "z"}) j.push_back(Polynomial::parse(v, r) * Polynomial::parse("y^4", r));
  EXPECT_TRUE(ideal_equal_upto(h0_generators(c), j, 10));
}

TEST(TrimmingComplex, UnitIdealChangesNothing) {
  auto f = pfaffian_resolution(generic_skew(5, Field::prime(kDefaultPrime)));
  auto s = make_trim_setup(f, {0}, {gens(f.ring(), {"1"})});
  auto l = lift_q(s);
  auto c = trimming_complex(s, l);
  EXPECT_TRUE(all_seeds_ok(c));
  // The unit of G only shows up multiplied by d_1(e_0) in the bottom row.
  EXPECT_TRUE(is_minimal(c));
  EXPECT_EQ(betti_from_minimal(c), betti_from_minimal(f));
  EXPECT_THROW(trimmed_betti(s, l), ComplexError);
}

TEST(TrimmingComplex, RemoveOneMinorOfTwoByThree) {
  auto en = eagon_northcott(generic_matrix(2, 3, Field::prime(kDefaultPrime)));
  auto s = make_trim_setup(en, {0});
  auto l = lift_q(s);
  auto c = trimming_complex(s, l);
  EXPECT_TRUE(all_seeds_ok(c));
  BettiTable want{{{0, 0}, 1}, {{1, 2}, 2}, {{2, 4}, 1}};
  EXPECT_EQ(trimmed_betti(s, l), want);
  EXPECT_EQ(betti_from_resolution(c), want);
  EXPECT_TRUE(ideal_equal_upto(h0_generators(c), ideal_without(en, 0), 6));
}

TEST(TrimmedBetti, PfaffianFive) {
  auto f = pfaffian_resolution(generic_skew(5, Field::prime(kDefaultPrime)));
  auto s = make_trim_setup(f, {0});
  auto l = lift_q(s);
  BettiTable want{{{0, 0}, 1}, {{1, 2}, 4}, {{2, 3}, 1}, {{2, 4}, 6}, {{3, 5}, 5}, {{4, 6}, 1}};
  EXPECT_EQ(trimmed_betti(s, l), want);
  auto c = trimming_complex(s, l);
  EXPECT_TRUE(all_seeds_ok(c));
  EXPECT_EQ(betti_from_resolution(c), want);
  EXPECT_TRUE(ideal_equal_upto(h0_generators(c), ideal_without(f, 0), 5));
}

TEST(TrimmedBetti, LiftInvariance) {
  auto en = eagon_northcott(generic_matrix(2, 4, Field::prime(kDefaultPrime)));
  auto s = make_trim_setup(en, {subset_rank({1, 2}, 4)});
  auto a = trimmed_betti(s, lift_q(s, {11}));
  auto b = trimmed_betti(s, lift_q(s, {12345}));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, trimmed_betti(s, lift_q(s)));

  auto s3 = golden_setup();
  EXPECT_EQ(trimmed_betti(s3, lift_q(s3, {5})), trimmed_betti(s3, lift_q(s3, {6})));
}

TEST(TrimmedBetti, GeneratingSetOrderIrrelevant) {
  auto f = pfaffian_resolution(generic_skew(5, Field::prime(kDefaultPrime)));
  std::vector<std::size_t> perm{4, 3, 2, 1, 0};
  std::vector<PolyMatrix> maps{f.differential(1).select_cols(perm), f.differential(2).select_rows(perm),
                               f.differential(3)};
  auto mods = f.modules();
  GradedFreeComplex p(f.ring(), mods, maps);
  ASSERT_TRUE(verify_complex(p));
  auto s = make_trim_setup(f, {0});
  auto sp = make_trim_setup(p, {4});
  EXPECT_EQ(trimmed_betti(s, lift_q(s)), trimmed_betti(sp, lift_q(sp)));
}

TEST(TrimmedBetti, ExplicitMinorLiftsAgreeWithSolved) {
  auto gm = generic_matrix(2, 4, Field::prime(kDefaultPrime));
  auto en = eagon_northcott(gm);
  std::vector<IndexSet> sig{{1, 2}, {3, 4}};
  std::vector<std::size_t> cols;
  std::vector<std::vector<Polynomial>> a;
  for (auto& sg : sig) {
    cols.push_back(subset_rank(sg, 4));
    a.push_back(minor_a_generators(gm, sg));
  }
  auto s = make_trim_setup(en, cols, a);
  auto ex = explicit_lifts(gm, sig);
  ASSERT_TRUE(verify_lifts(s, ex));
  EXPECT_EQ(trimmed_betti(s, ex), trimmed_betti(s, lift_q(s)));
  EXPECT_EQ(trimmed_betti(s, ex), betti_multi_minor(2, 4, sig));
  EXPECT_TRUE(all_seeds_ok(trimming_complex(s, ex)));
}
