#include <gtest/gtest.h>

#include <sstream>

#include "trimcx/builders.hpp"
#include "trimcx/chain.hpp"

using namespace trimcx;

namespace {

RingPtr xyz() { return PolyRing::make({"x", "y", "z"}, Field::rationals()); }

std::vector<Polynomial> gens(const RingPtr& r, std::initializer_list<const char*> ss) {
  std::vector<Polynomial> out;
  for (auto s : ss) out.push_back(Polynomial::parse(s, r));
  return out;
}

PolyMatrix identity(const RingPtr& r, std::size_t n) {
  PolyMatrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(r, 1);
  return m;
}

// Block-diagonal sum of two complexes over the same ring.
GradedFreeComplex direct_sum(const GradedFreeComplex& a, const GradedFreeComplex& b) {
  std::size_t L = std::max(a.length(), b.length());
  std::vector<GradedFreeModule> mods;
  std::vector<PolyMatrix> maps;
  for (std::size_t i = 0; i <= L; ++i) mods.push_back(trimcx::direct_sum(a.module(i), b.module(i)));
  for (std::size_t i = 1; i <= L; ++i) {
    auto da = a.differential(i), db = b.differential(i);
    PolyMatrix m(a.ring(), da.rows() + db.rows(), da.cols() + db.cols());
    for (std::size_t r = 0; r < da.rows(); ++r)
      for (std::size_t c = 0; c < da.cols(); ++c) m(r, c) = da(r, c);
    for (std::size_t r = 0; r < db.rows(); ++r)
      for (std::size_t c = 0; c < db.cols(); ++c) m(da.rows() + r, da.cols() + c) = db(r, c);
    maps.push_back(std::move(m));
  }
  return GradedFreeComplex(a.ring(), mods, maps);
}

ChainMapData identity_map(const GradedFreeComplex& c) {
  ChainMapData f{c, c, {}, 0};
  for (std::size_t k = 0; k <= c.length(); ++k) f.maps.push_back(identity(c.ring(), c.module(k).rank()));
  return f;
}

}  // namespace

TEST(VerifyComplex, Cases) {
  auto r = xyz();
  EXPECT_TRUE(verify_complex(koszul_complex(gens(r, {"x", "y", "z"}))));
  PolyMatrix d(r, 1, 1);
  d(0, 0) = Polynomial::parse("x", r);
  GradedFreeComplex bad(r, {{{0}}, {{1}}, {{2}}}, {d, d});
  EXPECT_FALSE(verify_complex(bad));
}

TEST(GradedFreeComplex, ShapeErrors) {
  auto r = xyz();
  EXPECT_THROW(GradedFreeComplex(r, {}, {}), ComplexError);
  EXPECT_THROW(GradedFreeComplex(r, {{{0}}, {{1, 1}}}, {PolyMatrix(r, 1, 1)}), ComplexError);
  auto k = koszul_complex(gens(r, {"x", "y"}));
  EXPECT_THROW(k.set_differential(1, PolyMatrix(r, 2, 2)), ComplexError);
  EXPECT_EQ(k.module(7).rank(), 0u);
}

TEST(MappingCone, IdentityIsAcyclic) {
  auto r = xyz();
  auto k = koszul_complex(gens(r, {"x", "y", "z"}));
  auto cone = mapping_cone(identity_map(k));
  EXPECT_TRUE(verify_complex(cone));
  EXPECT_FALSE(is_minimal(cone));
  EXPECT_TRUE(rank_acyclicity_evidence(cone, 1));
  EXPECT_TRUE(rank_acyclicity_evidence(cone, 2));
  // H_0 dies too: d_1 of the cone reaches a unit.
  EXPECT_EQ(rank_at_random_point(cone.differential(1), 3), 1u);
}

TEST(MappingCone, ZeroMapGivesDirectSum) {
  auto r = xyz();
  auto c = koszul_complex(gens(r, {"x", "y"}));
  auto d = koszul_complex(gens(r, {"z"}));
  ChainMapData f{c, d, {}, 0};
  for (std::size_t k = 0; k <= c.length(); ++k) f.maps.push_back(PolyMatrix(r, d.module(k).rank(), c.module(k).rank()));
  auto cone = mapping_cone(f);
  EXPECT_TRUE(verify_complex(cone));
  for (std::size_t i = 0; i <= cone.length(); ++i) {
    EXPECT_EQ(cone.module(i).rank(), d.module(i).rank() + (i ? c.module(i - 1).rank() : 0));
  }
  // Off-diagonal blocks vanish and the diagonal ones are d and -d.
  auto d2 = cone.differential(2);
  auto dc = c.differential(1);
  for (std::size_t a = 0; a < dc.rows(); ++a)
    for (std::size_t b = 0; b < dc.cols(); ++b)
      EXPECT_EQ(d2(d.module(1).rank() + a, d.module(2).rank() + b), -dc(a, b));
}

TEST(MappingCone, RejectsNonCommuting) {
  auto r = xyz();
  auto c = koszul_complex(gens(r, {"x"}));
  auto d = koszul_complex(gens(r, {"y"}));
  ChainMapData f{c, d, {identity(r, 1), identity(r, 1)}, 0};
  EXPECT_FALSE(commutes(f));
  EXPECT_THROW(mapping_cone(f), ComplexError);
}

TEST(Minimality, Cases) {
  auto r = xyz();
  auto k = koszul_complex(gens(r, {"x", "y", "z"}));
  EXPECT_TRUE(is_minimal(k));
  EXPECT_FALSE(is_minimal(mapping_cone(identity_map(k))));
  EXPECT_THROW(betti_from_minimal(mapping_cone(identity_map(k))), ComplexError);
}

TEST(Betti, KoszulOnVariables) {
  auto r = xyz();
  auto t = betti_from_minimal(koszul_complex(gens(r, {"x", "y", "z"})));
  BettiTable want{{{0, 0}, 1}, {{1, 1}, 3}, {{2, 2}, 3}, {{3, 3}, 1}};
  EXPECT_EQ(t, want);
}

TEST(Betti, EagonNorthcottTwoByThree) {
  auto en = eagon_northcott(generic_matrix(2, 3, Field::prime(kDefaultPrime)));
  BettiTable want{{{0, 0}, 1}, {{1, 2}, 3}, {{2, 3}, 2}};
  EXPECT_EQ(betti_from_minimal(en), want);
  EXPECT_EQ(betti_from_resolution(en), want);
}

TEST(Betti, NonMinimalResolutionMinimizes) {
  auto r = xyz();
  auto k = koszul_complex(gens(r, {"x", "y"}));
  // Add a trivial 0 -> R(-2) -> R(-2) -> 0 in positions 2,1.
  PolyMatrix one = identity(r, 1);
  GradedFreeComplex triv(r, {{{}}, {{2}}, {{2}}}, {PolyMatrix(r, 0, 1), one});
  auto s = direct_sum(k, triv);
  EXPECT_TRUE(verify_complex(s));
  EXPECT_FALSE(is_minimal(s));
  EXPECT_EQ(betti_from_resolution(s), betti_from_minimal(k));
}

TEST(Betti, TotalsMatchRanksAndPermutationInvariant) {
  auto en = eagon_northcott(generic_matrix(2, 4, Field::prime(kDefaultPrime)));
  auto t = betti_from_minimal(en);
  auto totals = betti_totals(t);
  for (std::size_t i = 0; i <= en.length(); ++i) EXPECT_EQ(totals[i], mpz_class(en.module(i).rank()));
  // Reverse the basis of F_1: permute columns of d_1 and rows of d_2.
  auto mods = en.modules();
  std::size_t n1 = mods[1].rank();
  std::vector<std::size_t> perm(n1);
  for (std::size_t j = 0; j < n1; ++j) perm[j] = n1 - 1 - j;
  std::reverse(mods[1].degrees.begin(), mods[1].degrees.end());
  std::vector<PolyMatrix> maps;
  maps.push_back(en.differential(1).select_cols(perm));
  maps.push_back(en.differential(2).select_rows(perm));
  for (std::size_t i = 3; i <= en.length(); ++i) maps.push_back(en.differential(i));
  GradedFreeComplex p(en.ring(), mods, maps);
  EXPECT_TRUE(verify_complex(p));
  EXPECT_EQ(betti_from_minimal(p), t);
}

TEST(RankEvidence, SpuriousSummand) {
  auto r = xyz();
  auto k = koszul_complex(gens(r, {"x", "y", "z"}));
  EXPECT_TRUE(rank_acyclicity_evidence(k, 1));
  // 0 -> R -> R -> 0 in positions 1,0, identity: still acyclic.
  GradedFreeComplex unit(r, {{{0}}, {{0}}}, {identity(r, 1)});
  EXPECT_TRUE(rank_acyclicity_evidence(direct_sum(k, unit), 1));
  // R in position 1 with zero map carries homology.
  GradedFreeComplex dead(r, {{{}}, {{0}}}, {PolyMatrix(r, 0, 1)});
  EXPECT_FALSE(rank_acyclicity_evidence(direct_sum(k, dead), 1));
}

TEST(Serialization, RoundTrip) {
  auto x = generic_skew(5, Field::prime(kDefaultPrime));
  auto f = pfaffian_resolution(x);
  std::stringstream ss;
  write_complex(ss, f);
  auto g = read_complex(ss);
  EXPECT_EQ(*g.ring(), *f.ring());
  EXPECT_EQ(g.modules(), f.modules());
  for (std::size_t i = 1; i <= f.length(); ++i) EXPECT_EQ(g.differential(i), f.differential(i));
  std::stringstream again;
  write_complex(again, g);
  std::stringstream first;
  write_complex(first, f);
  EXPECT_EQ(again.str(), first.str());
}

TEST(Serialization, RejectsGarbage) {
  std::istringstream in("not a complex\n");
  EXPECT_ANY_THROW(read_complex(in));
}

TEST(BettiFormat, RowsByDegreeMinusIndex) {
  BettiTable t{{{0, 0}, 1}, {{1, 2}, 3}, {{2, 3}, 2}};
  auto s = format_betti_table(t);
  EXPECT_NE(s.find("total: 1 3 2"), std::string::npos) << s;
  EXPECT_NE(s.find("1: . 3 2"), std::string::npos) << s;
}
