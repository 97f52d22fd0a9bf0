#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "d4syl/conjugacy.hpp"
#include "d4syl/errors.hpp"
#include "d4syl/verify.hpp"
#include "support.hpp"

using namespace d4syl;
using d4syl::testing::tower;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t class_polynomial(std::uint64_t q) { return 2 * ipow(q, 5) + 2 * ipow(q, 4) - ipow(q, 3) - q * q - q; }

}  // namespace

TEST(FamilyData, CensusIdentityHoldsForManyQ) {
  for (std::uint64_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u}) {
    std::uint64_t mass = 0, count = 0;
    for (auto f : kClassFamilies) {
      mass += family_class_count(f, q) * family_class_size(f, q);
      count += family_class_count(f, q);
    }
    EXPECT_EQ(mass, ipow(q, 12)) << q;
    EXPECT_EQ(count, class_polynomial(q)) << q;
  }
  EXPECT_EQ(family_class_count(ClassFamily::X4, 3), 26u);
  EXPECT_EQ(family_class_size(ClassFamily::X4, 3), 9u);
  EXPECT_EQ(family_class_count(ClassFamily::T1T6, 3), 78u);
  EXPECT_EQ(family_class_size(ClassFamily::T1T6, 3), 243u);
  EXPECT_EQ(family_class_size(ClassFamily::T1T2, 5), ipow(5, 8));
}

TEST(FamilyData, NamesRoundTrip) {
  for (auto f : kClassFamilies) EXPECT_EQ(parse_family(family_name(f)), f);
  EXPECT_ANY_THROW(parse_family("X7"));
}

class ClassesByQ : public ::testing::TestWithParam<std::uint32_t> {
 protected:
  FieldTower ctx = tower(GetParam());
};

INSTANTIATE_TEST_SUITE_P(SmallQ, ClassesByQ, ::testing::Values(3u, 5u, 7u, 9u));

TEST_P(ClassesByQ, ListMatchesCensus) {
  const std::uint64_t q = ctx.q();
  const auto classes = list_classes(ctx);
  ASSERT_EQ(classes.size(), class_polynomial(q));
  std::map<ClassFamily, std::uint64_t> per_family;
  std::uint64_t mass = 0;
  std::size_t last_family = 0;
  std::set<GroupElement> reps;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const ConjClass& c = classes[i];
    EXPECT_EQ(c.index, i);
    const auto fam = static_cast<std::size_t>(c.family);
    EXPECT_GE(fam, last_family);
    last_family = fam;
    EXPECT_EQ(c.size, family_class_size(c.family, q));
    per_family[c.family] += 1;
    mass += c.size;
    reps.insert(c.rep);
    EXPECT_EQ(centralizer_order(ctx, c) * c.size, group_order(ctx));
  }
  EXPECT_EQ(reps.size(), classes.size());
  EXPECT_EQ(mass, group_order(ctx));
  for (auto f : kClassFamilies) EXPECT_EQ(per_family[f], family_class_count(f, q)) << family_name(f);
}

TEST_P(ClassesByQ, RepresentativesAreFixedPoints) {
  for (const auto& c : list_classes(ctx)) {
    ASSERT_EQ(class_of(ctx, c.rep), c) << to_string(ctx, c.rep);
    ASSERT_EQ(class_from_rep(ctx, c.rep), c);
  }
}

TEST_P(ClassesByQ, ClassOfIsConjugationInvariant) {
  std::mt19937_64 rng(41);
  const int trials = ctx.q() == 3 ? 20000 : 3000;
  for (int i = 0; i < trials; ++i) {
    const auto y = random_element(ctx, rng), u = random_element(ctx, rng);
    const ConjClass c = class_of(ctx, y);
    ASSERT_EQ(class_of(ctx, conjugate(ctx, u, y)), c) << to_string(ctx, y);
    ASSERT_EQ(c.family, class_of(ctx, c.rep).family);
  }
}

TEST_P(ClassesByQ, LowerRowsAbsorbCentralTail) {
  for (std::uint32_t t5 = 1; t5 < ctx.q(); ++t5)
    for (std::uint32_t s6 = 0; s6 < ctx.q(); ++s6) {
      GroupElement y;
      y.t5 = Fq{t5};
      y.t6 = Fq{s6};
      GroupElement rep;
      rep.t5 = Fq{t5};
      EXPECT_EQ(class_of(ctx, y).rep, rep);
    }
  EXPECT_EQ(class_of(ctx, GroupElement{}).family, ClassFamily::Identity);
}

TEST_P(ClassesByQ, KillCoordinateClearsTarget) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 200; ++i) {
    GroupElement y = random_element(ctx, rng);
    y.t2 = Fq{1 + static_cast<std::uint32_t>(rng() % (ctx.q() - 1))};
    y.t1 = Fq3{};
    const GroupElement z = kill_coordinate(ctx, y, 1, 3);
    EXPECT_EQ(z.t3, Fq3{});
    EXPECT_EQ(class_of(ctx, z), class_of(ctx, y));
  }
}

TEST(ClassLookup, UnknownRepresentative) {
  const FieldTower ctx = tower(3);
  GroupElement y;
  y.t5 = Fq{1};
  y.t6 = Fq{1};
  EXPECT_THROW(class_from_rep(ctx, y), UnknownClass);
}

// For fixed t1* the elements x(t1*, 0, s2 t1*, s4, s5, s6) split into q
// classes of size q^5.
TEST(ClassLookup, T1T6MembershipSet) {
  const FieldTower ctx = tower(3);
  for (std::uint32_t a : {1u, 5u, 13u}) {
    const Fq3 t1{a};
    std::map<std::uint32_t, std::uint64_t> per_class;
    for (std::uint32_t s2 = 0; s2 < 3; ++s2)
      for (std::uint32_t s4 = 0; s4 < 27; ++s4)
        for (std::uint32_t s5 = 0; s5 < 3; ++s5)
          for (std::uint32_t s6 = 0; s6 < 3; ++s6) {
            const GroupElement y{t1, Fq{}, ctx.scale(Fq{s2}, t1), Fq3{s4}, Fq{s5}, Fq{s6}};
            const ConjClass c = class_of(ctx, y);
            ASSERT_EQ(c.family, ClassFamily::T1T6);
            per_class[c.index] += 1;
          }
    EXPECT_EQ(per_class.size(), 3u);
    for (const auto& [index, n] : per_class) EXPECT_EQ(n, 243u);
  }
}

TEST(OrbitOracle, PartitionAtThree) {
  const FieldTower ctx = tower(3);
  const OrbitPartition part = brute_force_classes(ctx);
  ASSERT_EQ(part.label.size(), 609u);
  EXPECT_EQ(part.label[0], 0u);
  EXPECT_EQ(part.size[part.orbit_of[0]], 1u);
  std::uint64_t total = 0;
  for (std::size_t o = 0; o < part.label.size(); ++o) {
    total += part.size[o];
    EXPECT_EQ(part.orbit_of[part.label[o]], o);
    if (o > 0) EXPECT_LT(part.label[o - 1], part.label[o]);
  }
  EXPECT_EQ(total, 531441u);
  // Orbits of elements with t1 = 0, t2 != 0.
  std::uint64_t t2_orbits = 0;
  for (std::size_t o = 0; o < part.label.size(); ++o) {
    const GroupElement y = element_at(ctx, part.label[o]);
    if (y.t1 == Fq3{} && y.t2 != Fq{}) {
      ++t2_orbits;
      EXPECT_EQ(part.size[o], 81u);
    }
  }
  EXPECT_EQ(t2_orbits, 162u);
  for (std::uint64_t r = 0; r < 531441; r += 101) {
    const GroupElement y = element_at(ctx, r);
    const GroupElement rep = class_of(ctx, y).rep;
    ASSERT_EQ(part.orbit_of[rank_of(ctx, rep)], part.orbit_of[r]);
  }
  EXPECT_THROW(brute_force_classes(tower(5)), TooLarge);
}

TEST(OrbitOracle, CensusReportPasses) {
  const FieldTower ctx = tower(3);
  const VerificationReport r = verify_class_census(ctx);
  EXPECT_TRUE(r.passed) << r.counterexample;
}
