#include <gtest/gtest.h>

#include <map>
#include <random>

#include "d4syl/characters.hpp"
#include "d4syl/errors.hpp"
#include "d4syl/parallel.hpp"
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

CycInt scaled(std::uint32_t p, std::int64_t n, const CycInt& v) { return int_scale(n, v) + CycInt(p, 0); }

ConjClass find_class(const std::vector<ConjClass>& classes, ClassFamily f) {
  for (const auto& c : classes)
    if (c.family == f) return c;
  throw std::logic_error("family missing");
}

std::vector<GroupElement> subgroup_elements(const FieldTower& ctx, Subgroup s) {
  std::vector<GroupElement> out;
  for (const GroupElement& y : enumerate_all(ctx))
    if (in_subgroup(s, y)) out.push_back(y);
  return out;
}

}  // namespace

TEST(Labels, CountsAndDegrees) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    const FieldTower ctx = tower(q);
    const auto labels = list_irreducibles(ctx);
    std::map<CharFamily, std::uint64_t> per_family;
    std::uint64_t square_sum = 0;
    for (const auto& l : labels) {
      per_family[l.family] += 1;
      EXPECT_EQ(degree(ctx, l), degree(l.family, q));
      square_sum += degree(ctx, l) * degree(ctx, l);
    }
    const std::uint64_t qq = q;
    EXPECT_EQ(per_family[CharFamily::Lin], ipow(qq, 4));
    EXPECT_EQ(per_family[CharFamily::F3], qq * qq * (ipow(qq, 3) - 1));
    EXPECT_EQ(per_family[CharFamily::F4], qq * (ipow(qq, 3) - 1));
    EXPECT_EQ(per_family[CharFamily::F5], ipow(qq, 4) * (qq - 1));
    EXPECT_EQ(per_family[CharFamily::F6], ipow(qq, 3) * (qq - 1));
    EXPECT_EQ(labels.size(), 2 * ipow(qq, 5) + 2 * ipow(qq, 4) - ipow(qq, 3) - qq * qq - qq);
    EXPECT_EQ(square_sum, ipow(qq, 12));
    EXPECT_TRUE(std::is_sorted(labels.begin(), labels.end(),
                               [](const CharLabel& a, const CharLabel& b) { return a.family < b.family; }));
  }
  EXPECT_EQ(degree(CharFamily::F6, 3), 81u);
  EXPECT_EQ(degree(CharFamily::F3, 5), 5u);
}

TEST(Labels, F3UsesTransversal) {
  const FieldTower ctx = tower(3);
  for (const auto& l : list_irreducibles(ctx)) {
    if (l.family != CharFamily::F3) continue;
    ASSERT_NE(l.a13, Fq3{});
    ASSERT_EQ(decompose(ctx, l.a13, l.a12).first, l.a12);
  }
}

TEST(Labels, Printing) {
  const FieldTower ctx = tower(3);
  CharLabel l;
  l.family = CharFamily::F6;
  l.a17 = Fq{2};
  l.a12 = Fq3{5};
  EXPECT_EQ(to_string(ctx, l), "F6(a17=[2],a12=[2,1,0])");
}

TEST(Values, TableEntriesAtThree) {
  const FieldTower ctx = tower(3);
  const auto classes = list_classes(ctx);
  const auto labels = list_irreducibles(ctx);
  const std::uint32_t p = 3;
  for (const auto& c : classes) EXPECT_EQ(char_value(ctx, labels.front(), c), CycInt(p, 1));

  const ConjClass t2t4t5 = find_class(classes, ClassFamily::T2T4T5);
  for (const auto& l : labels) {
    for (const auto& c : classes) {
      if (c.family == ClassFamily::Identity) EXPECT_EQ(char_value(ctx, l, c), CycInt(p, degree(ctx, l)));
      if (l.family == CharFamily::F6 && c.family == ClassFamily::X6)
        EXPECT_EQ(char_value(ctx, l, c), scaled(p, 81, theta(ctx, ctx.mul(l.a17, c.rep.t6))));
      if (l.family == CharFamily::F3 &&
          (c.family == ClassFamily::X4 || c.family == ClassFamily::X5 || c.family == ClassFamily::X6))
        EXPECT_EQ(char_value(ctx, l, c), CycInt(p, 3));
      if (l.family == CharFamily::F4 && (c.family == ClassFamily::X5 || c.family == ClassFamily::X6))
        EXPECT_EQ(char_value(ctx, l, c), CycInt(p, 27));
    }
    if (l.family == CharFamily::F6) EXPECT_TRUE(is_zero(char_value(ctx, l, t2t4t5)));
  }
  GroupElement bogus;
  bogus.t5 = Fq{1};
  bogus.t6 = Fq{1};
  EXPECT_THROW(char_value(ctx, labels.front(), ConjClass{ClassFamily::X5, bogus, 3, 0}), UnknownClass);
}

TEST(Values, LinearCharactersOnRootElements) {
  const FieldTower ctx = tower(9);
  for (const auto& l : list_irreducibles(ctx)) {
    if (l.family != CharFamily::Lin || l.a12.code % 37 != 1) continue;
    for (std::uint32_t t = 1; t < ctx.order3(); t += 53)
      EXPECT_EQ(char_value_at(ctx, l, root_element(ctx, 1, Fq3{t})), theta_pi(ctx, ctx.mul(l.a12, Fq3{t})));
  }
}

class ValuesByQ : public ::testing::TestWithParam<std::uint32_t> {
 protected:
  FieldTower ctx = tower(GetParam());
};

INSTANTIATE_TEST_SUITE_P(SmallQ, ValuesByQ, ::testing::Values(3u, 5u, 9u));

TEST_P(ValuesByQ, ClassFunction) {
  const auto labels = list_irreducibles(ctx);
  std::mt19937_64 rng(47);
  for (int i = 0; i < 300; ++i) {
    const CharLabel& l = labels[rng() % labels.size()];
    const auto y = random_element(ctx, rng), g = random_element(ctx, rng);
    ASSERT_EQ(char_value_at(ctx, l, conjugate(ctx, g, y)), char_value_at(ctx, l, y)) << to_string(ctx, l);
  }
}

// Closed forms against the induction oracle on random elements, beyond the
// exhaustive q = 3 grid.
TEST_P(ValuesByQ, AgreesWithInductionOracleOnRandomElements) {
  const auto labels = list_irreducibles(ctx);
  std::map<CharFamily, std::vector<CharLabel>> by_family;
  for (const auto& l : labels) by_family[l.family].push_back(l);
  std::mt19937_64 rng(53);
  const int trials = GetParam() == 9 ? 15 : 60;
  for (int i = 0; i < trials; ++i) {
    GroupElement y = random_element(ctx, rng);
    // Bias toward the sparse shapes where most values are nonzero.
    if (i % 3 == 1) y.t1 = Fq3{};
    if (i % 3 == 2) y.t2 = Fq{};
    std::vector<CharLabel> pick;
    for (const auto& [family, ls] : by_family)
      for (int j = 0; j < 4; ++j) pick.push_back(ls[rng() % ls.size()]);
    const auto oracle = induced_values_oracle(ctx, pick, y);
    for (std::size_t j = 0; j < pick.size(); ++j)
      ASSERT_EQ(char_value_at(ctx, pick[j], y), oracle[j]) << to_string(ctx, pick[j]) << " at " << to_string(ctx, y);
  }
}

TEST_P(ValuesByQ, OracleAtIdentityIsDegree) {
  const auto labels = list_irreducibles(ctx);
  std::vector<CharLabel> pick;
  for (std::size_t i = 0; i < labels.size(); i += labels.size() / 50) pick.push_back(labels[i]);
  pick.push_back(labels.back());
  const auto values = induced_values_oracle(ctx, pick, GroupElement{});
  for (std::size_t i = 0; i < pick.size(); ++i)
    EXPECT_EQ(values[i], CycInt(ctx.p(), degree(ctx, pick[i]))) << to_string(ctx, pick[i]);
}

TEST(Oracle, FullGridAtThree) {
  const FieldTower ctx = tower(3);
  const CharacterTable table = build_table(ctx);
  const VerificationReport r = verify_oracle_values(table);
  EXPECT_TRUE(r.passed) << r.counterexample;
}

TEST(Oracle, EveryClassAtFiveForSampledLabels) {
  const FieldTower ctx = tower(5);
  const auto labels = list_irreducibles(ctx);
  std::map<CharFamily, std::vector<CharLabel>> by_family;
  for (const auto& l : labels) by_family[l.family].push_back(l);
  std::mt19937_64 rng(71);
  std::vector<CharLabel> pick;
  for (const auto& [family, ls] : by_family)
    for (int j = 0; j < 3; ++j) pick.push_back(ls[rng() % ls.size()]);
  const auto classes = list_classes(ctx);
  std::vector<std::string> failures(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) {
    const auto oracle = induced_values_oracle(ctx, pick, classes[i].rep);
    for (std::size_t j = 0; j < pick.size(); ++j)
      if (char_value(ctx, pick[j], classes[i]) != oracle[j]) {
        failures[i] = to_string(ctx, pick[j]) + " at " + to_string(ctx, classes[i].rep);
        return;
      }
  });
  for (const auto& f : failures) ASSERT_TRUE(f.empty()) << f;
}

// Sum over a12 of the F6 characters against Ind_N^U of lambda^{a17,0,0}.
TEST(Oracle, F6SumMatchesInductionFromN) {
  const FieldTower ctx = tower(3);
  const auto classes = list_classes(ctx);
  for (std::uint32_t a17 = 1; a17 < 3; ++a17) {
    bool base_sum_matches = true;
    for (const auto& c : classes) {
      CycInt cubic(3, 0), base(3, 0);
      CharLabel l;
      l.family = CharFamily::F6;
      l.a17 = Fq{a17};
      for (std::uint32_t a12 = 0; a12 < 27; ++a12) {
        l.a12 = Fq3{a12};
        const CycInt v = char_value(ctx, l, c);
        cubic += v;
        if (a12 < 3) base += v;
      }
      const CycInt induced = induced_from_n(ctx, Fq{a17}, c.rep);
      ASSERT_EQ(cubic, induced) << to_string(ctx, c.rep);
      base_sum_matches = base_sum_matches && base == induced;
    }
    // Summing a12 over F_q only covers q of the q^3 constituents.
    EXPECT_FALSE(base_sum_matches);
  }
}

TEST(SubgroupCharacters, CountsAndDegrees) {
  const FieldTower ctx = tower(3);
  const auto n = list_subgroup_irreducibles(ctx, Subgroup::N);
  const auto h = list_subgroup_irreducibles(ctx, Subgroup::H);
  const auto t = list_subgroup_irreducibles(ctx, Subgroup::T);
  EXPECT_EQ(n.size(), 243u);
  auto count = [](const std::vector<SubgroupCharLabel>& ls, bool induced) {
    return std::count_if(ls.begin(), ls.end(), [&](const SubgroupCharLabel& l) { return l.induced == induced; });
  };
  EXPECT_EQ(count(h, false), 2187);
  EXPECT_EQ(count(h, true), 6);
  EXPECT_EQ(count(t, false), 6561);
  EXPECT_EQ(count(t, true), 2);
  std::uint64_t hs = 0, ts = 0;
  for (const auto& l : h) {
    const std::int64_t d = subgroup_char_value(ctx, l, GroupElement{}).coeff(0);
    hs += d * d;
  }
  for (const auto& l : t) {
    const std::int64_t d = subgroup_char_value(ctx, l, GroupElement{}).coeff(0);
    ts += d * d;
  }
  EXPECT_EQ(hs, 6561u);
  EXPECT_EQ(ts, 19683u);
  EXPECT_THROW(subgroup_char_value(ctx, n.front(), root_element(ctx, 1, Fq3{1})), NotInSubgroup);
  EXPECT_THROW(subgroup_char_value(ctx, t.front(), root_element(ctx, 1, Fq3{1})), NotInSubgroup);
}

TEST(SubgroupCharacters, NValuesAndLinearity) {
  const FieldTower ctx = tower(3);
  const auto elems = subgroup_elements(ctx, Subgroup::N);
  std::mt19937_64 rng(59);
  for (const auto& l : list_subgroup_irreducibles(ctx, Subgroup::N)) {
    for (std::uint32_t t6 = 0; t6 < 3; ++t6)
      EXPECT_EQ(subgroup_char_value(ctx, l, root_element(ctx, 6, Fq3{t6})), theta(ctx, ctx.mul(l.a17, Fq{t6})));
    for (int i = 0; i < 5; ++i) {
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      ASSERT_EQ(subgroup_char_value(ctx, l, multiply(ctx, a, b)),
                subgroup_char_value(ctx, l, a) * subgroup_char_value(ctx, l, b));
    }
  }
}

// Linear characters of H and T are homomorphisms.
TEST(SubgroupCharacters, LinearRowsAreHomomorphisms) {
  const FieldTower ctx = tower(3);
  std::mt19937_64 rng(61);
  for (Subgroup s : {Subgroup::H, Subgroup::T}) {
    const auto elems = subgroup_elements(ctx, s);
    const auto labels = list_subgroup_irreducibles(ctx, s);
    for (int i = 0; i < 3000; ++i) {
      const auto& l = labels[rng() % labels.size()];
      if (l.induced) continue;
      const auto& a = elems[rng() % elems.size()];
      const auto& b = elems[rng() % elems.size()];
      ASSERT_EQ(subgroup_char_value(ctx, l, multiply(ctx, a, b)),
                subgroup_char_value(ctx, l, a) * subgroup_char_value(ctx, l, b));
    }
  }
}

// Induced rows of H and T against literal induction from N, on every
// element of the subgroup.
TEST(SubgroupCharacters, InducedRowsMatchLiteralInduction) {
  const FieldTower ctx = tower(3);
  for (Subgroup s : {Subgroup::H, Subgroup::T}) {
    std::vector<GroupElement> cosets;
    if (s == Subgroup::H) {
      for (std::uint32_t r = 0; r < 27; ++r) cosets.push_back(root_element(ctx, 1, Fq3{r}));
    } else {
      for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = 0; b < 27; ++b)
          cosets.push_back(multiply(ctx, root_element(ctx, 2, Fq3{a}), root_element(ctx, 3, Fq3{b})));
    }
    const auto elems = subgroup_elements(ctx, s);
    for (const auto& l : list_subgroup_irreducibles(ctx, s)) {
      if (!l.induced) continue;
      SubgroupCharLabel lambda;
      lambda.a17 = l.a17;
      lambda.a16 = l.a16;
      for (const auto& y : elems) {
        RootSum sum(3);
        for (const auto& g : cosets) {
          const GroupElement z = conjugate(ctx, g, y);
          if (!in_subgroup(Subgroup::N, z)) continue;
          sum.add(ctx.trace(ctx.mul(lambda.a17, z.t6)) + ctx.trace(ctx.mul(lambda.a16, z.t5)));
        }
        ASSERT_EQ(subgroup_char_value(ctx, l, y), sum.value()) << to_string(ctx, y);
      }
    }
  }
}

// Res_N Ind_N^H lambda^{a17,a16,0} = sum over b15 of lambda^{a17,a16,b15}.
TEST(SubgroupCharacters, RestrictionDecomposition) {
  const FieldTower ctx = tower(3);
  const auto elems = subgroup_elements(ctx, Subgroup::N);
  for (const auto& l : list_subgroup_irreducibles(ctx, Subgroup::H)) {
    if (!l.induced) continue;
    for (const auto& y : elems) {
      CycInt sum(3, 0);
      SubgroupCharLabel lambda;
      lambda.a17 = l.a17;
      lambda.a16 = l.a16;
      for (std::uint32_t b = 0; b < 27; ++b) {
        lambda.a15 = Fq3{b};
        sum += subgroup_char_value(ctx, lambda, y);
      }
      ASSERT_EQ(subgroup_char_value(ctx, l, y), sum);
    }
  }
}

TEST(Inertia, OrdersAtThree) {
  const FieldTower ctx = tower(3);
  SubgroupCharLabel lambda;
  EXPECT_EQ(inertia_order(ctx, lambda, Ambient::U), 531441u);
  lambda.a17 = Fq{1};
  EXPECT_EQ(inertia_order(ctx, lambda, Ambient::U), 6561u);
  lambda.a15 = Fq3{7};
  EXPECT_EQ(inertia_order(ctx, lambda, Ambient::U), 6561u);
  EXPECT_EQ(inertia_order(ctx, lambda, Ambient::T), 243u);
  lambda.a16 = Fq{2};
  EXPECT_EQ(inertia_order(ctx, lambda, Ambient::H), 243u);
  SubgroupCharLabel no_center;
  no_center.a15 = Fq3{4};
  EXPECT_EQ(inertia_order(ctx, no_center, Ambient::T), 19683u);
  EXPECT_THROW(inertia_order(tower(5), lambda, Ambient::U), TooLarge);
}

TEST(Table, MaterializedMatchesLazy) {
  const FieldTower ctx = tower(3);
  const CharacterTable lazy = build_table(ctx, false);
  CharacterTable dense = build_table(ctx, true, 2);
  ASSERT_TRUE(dense.materialized());
  EXPECT_FALSE(lazy.materialized());
  std::mt19937_64 rng(67);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t r = rng() % dense.rows(), c = rng() % dense.cols();
    ASSERT_EQ(dense.value(r, c), lazy.value(r, c));
  }
  EXPECT_EQ(dense.row_coeffs(5), lazy.row_coeffs(5));
  EXPECT_EQ(dense.col_coeffs(7), lazy.col_coeffs(7));
  dense.set(3, 4, CycInt(3, 12));
  EXPECT_EQ(dense.value(3, 4), CycInt(3, 12));
  EXPECT_THROW(dense.set(0, 0, CycInt(3, std::int64_t{1} << 40)), IntegerOverflow);
}
