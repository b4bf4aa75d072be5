#include "pimoduli/cohomology.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pimoduli;

namespace {

FgAbGroup cyc(long d) { return FgAbGroup::cyclic(d); }

FiniteGroup s3() { return FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}); }

// Automorphism matrices of small modules, on the module's generators.
std::vector<IntMatrix> module_automorphisms(long kind) {
  switch (kind) {
    case 2: return {IntMatrix{{1}}};
    case 3: return {IntMatrix{{1}}, IntMatrix{{2}}};
    case 4: return {IntMatrix{{1}}, IntMatrix{{3}}};
    case 5: return {IntMatrix{{1}}, IntMatrix{{2}}, IntMatrix{{3}}, IntMatrix{{4}}};
    default:  // Z/2 + Z/2: GL_2(F_2)
      return {IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{1, 1}, {0, 1}},
              IntMatrix{{1, 0}, {1, 1}}, IntMatrix{{0, 1}, {1, 1}}, IntMatrix{{1, 1}, {1, 0}}};
  }
}

FgAbGroup module_group(long kind) { return kind == 22 ? FgAbGroup::from_cyclic_factors({2, 2}) : cyc(kind); }

// Every module structure on `kind` over g (one automorphism per generator, consistent ones kept).
std::vector<GModule> all_modules(const FiniteGroup& g, long kind) {
  const auto autos = module_automorphisms(kind);
  const auto& gens = g.generators();
  std::vector<GModule> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  while (true) {
    std::vector<IntMatrix> images;
    for (auto c : choice) images.push_back(autos[c]);
    try {
      out.push_back(GModule::from_generator_action(g, module_group(kind), gens, images));
    } catch (const ValidationError&) {
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == autos.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return out;
}

// Derivations by enumerating every function G -> M (element indices).
std::size_t derivations_by_enumeration(const GModule& m) {
  const FiniteGroup& g = m.group();
  const FgAbGroup& base = m.base();
  const std::size_t msize = base.element_count();
  const std::size_t n = g.order();
  auto add = [&](std::size_t x, std::size_t y) {
    IntVector s = base.element(x);
    const IntVector t = base.element(y);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
    return base.index_of(base.reduce_normal(s));
  };
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= msize;
  std::size_t count = 0;
  std::vector<std::size_t> d(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = c % msize;
      c /= msize;
    }
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b)
        ok = d[g.mul(a, b)] == add(m.element_action(a)[d[b]], d[a]);
    if (ok) ++count;
  }
  return count;
}

GModule relabel_module(const GModule& m, const Permutation& relabel) {
  const FiniteGroup h = m.group().relabeled(relabel);
  std::vector<IntMatrix> action(h.order());
  for (std::size_t g = 0; g < h.order(); ++g) action[relabel[g]] = m.action(g).matrix();
  return GModule(h, m.base(), action);
}

}  // namespace

TEST(BarComplex, CochainGroupOrders) {
  const auto c = bar_complex(GModule::trivial(FiniteGroup::cyclic(2), cyc(2)), 3);
  ASSERT_EQ(c.length(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(c.group(k).order(), 2);
  const auto c3 = bar_complex(GModule::trivial(FiniteGroup::cyclic(3), cyc(2)), 2);
  EXPECT_EQ(c3.group(0).order(), 2);
  EXPECT_EQ(c3.group(1).order(), 4);
  EXPECT_EQ(c3.group(2).order(), 16);
}

TEST(BarComplex, SizeBound) {
  SizeBounds b;
  EXPECT_THROW(bar_complex(GModule::trivial(FiniteGroup::cyclic(17), cyc(2)), 2, b), SizeBoundError);
  b.max_cochain_rank = 10;
  EXPECT_THROW(bar_complex(GModule::trivial(FiniteGroup::cyclic(4), cyc(2)), 3, b), SizeBoundError);
}

TEST(BarComplex, DifferentialSquaresToZeroOnRandomModules) {
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                                        FiniteGroup::abelian({2, 2}), s3()};
  const std::vector<long> kinds{2, 3, 4, 5, 22};
  std::mt19937 rng(1234);
  int checked = 0;
  while (checked < 200) {
    const FiniteGroup& g = groups[rng() % groups.size()];
    const long kind = kinds[rng() % kinds.size()];
    const auto autos = module_automorphisms(kind);
    std::vector<IntMatrix> images;
    for (std::size_t i = 0; i < g.generators().size(); ++i) images.push_back(autos[rng() % autos.size()]);
    std::optional<GModule> m;
    try {
      m = GModule::from_generator_action(g, module_group(kind), g.generators(), images);
    } catch (const ValidationError&) {
      continue;
    }
    const std::size_t kmax = g.order() <= 4 ? 4 : 3;
    EXPECT_NO_THROW(bar_complex(*m, kmax).check_all_composites());
    ++checked;
  }
}

TEST(Cohomology, TrivialZ2CoefficientsZ2) {
  const GModule m = GModule::trivial(FiniteGroup::cyclic(2), cyc(2));
  for (std::size_t k = 0; k <= 5; ++k) {
    EXPECT_EQ(cohomology(m, k).group(), cyc(2)) << k;
    EXPECT_EQ(oracle_cohomology(m, k), cyc(2)) << k;
  }
}

TEST(Cohomology, TrivialZ3CoefficientsZ3) {
  const GModule m = GModule::trivial(FiniteGroup::cyclic(3), cyc(3));
  EXPECT_EQ(cohomology(m, 2).group(), cyc(3));
  EXPECT_EQ(oracle_cohomology(m, 2), cyc(3));
}

TEST(Cohomology, DegreeZeroIsFixedPoints) {
  EXPECT_EQ(cohomology(GModule::trivial(s3(), FgAbGroup::from_cyclic_factors({2, 3})), 0).group(),
            FgAbGroup::from_cyclic_factors({2, 3}));
  // negation on Z/3 fixes only 0; on Z/4 it fixes {0, 2}
  const FiniteGroup c2 = FiniteGroup::cyclic(2);
  const GModule neg3 = GModule::from_generator_action(c2, cyc(3), c2.generators(), {IntMatrix{{-1}}});
  EXPECT_TRUE(cohomology(neg3, 0).group().is_trivial());
  EXPECT_TRUE(oracle_cohomology(neg3, 0).is_trivial());
  const GModule neg4 = GModule::from_generator_action(c2, cyc(4), c2.generators(), {IntMatrix{{-1}}});
  EXPECT_EQ(cohomology(neg4, 0).group(), cyc(2));
}

TEST(Cohomology, OracleSweepSmallGroupsAndModules) {
  // all groups of order <= 3, all modules of order <= 3 with every action, k <= 2
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(1), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)};
  int cases = 0;
  for (const auto& g : groups) {
    std::vector<GModule> modules{GModule::trivial(g, FgAbGroup::free(0))};
    for (long kind : {2L, 3L})
      for (auto& m : all_modules(g, kind)) modules.push_back(std::move(m));
    for (const auto& m : modules)
      for (std::size_t k = 0; k <= 2; ++k) {
        EXPECT_EQ(cohomology(m, k).group(), oracle_cohomology(m, k))
            << "|G|=" << g.order() << " M=" << m.base().describe() << " k=" << k;
        ++cases;
      }
  }
  EXPECT_EQ(cases, 3 * (1 + 1 + 1) + 3 * (1 + 1 + 2) + 3 * (1 + 1 + 1));
  const GModule m = GModule::trivial(FiniteGroup::cyclic(2), cyc(2));
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(cohomology(m, k).group(), oracle_cohomology(m, k));
}

TEST(Cohomology, OracleUnnormalizedAgrees) {
  const FiniteGroup c2 = FiniteGroup::cyclic(2);
  const GModule neg = GModule::from_generator_action(c2, cyc(3), c2.generators(), {IntMatrix{{-1}}});
  for (const GModule& m : {GModule::trivial(c2, cyc(2)), neg})
    for (std::size_t k = 0; k <= 2; ++k)
      EXPECT_EQ(oracle_cohomology(m, k, {}, {.unnormalized = true}), oracle_cohomology(m, k));
}

TEST(Cohomology, OracleEnumerationBound) {
  SizeBounds b;
  b.oracle_enumeration = 100;
  EXPECT_THROW(oracle_cohomology(GModule::trivial(FiniteGroup::cyclic(3), cyc(3)), 3, b), SizeBoundError);
}

TEST(Cohomology, RelabelingInvariance) {
  std::mt19937 rng(606);
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(4), FiniteGroup::abelian({2, 2}), s3(),
                                        FiniteGroup::cyclic(5)};
  int cases = 0;
  for (const auto& g : groups)
    for (long kind : {2L, 3L, 22L})
      for (const auto& m : all_modules(g, kind)) {
        Permutation relabel = identity_permutation(g.order());
        std::shuffle(relabel.begin() + 1, relabel.end(), rng);
        const GModule r = relabel_module(m, relabel);
        for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(cohomology(m, k).group(), cohomology(r, k).group());
        ++cases;
      }
  EXPECT_GT(cases, 10);
}

TEST(Cohomology, FirstCohomologyWithTrivialActionIsHomFromAbelianization) {
  const std::vector<FiniteGroup> groups{FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::abelian({2, 2}),
                                        s3()};
  for (const auto& g : groups)
    for (long d : {2L, 3L}) {
      const GModule m = GModule::trivial(g, cyc(d));
      EXPECT_EQ(cohomology(m, 1).group(), hom_group(abelianization(g), cyc(d)).group)
          << "|G|=" << g.order() << " M=Z/" << d;
    }
}

TEST(Cohomology, KnownValues) {
  // H^k(Z/2 x Z/2; Z/2) = (Z/2)^{k+1}
  const GModule v = GModule::trivial(FiniteGroup::abelian({2, 2}), cyc(2));
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(cohomology(v, k).group().torsion(), IntVector(k + 1, 2));
  // H^2(Z/2; Z/4) = (Z/4)^G / norm = Z/2
  EXPECT_EQ(cohomology(GModule::trivial(FiniteGroup::cyclic(2), cyc(4)), 2).group(), cyc(2));
  // S_3 with Z/3 coefficients: H^1 = Hom(Z/2, Z/3) = 0
  EXPECT_TRUE(cohomology(GModule::trivial(s3(), cyc(3)), 1).group().is_trivial());
}

TEST(Cohomology, ClassCoordinatesAndRepresentatives) {
  const GModule m = GModule::trivial(FiniteGroup::abelian({2, 2}), cyc(2));
  const CohomologyGroup h = cohomology(m, 2);
  const auto reps = h.representatives();
  ASSERT_EQ(reps.size(), h.group().normal_rank());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    EXPECT_TRUE(h.is_cocycle(reps[i]));
    IntVector e(reps.size());
    e[i] = 1;
    EXPECT_EQ(h.group().reduce_normal(h.class_of(reps[i])), e);
  }
  // additivity: class of a sum is the sum of classes
  Cocycle s{2, reps[0].values};
  for (std::size_t j = 0; j < s.values.size(); ++j) s.values[j] += reps[1].values[j] + reps[2].values[j];
  IntVector expected(reps.size());
  expected[0] = expected[1] = expected[2] = 1;
  EXPECT_EQ(h.group().reduce_normal(h.class_of(s)), expected);
  // coboundaries have class zero
  const auto bar = bar_complex(m, 2);
  for (std::size_t j = 0; j < bar.group(1).generator_count(); ++j) {
    const Cocycle b{2, bar.differential(1).matrix().column(j)};
    EXPECT_EQ(h.group().reduce_normal(h.class_of(b)), IntVector(reps.size()));
  }
}

TEST(Derivations, Examples) {
  const FiniteGroup c2 = FiniteGroup::cyclic(2);
  const GModule z2 = GModule::trivial(c2, cyc(2));
  EXPECT_EQ(derivations(z2).group(), cyc(2));
  EXPECT_EQ(derivations(z2).group().order(), derivations_by_enumeration(z2));

  const GModule z3 = GModule::trivial(c2, cyc(3));
  EXPECT_TRUE(derivations(z3).group().is_trivial());

  const GModule neg = GModule::from_generator_action(c2, cyc(3), c2.generators(), {IntMatrix{{-1}}});
  EXPECT_EQ(derivations_by_enumeration(neg), 3u);
  EXPECT_EQ(derivations(neg).group(), cyc(3));
  EXPECT_TRUE(cohomology(neg, 1).group().is_trivial());
  EXPECT_TRUE(oracle_cohomology(neg, 1).is_trivial());
}

TEST(Derivations, MatchEnumerationOnAllSmallModules) {
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::abelian({2, 2}), s3()})
    for (long kind : {2L, 3L, 4L, 22L})
      for (const auto& m : all_modules(g, kind))
        EXPECT_EQ(derivations(m).group().order(), derivations_by_enumeration(m))
            << "|G|=" << g.order() << " M=" << m.base().describe();
}
