#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "ehr/orders.hpp"
#include "ehr/zoo.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"
#include "replay.hpp"

using namespace ehr;

namespace {

void expect_order_replays(const FiniteBiunarySemigroup& s, const Relation& rel,
                          const LawReport& r) {
  expect_replays(r, [&](const std::string& clause, std::span<const Elem> w) {
    return order_law_fails_at(s, rel, clause, w);
  });
}

Relation naive_leq(const FiniteBiunarySemigroup& s, char which) {
  Relation rel(s.size());
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < s.size(); ++b) {
      Elem v = which == 'l'   ? s.mul(s.D(a), b)
               : which == 'r' ? s.mul(b, s.R(a))
                              : s.mul(s.mul(s.D(a), b), s.R(a));
      if (v == a) rel.set(a, b);
    }
  return rel;
}

std::vector<const FiniteBiunarySemigroup*> small_structures() {
  static const auto all = [] {
    std::vector<FiniteBiunarySemigroup> out;
    for (std::size_t n = 1; n <= 3; ++n)
      for (auto& s : enumerate_ehresmann_semigroups(n, false)) out.push_back(std::move(s));
    return out;
  }();
  std::vector<const FiniteBiunarySemigroup*> ptrs;
  for (const auto& s : all) ptrs.push_back(&s);
  return ptrs;
}

}  // namespace

TEST(Relation, ClosureAndViolations) {
  Relation r(3);
  r.set(0, 1);
  r.set(1, 2);
  const auto c = reflexive_transitive_closure(r);
  EXPECT_TRUE(c(0, 2));
  EXPECT_TRUE(c(1, 1));
  EXPECT_TRUE(is_partial_order(c));
  Relation cyc = c;
  cyc.set(2, 0);
  EXPECT_TRUE(antisymmetry_violation(cyc).has_value());
  EXPECT_THROW(PartialOrder(reflexive_transitive_closure(cyc)), Error);
  EXPECT_EQ(c.bit_string(), "111011001");
  EXPECT_EQ(c.down_set(2), (std::vector<Elem>{0, 1, 2}));
}

TEST(DerivedOrders, MonoidWithZeroIsDiscrete) {
  const auto d = derive_orders(fixtures::monoid_with_zero());
  EXPECT_EQ(d.leq_e, PartialOrder::equality(2));
  const auto one = derive_orders(fixtures::one_element());
  EXPECT_EQ(one.leq_l, one.leq_e);
  EXPECT_EQ(one.leq_r, one.leq_e);
}

TEST(DerivedOrders, PartialTransformationsLeftEqualsE) {
  const auto d = derive_orders(gen_pt(2).structure);
  EXPECT_EQ(d.leq_l, d.leq_e);
}

TEST(DerivedOrders, MatchNaiveDefinitionsAndPermute) {
  std::vector<FiniteBiunarySemigroup> extra;
  for (const char* name : {"rel-2", "pt-2", "pinj-2", "zero-one-nabla", "orderless-band"})
    extra.push_back(zoo_entry(name).structure);
  auto structures = small_structures();
  for (const auto& s : extra) structures.push_back(&s);
  for (const auto* s : structures) {
    const auto d = derive_orders(*s);
    EXPECT_EQ(d.leq_l.relation(), naive_leq(*s, 'l'));
    EXPECT_EQ(d.leq_r.relation(), naive_leq(*s, 'r'));
    EXPECT_EQ(d.leq_e.relation(), naive_leq(*s, 'e'));
    EXPECT_EQ(d.leq_l.relation().compose(d.leq_r.relation()), d.leq_e.relation());
    EXPECT_EQ(d.leq_r.relation().compose(d.leq_l.relation()), d.leq_e.relation());
  }
}

TEST(DerivedOrders, RequiresEhresmann) {
  try {
    derive_orders(fixtures::left_zero_band());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(EhresmannOrder, MonoidOrders) {
  const auto m = example_two_element_monoid();
  EXPECT_TRUE(check_ehresmann_order(m.ordered("leq1")).holds);
  EXPECT_TRUE(check_ehresmann_order(m.ordered("leq2")).holds);
  EXPECT_TRUE(m.order("leq1")(1, 0));
}

TEST(EhresmannOrder, TransformationBandEqualityFailsOS6) {
  const auto s = fixtures::transformation_band();
  const OrderedSemigroup os(s, PartialOrder::equality(6));
  const auto r = check_ehresmann_order(os);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.clause, "OS6");
  EXPECT_EQ(r.witness, (std::vector<Elem>{s.find("c"), s.find("Pz")}));
  expect_order_replays(s, os.order.relation(), r);
}

TEST(OsProperties, MonoidOrders) {
  const auto m = example_two_element_monoid();
  EXPECT_TRUE(check_os_property(m.ordered("leq1"), OsProperty::OS7).holds);
  const auto os4 = check_os_property(m.ordered("leq1"), OsProperty::OS4);
  ASSERT_FALSE(os4.holds);
  EXPECT_EQ(os4.witness, (std::vector<Elem>{1, 0}));
  EXPECT_TRUE(check_os_property(m.ordered("leq2"), OsProperty::OS4A).holds);
}

TEST(OrderFacts, AgreementAndContainment) {
  const auto m = example_two_element_monoid();
  EXPECT_TRUE(semilattice_order_agreement(m.ordered("leq1")).holds);
  EXPECT_TRUE(leq_e_containment(m.ordered("leq1")).holds);
  EXPECT_TRUE(leq_e_containment(m.ordered("leq2")).holds);
  const auto rel = gen_rel(2);
  EXPECT_EQ(projections(rel.structure).members.size(), 4u);
  EXPECT_TRUE(semilattice_order_agreement(rel.ordered("inclusion")).holds);
  EXPECT_TRUE(leq_e_containment(rel.ordered("inclusion")).holds);
}

TEST(LeqEPartialLaws, Examples) {
  const auto band = check_leq_e_partial_laws(fixtures::transformation_band());
  for (const char* law : {"OS1", "OS2", "OS6", "OSI"}) EXPECT_TRUE(band.part(law)->holds) << law;
  EXPECT_FALSE(band.part("OS3")->holds);
  EXPECT_FALSE(band.holds);
  EXPECT_TRUE(check_leq_e_partial_laws(fixtures::monoid_with_zero()).holds);
  EXPECT_TRUE(check_leq_e_partial_laws(gen_pt(2).structure).holds);
}

TEST(DeBarros, Examples) {
  EXPECT_FALSE(is_de_barros(fixtures::transformation_band()).holds);
  EXPECT_TRUE(is_de_barros(fixtures::monoid_with_zero()).holds);
  EXPECT_TRUE(is_de_barros(gen_pt(2).structure).holds);
}

TEST(Enumeration, NamedExamples) {
  const auto m = example_two_element_monoid();
  const auto orders = enumerate_ehresmann_orders(m.structure);
  ASSERT_EQ(orders.size(), 2u);
  EXPECT_EQ(enumerate_ehresmann_orders(m.structure, true).size(), 2u);
  EXPECT_TRUE(std::ranges::find(orders, m.order("leq1")) != orders.end());
  EXPECT_TRUE(std::ranges::find(orders, m.order("leq2")) != orders.end());
  EXPECT_TRUE(enumerate_ehresmann_orders(fixtures::transformation_band()).empty());
  EXPECT_EQ(enumerate_ehresmann_orders(fixtures::one_element()).size(), 1u);
}

TEST(Enumeration, MatchesBruteForceOnSmallStructures) {
  // The brute-force oracle is limited to four elements.
  std::vector<FiniteBiunarySemigroup> extra = {gen_pt(1).structure, example_zero_one_nabla().structure};
  auto structures = small_structures();
  for (const auto& s : extra) structures.push_back(&s);
  for (const auto* s : structures) {
    const auto expected = oracle::ehresmann_orders(oracle::table_of(*s));
    const auto found = enumerate_ehresmann_orders(*s);
    ASSERT_EQ(found.size(), expected.size());
    for (std::size_t i = 0; i < found.size(); ++i) {
      EXPECT_TRUE(std::ranges::find(expected, oracle::rel_of(found[i].relation())) !=
                  expected.end());
      if (i > 0) EXPECT_LT(found[i - 1].relation().bit_string(), found[i].relation().bit_string());
    }
  }
}

TEST(Enumeration, UpToIsoKeepsOneOrderPerOrbit) {
  for (const auto* s : small_structures()) {
    const auto all = enumerate_ehresmann_orders(*s);
    const auto reps = enumerate_ehresmann_orders(*s, true);
    // Brute-force orbits under every permutation that preserves mul, D and R.
    std::vector<Elem> perm(s->size());
    std::iota(perm.begin(), perm.end(), Elem{0});
    std::vector<std::vector<Elem>> autos;
    do {
      bool ok = true;
      for (Elem a = 0; a < s->size() && ok; ++a) {
        ok = perm[s->D(a)] == s->D(perm[a]) && perm[s->R(a)] == s->R(perm[a]);
        for (Elem b = 0; b < s->size() && ok; ++b)
          ok = perm[s->mul(a, b)] == s->mul(perm[a], perm[b]);
      }
      if (ok) autos.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::set<std::string> orbit_mins;
    for (const auto& o : all) {
      std::string best = o.relation().bit_string();
      for (const auto& p : autos) {
        Relation q(s->size());
        for (auto [a, b] : o.relation().pairs()) q.set(p[a], p[b]);
        best = std::min(best, q.bit_string());
      }
      orbit_mins.insert(best);
    }
    ASSERT_EQ(reps.size(), orbit_mins.size());
    for (const auto& r : reps) EXPECT_TRUE(orbit_mins.contains(r.relation().bit_string()));
  }
}

TEST(SmallestOrder, Examples) {
  EXPECT_TRUE(smallest_order_check(fixtures::monoid_with_zero()).holds);
  EXPECT_TRUE(smallest_order_check(fixtures::one_element()).holds);
  for (const auto* s : small_structures())
    if (is_de_barros(*s).holds) EXPECT_TRUE(smallest_order_check(*s).holds);
}

TEST(Properties, OrderLawsOverSweep) {
  for (const auto* s : small_structures()) {
    const auto le = leq_e_relation(*s);
    const bool de_barros = is_de_barros(*s).holds;
    bool some_os4 = false;
    for (const auto& o : enumerate_ehresmann_orders(*s)) {
      const OrderedSemigroup os(*s, o);
      EXPECT_TRUE(le.subset_of(o.relation()));
      EXPECT_TRUE(semilattice_order_agreement(os).holds);
      const bool os4 = check_os_property(os, OsProperty::OS4).holds;
      if (os4) {
        some_os4 = true;
        EXPECT_EQ(o.relation(), le);
        EXPECT_TRUE(check_os_property(os, OsProperty::OS7).holds);
      }
      const bool is_e = o.relation() == le;
      EXPECT_EQ(check_os_property(os, OsProperty::OS4A).holds,
                check_left_restriction_with_range(*s).holds && is_e);
      EXPECT_EQ(check_os_property(os, OsProperty::OS4B).holds,
                check_right_restriction_with_domain(*s).holds && is_e);
      for (auto p : {OsProperty::OS4, OsProperty::OS4A, OsProperty::OS4B, OsProperty::OS7}) {
        const auto r = check_os_property(os, p);
        expect_order_replays(*s, o.relation(), r);
      }
    }
    EXPECT_EQ(some_os4, de_barros);
    if (de_barros) EXPECT_TRUE(check_os_property(OrderedSemigroup(*s, PartialOrder(le)), OsProperty::OS4).holds);
  }
}

TEST(Properties, HomomorphismsBetweenDeBarrosPreserveLeqE) {
  std::vector<const FiniteBiunarySemigroup*> db;
  for (const auto* s : small_structures())
    if (s->size() <= 2 && is_de_barros(*s).holds) db.push_back(s);
  for (const auto* s : db)
    for (const auto* t : db) {
      const OrderedSemigroup src(*s, PartialOrder(leq_e_relation(*s)));
      const OrderedSemigroup tgt(*t, PartialOrder(leq_e_relation(*t)));
      HomCandidate f{"S", "T", std::vector<Elem>(s->size(), 0)};
      while (true) {
        if (is_ehresmann_hom(f, *s, *t).holds) EXPECT_TRUE(is_ordered_hom(f, src, tgt).holds);
        std::size_t pos = f.map.size();
        bool done = true;
        while (pos-- > 0) {
          if (++f.map[pos] < t->size()) {
            done = false;
            break;
          }
          f.map[pos] = 0;
        }
        if (done) break;
      }
    }
}

TEST(Properties, RandomRelationMutationsReplay) {
  // Removing pairs from inclusion on Rel({1,2}) produces many broken orders;
  // every reported witness must replay.
  const auto rel = gen_rel(2);
  const auto& s = rel.structure;
  const auto base = rel.order("inclusion").relation();
  std::mt19937 rng(7);
  const auto pairs = base.pairs();
  for (int trial = 0; trial < 200; ++trial) {
    Relation r = base;
    for (int k = 0; k < 3; ++k) {
      auto [a, b] = pairs[rng() % pairs.size()];
      if (a != b) r.set(a, b, false);
    }
    r = reflexive_transitive_closure(r);
    if (!is_partial_order(r)) continue;
    const OrderedSemigroup os(s, PartialOrder(r));
    const auto report = check_ehresmann_order(os);
    EXPECT_EQ(report.holds, oracle::ehresmann_order(oracle::table_of(s), oracle::rel_of(r)));
    expect_order_replays(s, r, report);
  }
}
