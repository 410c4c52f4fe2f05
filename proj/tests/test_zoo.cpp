#include <algorithm>
#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "ehr/category.hpp"
#include "ehr/orders.hpp"
#include "ehr/zoo.hpp"
#include "oracle.hpp"

using namespace ehr;

namespace {

using Encoding = std::tuple<std::vector<Elem>, std::vector<Elem>, std::vector<Elem>>;

Encoding encode(const FiniteBiunarySemigroup& s) {
  return {{s.mul_table().begin(), s.mul_table().end()},
          {s.dmap().begin(), s.dmap().end()},
          {s.rmap().begin(), s.rmap().end()}};
}

// Every table in n^(n*n), every D and R in n^n.
std::set<Encoding> brute_force_ehresmann(std::size_t n) {
  const auto cells = n * n;
  std::vector<Elem> mul(cells, 0);
  std::vector<std::vector<Elem>> tables;
  for (;;) {
    if (oracle::associative({n, mul, {}, {}})) tables.push_back(mul);
    std::size_t i = 0;
    while (i < cells && ++mul[i] == n) mul[i++] = 0;
    if (i == cells) break;
  }
  std::vector<std::vector<Elem>> maps;
  std::vector<Elem> m(n, 0);
  for (;;) {
    maps.push_back(m);
    std::size_t i = 0;
    while (i < n && ++m[i] == n) m[i++] = 0;
    if (i == n) break;
  }
  std::set<Encoding> out;
  for (const auto& t : tables)
    for (const auto& d : maps)
      for (const auto& r : maps)
        if (oracle::ehresmann({n, t, d, r})) out.insert({t, d, r});
  return out;
}

FiniteBiunarySemigroup sub_by_names(const FiniteBiunarySemigroup& s,
                                    const std::vector<Elem>& members) {
  const auto n = members.size();
  std::vector<Elem> mul, d, r;
  std::vector<std::string> names;
  auto index = [&](Elem x) {
    return static_cast<Elem>(std::find(members.begin(), members.end(), x) - members.begin());
  };
  for (Elem a : members) {
    for (Elem b : members) mul.push_back(index(s.mul(a, b)));
    d.push_back(index(s.D(a)));
    r.push_back(index(s.R(a)));
    names.push_back(s.name(a));
  }
  return FiniteBiunarySemigroup(n, mul, d, r, names);
}

}  // namespace

TEST(Zoo, TwoElementMonoid) {
  const auto e = example_two_element_monoid();
  EXPECT_TRUE(check_ehresmann(e.structure).holds);
  const auto orders = enumerate_ehresmann_orders(e.structure);
  ASSERT_EQ(orders.size(), 2u);
  EXPECT_TRUE(std::ranges::count(orders, e.order("leq1")) == 1);
  EXPECT_TRUE(std::ranges::count(orders, e.order("leq2")) == 1);
  EXPECT_TRUE(e.order("leq1")(1, 0));
  EXPECT_EQ(e.order("leq2"), PartialOrder::equality(2));
  EXPECT_EQ(derive_orders(e.structure).leq_e, PartialOrder::equality(2));
  EXPECT_EQ(enumerate_ehresmann_orders(e.structure, true).size(), 2u);
}

TEST(Zoo, OrderlessBand) {
  const auto e = example_orderless_band();
  const auto& s = e.structure;
  EXPECT_TRUE(check_ehresmann(s).holds);
  EXPECT_TRUE(e.orders.empty());
  EXPECT_EQ(s.mul(s.find("Py"), s.find("c")), s.find("Py"));
  EXPECT_EQ(s.mul(s.find("Pz"), s.find("c")), s.find("Px"));
  for (const char* p : {"Px", "Py", "Pz"}) EXPECT_EQ(s.D(s.find(p)), s.find("Pz"));
  EXPECT_TRUE(enumerate_ehresmann_orders(s).empty());
  EXPECT_FALSE(check_de_barros_equational(s).holds);
}

TEST(Zoo, ZeroOneNabla) {
  const auto e = example_zero_one_nabla();
  const auto& s = e.structure;
  EXPECT_TRUE(check_ehresmann_order(e.ordered("inclusion")).holds);
  EXPECT_EQ(s.D(0), 0u);
  EXPECT_EQ(s.R(0), 0u);
  EXPECT_EQ(s.D(2), 1u);
  EXPECT_EQ(s.D(1), 1u);
  EXPECT_FALSE(check_oc_property(category_of(e.ordered("inclusion")), OcLaw::OC8).holds);
  const auto sets = oracle::all_relations(2);
  // masks 0, 9, 15
  EXPECT_TRUE(sets[0].empty());
  EXPECT_EQ(sets[9], (oracle::Pairs{{1, 1}, {2, 2}}));
  EXPECT_EQ(sets[15].size(), 4u);
}

TEST(Zoo, Generators) {
  for (std::size_t k = 1; k <= 2; ++k) {
    const auto rel = gen_rel(k);
    EXPECT_EQ(rel.structure.size(), std::size_t{1} << (k * k));
    EXPECT_TRUE(check_ehresmann_order(rel.ordered("inclusion")).holds);
    const auto sets = oracle::all_relations(static_cast<int>(k));
    for (Elem a = 0; a < sets.size(); ++a)
      for (Elem b = 0; b < sets.size(); ++b)
        EXPECT_EQ(sets[rel.structure.mul(a, b)], oracle::compose(sets[a], sets[b]));
  }
  EXPECT_EQ(projections(gen_rel(2).structure).members.size(), 4u);
  EXPECT_EQ(gen_pt(1).structure.size(), 2u);
  EXPECT_EQ(gen_pt(2).structure.size(), 9u);
  EXPECT_EQ(gen_pt(3).structure.size(), 64u);
  EXPECT_EQ(gen_pinj(2).structure.size(), 7u);
  EXPECT_EQ(gen_pinj(3).structure.size(), 34u);
  EXPECT_TRUE(check_left_restriction_with_range(gen_pt(2).structure).holds);
  EXPECT_TRUE(check_functional(gen_pt(2).structure).holds);
  EXPECT_TRUE(check_restriction(gen_pinj(2).structure).holds);
  EXPECT_TRUE(check_ehresmann(gen_rel(3).structure).holds);
}

TEST(Zoo, GeneratorErrors) {
  for (auto gen : {gen_rel, gen_pt, gen_pinj}) {
    try {
      gen(4);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::too_large);
    }
    EXPECT_THROW(gen(0), Error);
  }
  EXPECT_THROW(zoo_entry("no-such-example"), Error);
}

TEST(Zoo, PartialMapsSitInsideRelations) {
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto rel = gen_rel(k).structure;
    for (const auto& sub : {gen_pt(k), gen_pinj(k)}) {
      const auto& s = sub.structure;
      std::vector<Elem> image;
      for (Elem a = 0; a < s.size(); ++a) {
        const Elem x = rel.find(s.name(a));
        ASSERT_NE(x, kUndefined) << s.name(a);
        image.push_back(x);
      }
      const HomCandidate f{sub.name, "rel", image};
      EXPECT_TRUE(is_ehresmann_hom(f, s, rel).holds) << sub.name;
      EXPECT_TRUE(is_ordered_hom(f, sub.ordered("inclusion"), gen_rel(k).ordered("inclusion")).holds);
      EXPECT_TRUE(sub_by_names(rel, image).same_tables(s));
    }
  }
}

TEST(Zoo, EveryEntryPassesItsProvenance) {
  for (const auto& name : zoo_names()) {
    const auto e = zoo_entry(name);
    EXPECT_EQ(e.name, name);
    if (e.provenance == "check_ehresmann") {
      EXPECT_TRUE(check_ehresmann(e.structure).holds) << name;
    } else {
      ASSERT_EQ(e.provenance, "check_ehresmann_order") << name;
      EXPECT_FALSE(e.orders.empty());
      if (e.structure.size() <= 64)
        for (const auto& o : e.orders)
          EXPECT_TRUE(check_ehresmann_order(OrderedSemigroup(e.structure, o.order)).holds) << name;
    }
  }
}

TEST(Zoo, DiagonalAndFullRealiseTheMonoidOrder) {
  const auto rel = gen_rel(2);
  const auto sub = sub_by_names(rel.structure, {15, 9});
  const auto m = example_two_element_monoid();
  EXPECT_TRUE(sub.same_tables(m.structure));
  const Elem members[] = {15, 9};
  Relation inc(2);
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b) inc.set(a, b, rel.order("inclusion")(members[a], members[b]));
  EXPECT_EQ(PartialOrder(inc), m.order("leq1"));
}

TEST(Zoo, RelOfOnePointIsNotTheMonoid) {
  const auto r1 = gen_rel(1).structure;
  EXPECT_EQ(r1.D(0), 0u);
  EXPECT_FALSE(r1.same_tables(example_two_element_monoid().structure));
}

TEST(Enumerate, MatchesBruteForce) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto expected = brute_force_ehresmann(n);
    std::set<Encoding> got;
    for (const auto& s : enumerate_ehresmann_semigroups(n, false)) {
      EXPECT_TRUE(check_ehresmann(s).holds);
      EXPECT_TRUE(got.insert(encode(s)).second) << "duplicate";
    }
    EXPECT_EQ(got, expected) << "n=" << n;
  }
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_ehresmann_semigroups(1, false).size(), 1u);
  EXPECT_EQ(enumerate_ehresmann_semigroups(2, false).size(), 6u);
  EXPECT_EQ(enumerate_ehresmann_semigroups(3, false).size(), 78u);
  EXPECT_EQ(enumerate_semigroup_tables(2).size(), 8u);
  EXPECT_EQ(enumerate_semigroup_tables(3).size(), 113u);
}

TEST(Enumerate, UpToIsoPicksOnePerClass) {
  for (std::size_t n = 1; n <= 3; ++n) {
    std::set<std::vector<Elem>> classes;
    for (const auto& s : enumerate_ehresmann_semigroups(n, false)) classes.insert(canonical_encoding(s));
    const auto reps = enumerate_ehresmann_semigroups(n, true);
    EXPECT_EQ(reps.size(), classes.size());
    std::set<std::vector<Elem>> seen;
    for (const auto& s : reps) EXPECT_TRUE(seen.insert(canonical_encoding(s)).second);
    EXPECT_EQ(seen, classes);
  }
}

TEST(Enumerate, CanonicalEncodingIsInvariant) {
  const auto s = example_orderless_band().structure;
  const std::vector<Elem> perm = {5, 3, 0, 4, 1, 2};
  const auto n = s.size();
  std::vector<Elem> mul(n * n), d(n), r(n);
  for (Elem a = 0; a < n; ++a) {
    d[perm[a]] = perm[s.D(a)];
    r[perm[a]] = perm[s.R(a)];
    for (Elem b = 0; b < n; ++b) mul[perm[a] * n + perm[b]] = perm[s.mul(a, b)];
  }
  EXPECT_EQ(canonical_encoding(FiniteBiunarySemigroup(n, mul, d, r)), canonical_encoding(s));
}

TEST(Enumerate, ContainsTheMonoid) {
  const auto m = example_two_element_monoid().structure;
  bool found = false;
  for (const auto& s : enumerate_ehresmann_semigroups(2, false)) found |= s.same_tables(m);
  EXPECT_TRUE(found);
}

TEST(Enumerate, StableAcrossThreadCounts) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (bool iso : {false, true}) {
      const auto a = enumerate_ehresmann_semigroups(n, iso, 1);
      const auto b = enumerate_ehresmann_semigroups(n, iso, 4);
      ASSERT_EQ(a.size(), b.size());
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i].same_tables(b[i]));
    }
  EXPECT_EQ(enumerate_semigroup_tables(3, 1), enumerate_semigroup_tables(3, 3));
}

TEST(Enumerate, SizeLimits) {
  for (std::size_t n : {0, 5}) {
    try {
      enumerate_ehresmann_semigroups(n, false);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::too_large);
    }
  }
  EXPECT_THROW(enumerate_ehresmann_semigroups(4, false), Error);
}
