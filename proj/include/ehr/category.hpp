#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ehr/law_report.hpp"
#include "ehr/relation.hpp"
#include "ehr/semigroup.hpp"

namespace ehr {

/// A small category as a partial algebra (C, o, D, R). Composition is a
/// partial n x n table with kUndefined marking undefined entries; composites
/// read left to right, so x o y is "x then y".
class FiniteCategory {
 public:
  FiniteCategory() = default;
  /// Throws Error{structural} on wrong sizes or out-of-range entries.
  FiniteCategory(std::size_t n, std::vector<Elem> comp, std::vector<Elem> dmap,
                 std::vector<Elem> rmap, std::vector<std::string> names = {});

  std::size_t size() const noexcept { return n_; }
  Elem D(Elem x) const noexcept { return dmap_[x]; }
  Elem R(Elem x) const noexcept { return rmap_[x]; }
  /// kUndefined when x o y does not exist.
  Elem comp(Elem x, Elem y) const noexcept { return comp_[x * n_ + y]; }
  bool composable(Elem x, Elem y) const noexcept { return comp(x, y) != kUndefined; }

  bool is_identity(Elem x) const;
  /// Ascending D(C).
  const std::vector<Elem>& identities() const noexcept { return identities_; }

  std::span<const Elem> comp_table() const noexcept { return comp_; }
  std::span<const Elem> dmap() const noexcept { return dmap_; }
  std::span<const Elem> rmap() const noexcept { return rmap_; }
  std::span<const std::string> names() const noexcept { return names_; }
  const std::string& name(Elem x) const { return names_[x]; }

  bool same_tables(const FiniteCategory& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<Elem> comp_;
  std::vector<Elem> dmap_;
  std::vector<Elem> rmap_;
  std::vector<std::string> names_;
  std::vector<Elem> identities_;
};

/// A category with a partial order and a meet table on its identities.
class FiniteOrderedCategory {
 public:
  FiniteOrderedCategory() = default;
  /// `meet` is n x n, defined (not kUndefined) only on identity pairs. When
  /// empty it is derived from the order as the greatest lower bound where
  /// one exists.
  FiniteOrderedCategory(FiniteCategory cat, PartialOrder order,
                        std::vector<Elem> meet = {});

  const FiniteCategory& category() const noexcept { return cat_; }
  const PartialOrder& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return cat_.size(); }
  Elem D(Elem x) const noexcept { return cat_.D(x); }
  Elem R(Elem x) const noexcept { return cat_.R(x); }
  Elem comp(Elem x, Elem y) const noexcept { return cat_.comp(x, y); }
  bool leq(Elem a, Elem b) const noexcept { return order_(a, b); }
  Elem meet(Elem e, Elem f) const noexcept { return meet_[e * size() + f]; }
  std::span<const Elem> meet_table() const noexcept { return meet_; }
  const std::vector<Elem>& identities() const noexcept { return cat_.identities(); }
  bool is_identity(Elem x) const { return cat_.is_identity(x); }
  const std::string& name(Elem x) const { return cat_.name(x); }
  std::span<const std::string> names() const noexcept { return cat_.names(); }
  /// Elements below x, ascending.
  const std::vector<Elem>& down(Elem x) const { return down_[x]; }

  bool same_structure(const FiniteOrderedCategory& other) const;

 private:
  FiniteCategory cat_;
  PartialOrder order_;
  std::vector<Elem> meet_;
  std::vector<std::vector<Elem>> down_;
};

/// Left action D(C) x C -> C and right action C x D(C) -> C, stored n x n:
/// left[e * n + x] = e.x, right[x * n + e] = x.e, kUndefined off D(C).
struct Biaction {
  std::size_t n = 0;
  std::vector<Elem> left;
  std::vector<Elem> right;

  Elem act_left(Elem e, Elem x) const { return left[e * n + x]; }
  Elem act_right(Elem x, Elem e) const { return right[x * n + e]; }
};

/// Category axioms: composability iff R(x) = D(y), units, D/R of identities
/// and composites, associativity.
LawReport check_category(const FiniteCategory& c);

/// The underlying category of an Ehresmann semigroup: x o y = xy exactly
/// when R(x) = D(y).
FiniteCategory category_of(const FiniteBiunarySemigroup& s);

/// Ordered version; meet(e, f) = ef on projections. Throws
/// Error{not_ordered_ehresmann} unless check_ehresmann_order holds.
FiniteOrderedCategory category_of(const OrderedSemigroup& os);

/// OC1 (category + poset), OC2, OC3.
LawReport check_omega_structured(const FiniteOrderedCategory& c);

/// max{y <= x : D(y) <= e} when it exists and has domain e; nullopt
/// otherwise. Requires e in D(C) and e <= D(x) (Error{precondition}).
std::optional<Elem> find_restriction(const FiniteOrderedCategory& c, Elem e, Elem x);
std::optional<Elem> find_corestriction(const FiniteOrderedCategory& c, Elem x, Elem e);

/// e|x; throws Error{oc6_violation} when OC6a fails at (e, x).
Elem restriction(const FiniteOrderedCategory& c, Elem e, Elem x);
/// x|e; throws Error{oc6_violation} when OC6b fails at (x, e).
Elem corestriction(const FiniteOrderedCategory& c, Elem x, Elem e);

enum class OcLaw { OC4, OC4A, OC4B, OC6, OC6a, OC6b, OC7, OC7p, OC8, OC8a, OC8b, OCI };
const char* to_string(OcLaw law);

/// Witness orders: OC4/OC4A/OC4B (a,b); OC6a (e,x); OC6b (x,e);
/// OC7/OC7' (b,c,a) with a <= b o c; OC8a (e,x); OC8b (x,e); OCI (a,e).
LawReport check_oc_property(const FiniteOrderedCategory& c, OcLaw law);

/// (D(C), <=) is a meet-semilattice and the stored meet is its glb.
LawReport check_meet_semilattice(const FiniteOrderedCategory& c);

/// OC8a <=> OC4A and OC6, and OC8 <=> OC4A, OC4B and OC6, each side
/// evaluated on its own.
LawReport check_prop_oc_equivalences(const FiniteOrderedCategory& c);

/// Omega-structured, OC6, OC7', OCI, and meet-semilattice identities.
LawReport check_ehresmann_ordered_category(const FiniteOrderedCategory& c);

/// The seven conditions for (C, o, D, R, <=_l, <=_r) to be an Ehresmann
/// category. Restriction is taken in (C, <=_l) and corestriction in
/// (C, <=_r), both through OC8.
LawReport check_ehresmann_category_two_orders(const FiniteCategory& c,
                                              const PartialOrder& leq_l,
                                              const PartialOrder& leq_r);

/// e.x = (e ^ D(x))|x and x.e = x|(R(x) ^ e).
/// Throws Error{oc6_violation} if a needed restriction does not exist.
Biaction derive_biaction(const FiniteOrderedCategory& c);

/// Axioms E1-E6 for a biaction on c, with the meet table as the semilattice.
LawReport verify_biaction(const FiniteOrderedCategory& c, const Biaction& b);

/// Pseudoproduct s (x) t = s|(R(s) ^ D(t)) o (R(s) ^ D(t))|t, with D, R and
/// the order carried over. Throws Error{oc6_violation} on an undefined
/// instance.
OrderedSemigroup semigroup_of(const FiniteOrderedCategory& c);

/// semigroup_of(category_of(os)) == os and category_of(semigroup_of(c)) == c
/// for c = category_of(os).
LawReport esn_round_trip(const OrderedSemigroup& os);

/// Functor conditions plus the three morphism bullets (order, meets,
/// restriction/corestriction). Parts: functor, order-preserving,
/// meet-preserving, restriction-preserving.
LawReport is_eoc_morphism(const FunctorCandidate& f, const FiniteOrderedCategory& c1,
                          const FiniteOrderedCategory& c2);

inline constexpr std::uint64_t kDefaultMapCeiling = 10'000'000;

/// Over every total map S -> T: is_ordered_hom agrees with is_eoc_morphism on
/// the categories, and every passing map preserves the biaction. Throws
/// Error{too_large} when |T|^|S| exceeds the ceiling.
LawReport morphism_correspondence(const OrderedSemigroup& s, const OrderedSemigroup& t,
                                  std::uint64_t ceiling = kDefaultMapCeiling);

/// x o t = x o u implies t = u for every x; witness (x,t,u).
LawReport check_every_element_epi(const FiniteCategory& c);

/// Inductive_1: Omega-structured, OC8, meet-semilattice.
LawReport check_inductive1(const FiniteOrderedCategory& c);

/// The semigroup/category correspondences for the special classes. Each part
/// is a biconditional; `facts` record both sides.
LawReport check_special_correspondences(const OrderedSemigroup& os);

/// s <=_l t iff D(s) <= D(t) and s = D(s)|t; s <=_r t iff R(s) <= R(t) and
/// s = t|R(s). Pairs where the restriction is undefined are unrelated.
Relation category_leq_l(const FiniteOrderedCategory& c);
Relation category_leq_r(const FiniteOrderedCategory& c);

/// Replays one atomic category clause. True when the instance fails.
bool category_law_fails_at(const FiniteOrderedCategory& c, std::string_view clause,
                           std::span<const Elem> witness);

}  // namespace ehr
