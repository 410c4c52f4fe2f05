#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ehr/law_report.hpp"
#include "ehr/relation.hpp"
#include "ehr/types.hpp"

namespace ehr {

/// A semigroup on 0..n-1 given by its Cayley table, with unary maps D and R.
/// Immutable after construction; only index validity is enforced here, every
/// algebraic law is checked by the functions below.
class FiniteBiunarySemigroup {
 public:
  FiniteBiunarySemigroup() = default;
  /// `mul` is row-major: mul[a * n + b] = ab. Throws Error{structural} on
  /// wrong sizes or out-of-range entries.
  FiniteBiunarySemigroup(std::size_t n, std::vector<Elem> mul,
                         std::vector<Elem> dmap, std::vector<Elem> rmap,
                         std::vector<std::string> names = {});

  std::size_t size() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[a * n_ + b]; }
  Elem D(Elem a) const noexcept { return dmap_[a]; }
  Elem R(Elem a) const noexcept { return rmap_[a]; }

  std::span<const Elem> mul_table() const noexcept { return mul_; }
  std::span<const Elem> dmap() const noexcept { return dmap_; }
  std::span<const Elem> rmap() const noexcept { return rmap_; }
  std::span<const std::string> names() const noexcept { return names_; }
  const std::string& name(Elem a) const { return names_[a]; }

  /// Index of the element with this display name, or kUndefined.
  Elem find(std::string_view name) const;

  /// Table equality; display names are metadata and do not take part.
  bool same_tables(const FiniteBiunarySemigroup& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<Elem> mul_;
  std::vector<Elem> dmap_;
  std::vector<Elem> rmap_;
  std::vector<std::string> names_;
};

/// A biunary semigroup paired with a partial order on the same carrier.
/// The Ehresmann-order laws are checked, never assumed.
struct OrderedSemigroup {
  FiniteBiunarySemigroup base;
  PartialOrder order;

  OrderedSemigroup() = default;
  OrderedSemigroup(FiniteBiunarySemigroup s, PartialOrder o);
};

struct ProjectionSet {
  std::vector<Elem> members;  // ascending
  bool contains(Elem e) const;
};

/// Ascending {D(s)} and {R(s)}.
std::vector<Elem> d_image(const FiniteBiunarySemigroup& s);
std::vector<Elem> r_image(const FiniteBiunarySemigroup& s);

LawReport check_associativity(const FiniteBiunarySemigroup& s);

/// L1-L4. Clauses are L1a/L1b, L2a/L2b, L3a/L3b and L4.
LawReport check_localisable(const FiniteBiunarySemigroup& s);

/// Associativity, localisable, and D(s)D(t) = D(t)D(s).
LawReport check_ehresmann(const FiniteBiunarySemigroup& s);

/// Throws Error{inconsistent_projections} if the D and R images differ or
/// do not form a band.
ProjectionSet projections(const FiniteBiunarySemigroup& s);

/// sD(t) = D(st)s
LawReport check_left_restriction_with_range(const FiniteBiunarySemigroup& s);
/// R(t)s = sR(ts)
LawReport check_right_restriction_with_domain(const FiniteBiunarySemigroup& s);
LawReport check_restriction(const FiniteBiunarySemigroup& s);

/// st = su implies R(s)t = R(s)u, by full triple enumeration. The verdict is
/// always computed; `applicable` is false unless s is a left restriction
/// semigroup with range, the only setting in which "functional" is defined.
LawReport check_functional(const FiniteBiunarySemigroup& s);

/// set = D(set) st R(set) for all s, t and all projections e.
/// Witness order is (s, e, t).
LawReport check_de_barros_equational(const FiniteBiunarySemigroup& s);

/// Preservation of mul, D and R. Clauses hom-mul (a,b), hom-D (a), hom-R (a).
LawReport is_ehresmann_hom(const HomCandidate& f,
                           const FiniteBiunarySemigroup& src,
                           const FiniteBiunarySemigroup& tgt);

/// is_ehresmann_hom plus order preservation (clause hom-order (a,b)).
LawReport is_ordered_hom(const HomCandidate& f, const OrderedSemigroup& src,
                         const OrderedSemigroup& tgt);

/// Re-evaluates one atomic semigroup clause at a witness. Returns true when
/// the instance fails. Throws Error{precondition} for an unknown clause.
bool semigroup_law_fails_at(const FiniteBiunarySemigroup& s,
                            std::string_view clause,
                            std::span<const Elem> witness);

bool hom_law_fails_at(const HomCandidate& f, const OrderedSemigroup& src,
                      const OrderedSemigroup& tgt, std::string_view clause,
                      std::span<const Elem> witness);

}  // namespace ehr
