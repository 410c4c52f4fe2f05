#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ehr/relation.hpp"
#include "ehr/semigroup.hpp"

namespace ehr {

struct NamedOrder {
  std::string name;
  PartialOrder order;
};

/// A named example. `provenance` names the check the structure passes:
/// "check_ehresmann" or "check_ehresmann_order" (the latter for every
/// attached order).
struct ZooEntry {
  std::string name;
  FiniteBiunarySemigroup structure;
  std::vector<NamedOrder> orders;
  std::string provenance;
  std::string description;

  /// Throws Error{precondition} for an unknown order name.
  const PartialOrder& order(std::string_view order_name) const;
  OrderedSemigroup ordered(std::string_view order_name) const;
};

ZooEntry example_trivial();
/// {0, 1} with zero 0, D = R = 1; orders leq1 (1 <= 0) and leq2 (equality).
ZooEntry example_two_element_monoid();
/// Six transformations c, d, Px, Py, Pz, 1 of {x, y, z}; no orders.
ZooEntry example_orderless_band();
/// {empty, diagonal, full} in Rel({1,2}) under inclusion.
ZooEntry example_zero_one_nabla();

/// All binary relations on {1..k}, k <= 3, with inclusion. Element i is the
/// relation whose bit (a-1)*k + (b-1) is set for each pair (a, b).
/// Composition is left to right. Throws Error{too_large} for k > 3.
ZooEntry gen_rel(std::size_t k);
/// Partial transformations of {1..k}, as a subsemigroup of Rel.
ZooEntry gen_pt(std::size_t k);
/// Partial injections of {1..k}.
ZooEntry gen_pinj(std::size_t k);

/// Registry names in a fixed order.
std::vector<std::string> zoo_names();
/// Throws Error{precondition} for an unknown name.
ZooEntry zoo_entry(std::string_view name);

/// Every Ehresmann semigroup on {0..n-1}, each exactly once, sorted by
/// (mul, D, R). With up_to_iso, one canonical representative per
/// isomorphism class, sorted the same way. n must be 1..3, or 4 with
/// allow_four; otherwise Error{too_large}.
std::vector<FiniteBiunarySemigroup> enumerate_ehresmann_semigroups(
    std::size_t n, bool up_to_iso, unsigned threads = 1, bool allow_four = false);

/// Associative tables on n elements in lexicographic order (row-major).
std::vector<std::vector<Elem>> enumerate_semigroup_tables(std::size_t n,
                                                          unsigned threads = 1);

/// Least (mul, D, R) encoding over all relabellings of the carrier.
std::vector<Elem> canonical_encoding(const FiniteBiunarySemigroup& s);

}  // namespace ehr
