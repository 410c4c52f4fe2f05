#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ehr/law_report.hpp"
#include "ehr/relation.hpp"
#include "ehr/semigroup.hpp"

namespace ehr {

/// The algebraically defined orders of an Ehresmann semigroup:
///   a <=_l b  iff  a = D(a)b
///   a <=_r b  iff  a = bR(a)
///   a <=_e b  iff  a = D(a)bR(a)   (= <=_l ; <=_r = <=_r ; <=_l)
struct DerivedOrders {
  PartialOrder leq_l;
  PartialOrder leq_r;
  PartialOrder leq_e;
};

// Raw relations, no checks.
Relation leq_l_relation(const FiniteBiunarySemigroup& s);
Relation leq_r_relation(const FiniteBiunarySemigroup& s);
Relation leq_e_relation(const FiniteBiunarySemigroup& s);

/// Throws Error{precondition} if s is not Ehresmann and
/// Error{internal_inconsistency} if a derived relation is not a partial order
/// or the composite identity fails.
DerivedOrders derive_orders(const FiniteBiunarySemigroup& s);

/// Each Ehresmann-order law for an arbitrary relation on s, as separate
/// reports named OS1, OS2, OS3, OS6, OSI. Witness orders:
///   OS1 clauses OS1-reflexive (a), OS1-antisymmetric (a,b), OS1-transitive (a,b,c)
///   OS2 (a,b), OS3 (a,b,c,d), OS6 (a,e), OSI (a,e)
LawReport check_os1(const FiniteBiunarySemigroup& s, const Relation& rel);
LawReport check_os2(const FiniteBiunarySemigroup& s, const Relation& rel);
LawReport check_os3(const FiniteBiunarySemigroup& s, const Relation& rel);
LawReport check_os6(const FiniteBiunarySemigroup& s, const Relation& rel);
LawReport check_osi(const FiniteBiunarySemigroup& s, const Relation& rel);

/// Associativity, L1-L4, and OS1-OS3, OS6, OSI.
LawReport check_ehresmann_order(const OrderedSemigroup& os);

enum class OsProperty { OS4, OS4A, OS4B, OS7 };
const char* to_string(OsProperty p);

/// Witnesses: OS4/OS4A/OS4B (s,t); OS7 (s,t,u) with u <= st.
LawReport check_os_property(const OrderedSemigroup& os, OsProperty prop);

/// e <= f iff e = ef, over projections (e,f).
LawReport semilattice_order_agreement(const OrderedSemigroup& os);

/// <=_e is contained in the order; witness (a,b) with a <=_e b, a !<= b.
LawReport leq_e_containment(const OrderedSemigroup& os);

/// OS1, OS2, OS6, OSI and OS3 for <=_e. The first four always hold on an
/// Ehresmann semigroup; a failure there throws Error{internal_inconsistency}.
LawReport check_leq_e_partial_laws(const FiniteBiunarySemigroup& s);

/// <=_e satisfies OS3. Cross-checked against check_de_barros_equational;
/// disagreement throws Error{internal_inconsistency}.
LawReport is_de_barros(const FiniteBiunarySemigroup& s);

/// All Ehresmann orders on s, sorted by bit_string(). The search starts at
/// <=_e (every Ehresmann order contains it) and extends by closure under
/// transitivity, OS2 and OS3, pruning on antisymmetry and OSI. With
/// up_to_iso, one representative (the least bit string) per orbit under the
/// automorphism group of s is kept.
std::vector<PartialOrder> enumerate_ehresmann_orders(
    const FiniteBiunarySemigroup& s, bool up_to_iso = false);

/// Automorphisms of the biunary semigroup, each as the image vector,
/// in lexicographic order.
std::vector<std::vector<Elem>> automorphisms(const FiniteBiunarySemigroup& s);

/// <=_e is an Ehresmann order and lies below every other one.
LawReport smallest_order_check(const FiniteBiunarySemigroup& s);

/// Replays one atomic order clause for `rel` on s. True when it fails.
bool order_law_fails_at(const FiniteBiunarySemigroup& s, const Relation& rel,
                        std::string_view clause, std::span<const Elem> witness);

}  // namespace ehr
