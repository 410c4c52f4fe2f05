#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ehr/types.hpp"

namespace ehr {

/// Verdict for one law (or a conjunction of laws).
///
/// When `holds` is false, `clause` names the atomic law that failed and
/// `witness` is the lexicographically least instance of it, in the clause's
/// variable order. Composite reports keep their sub-verdicts in `parts` and
/// lift the first failing part's clause and witness.
struct LawReport {
  std::string law;
  bool holds = true;
  std::string clause;
  std::vector<Elem> witness;
  std::string detail;
  /// False when the law was evaluated outside the class it is defined on.
  bool applicable = true;
  std::vector<LawReport> parts;
  /// Named boolean side results, e.g. both sides of a biconditional.
  std::vector<std::pair<std::string, bool>> facts;

  static LawReport pass(std::string law) {
    LawReport r;
    r.law = std::move(law);
    return r;
  }

  static LawReport fail(std::string law, std::string clause,
                        std::vector<Elem> witness, std::string detail) {
    LawReport r;
    r.law = std::move(law);
    r.holds = false;
    r.clause = std::move(clause);
    r.witness = std::move(witness);
    r.detail = std::move(detail);
    return r;
  }

  /// Conjunction of parts.
  static LawReport all_of(std::string law, std::vector<LawReport> parts);

  const LawReport* part(std::string_view name) const;
  bool fact(std::string_view name) const;
};

/// Renders "x=a, y=b" using element names.
std::string format_instance(std::span<const std::string_view> vars,
                            std::span<const Elem> witness,
                            std::span<const std::string> names);

}  // namespace ehr
