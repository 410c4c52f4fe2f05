#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ehr/category.hpp"
#include "ehr/law_report.hpp"
#include "ehr/semigroup.hpp"

namespace ehr {

enum class StructureKind { semigroup, category };

/// A parsed structure file. Exactly one of `semigroup` / `category` is
/// meaningful, according to `kind`.
struct StructureFile {
  StructureKind kind = StructureKind::semigroup;
  FiniteBiunarySemigroup semigroup;
  FiniteCategory category;
  std::optional<PartialOrder> order;
  /// Category files only: n x n, kUndefined off identities; empty when the
  /// file has no meet section.
  std::vector<Elem> meet;

  std::size_t size() const;
  std::span<const std::string> names() const;
  /// Throws Error{precondition} when no order is attached.
  OrderedSemigroup ordered() const;
  FiniteOrderedCategory ordered_category() const;
};

/// Line-oriented text format. Throws Error{parse} with a line number.
///
///   kind: semigroup | category
///   elements: a b c
///   mul:            (category: comp:, with . for undefined)
///   <n rows of n names>
///   D: <n names>
///   R: <n names>
///   order:          (optional; closed reflexively and transitively)
///   a <= b
///   meet:           (category only, optional; rows and columns are the
///   <table>          identities in carrier order)
StructureFile parse_structure(std::string_view text);

/// Inverse of parse_structure. The order is written as every strict pair,
/// in lexicographic order.
std::string emit_structure(const StructureFile& file);

StructureFile from_semigroup(const FiniteBiunarySemigroup& s,
                             std::optional<PartialOrder> order = std::nullopt);
StructureFile from_category(const FiniteOrderedCategory& c, bool with_meet = true);

/// A path, or example://NAME with an optional #ORDER fragment. Without a
/// fragment the example's first order is attached; #none attaches none.
/// Unreadable files raise Error{parse}.
StructureFile load_structure(const std::string& target);

/// Strict pairs of an order, as element names.
nlohmann::json order_to_json(const PartialOrder& order, std::span<const std::string> names);

/// `names` renders witness elements; pass an empty span to render indices.
nlohmann::json report_to_json(const LawReport& report, std::span<const std::string> names);

}  // namespace ehr
