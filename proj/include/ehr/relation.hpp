#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ehr/types.hpp"

namespace ehr {

/// Dense boolean relation on 0..n-1, stored as one bit row per element.
/// rel(a, b) reads "a is related to b" (for orders: a <= b).
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n);

  static Relation identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  bool operator()(Elem a, Elem b) const noexcept {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }
  void set(Elem a, Elem b, bool value = true) noexcept;

  std::span<const std::uint64_t> row(Elem a) const noexcept {
    return {bits_.data() + a * words_, words_};
  }

  /// Relational composite, left to right: a (this;other) c iff a this b other c.
  Relation compose(const Relation& other) const;
  bool subset_of(const Relation& other) const;
  std::size_t count() const;

  /// All related pairs (a, b) in lexicographic order.
  std::vector<std::pair<Elem, Elem>> pairs() const;
  /// Elements below b, ascending.
  std::vector<Elem> down_set(Elem b) const;

  /// Row-major '0'/'1' string; the canonical sort key for orders.
  std::string bit_string() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

Relation reflexive_transitive_closure(Relation rel);

// Each returns the lexicographically least violating tuple, if any.
std::optional<Elem> reflexivity_violation(const Relation& rel);
std::optional<std::pair<Elem, Elem>> antisymmetry_violation(const Relation& rel);
std::optional<std::array<Elem, 3>> transitivity_violation(const Relation& rel);

bool is_partial_order(const Relation& rel);

/// A relation known to be reflexive, antisymmetric and transitive.
class PartialOrder {
 public:
  PartialOrder() = default;
  /// Throws Error{structural} unless rel is a partial order.
  explicit PartialOrder(Relation rel);

  static PartialOrder equality(std::size_t n);

  std::size_t size() const noexcept { return rel_.size(); }
  bool operator()(Elem a, Elem b) const noexcept { return rel_(a, b); }
  const Relation& relation() const noexcept { return rel_; }

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;

 private:
  Relation rel_;
};

}  // namespace ehr
