#include "ehr/relation.hpp"

#include <bit>

namespace ehr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::structural: return "structural-error";
    case ErrorKind::inconsistent_projections: return "inconsistent-projections";
    case ErrorKind::internal_inconsistency: return "internal-inconsistency";
    case ErrorKind::precondition: return "precondition-failure";
    case ErrorKind::not_ordered_ehresmann: return "not-ordered-ehresmann";
    case ErrorKind::oc6_violation: return "oc6-violation";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::parse: return "parse-error";
  }
  return "unknown";
}

Relation::Relation(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

Relation Relation::identity(std::size_t n) {
  Relation rel(n);
  for (Elem a = 0; a < n; ++a) rel.set(a, a);
  return rel;
}

void Relation::set(Elem a, Elem b, bool value) noexcept {
  auto& word = bits_[a * words_ + b / 64];
  const std::uint64_t mask = std::uint64_t{1} << (b % 64);
  word = value ? (word | mask) : (word & ~mask);
}

Relation Relation::compose(const Relation& other) const {
  Relation out(n_);
  for (Elem a = 0; a < n_; ++a) {
    auto* dst = out.bits_.data() + a * words_;
    for (Elem b = 0; b < n_; ++b) {
      if (!(*this)(a, b)) continue;
      const auto src = other.row(b);
      for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

std::size_t Relation::count() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::pair<Elem, Elem>> Relation::pairs() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b)
      if ((*this)(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<Elem> Relation::down_set(Elem b) const {
  std::vector<Elem> out;
  for (Elem a = 0; a < n_; ++a)
    if ((*this)(a, b)) out.push_back(a);
  return out;
}

std::string Relation::bit_string() const {
  std::string out;
  out.reserve(n_ * n_);
  for (Elem a = 0; a < n_; ++a)
    for (Elem b = 0; b < n_; ++b) out.push_back((*this)(a, b) ? '1' : '0');
  return out;
}

Relation reflexive_transitive_closure(Relation rel) {
  const auto n = rel.size();
  for (Elem a = 0; a < n; ++a) rel.set(a, a);
  // Warshall over bit rows.
  for (Elem k = 0; k < n; ++k)
    for (Elem a = 0; a < n; ++a)
      if (rel(a, k))
        for (Elem b = 0; b < n; ++b)
          if (rel(k, b)) rel.set(a, b);
  return rel;
}

std::optional<Elem> reflexivity_violation(const Relation& rel) {
  for (Elem a = 0; a < rel.size(); ++a)
    if (!rel(a, a)) return a;
  return std::nullopt;
}

std::optional<std::pair<Elem, Elem>> antisymmetry_violation(const Relation& rel) {
  for (Elem a = 0; a < rel.size(); ++a)
    for (Elem b = 0; b < rel.size(); ++b)
      if (a != b && rel(a, b) && rel(b, a)) return std::pair{a, b};
  return std::nullopt;
}

std::optional<std::array<Elem, 3>> transitivity_violation(const Relation& rel) {
  const auto n = static_cast<Elem>(rel.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!rel(a, b)) continue;
      for (Elem c = 0; c < n; ++c)
        if (rel(b, c) && !rel(a, c)) return std::array{a, b, c};
    }
  return std::nullopt;
}

bool is_partial_order(const Relation& rel) {
  return !reflexivity_violation(rel) && !antisymmetry_violation(rel) &&
         !transitivity_violation(rel);
}

PartialOrder::PartialOrder(Relation rel) : rel_(std::move(rel)) {
  if (!is_partial_order(rel_))
    throw Error(ErrorKind::structural, "relation is not a partial order");
}

PartialOrder PartialOrder::equality(std::size_t n) {
  return PartialOrder(Relation::identity(n));
}

}  // namespace ehr
