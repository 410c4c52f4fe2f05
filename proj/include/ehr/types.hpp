#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehr {

/// Elements of every finite structure are canonical indices 0..n-1.
using Elem = std::uint32_t;

/// Marks an undefined entry in a partial table (category composition,
/// meet on non-identities, actions by non-identities).
inline constexpr Elem kUndefined = std::numeric_limits<Elem>::max();

enum class ErrorKind {
  structural,
  inconsistent_projections,
  internal_inconsistency,
  precondition,
  not_ordered_ehresmann,
  oc6_violation,
  too_large,
  parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A total map between carriers, used both for semigroup homomorphism
/// candidates and for functor candidates between categories.
struct ElementMap {
  std::string source;
  std::string target;
  std::vector<Elem> map;
};

using HomCandidate = ElementMap;
using FunctorCandidate = ElementMap;

}  // namespace ehr
