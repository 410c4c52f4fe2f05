#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ehr/semigroup.hpp"

namespace fixtures {

using ehr::Elem;

/// The six transformations of {x,y,z} composed by hand, left to right.
inline ehr::FiniteBiunarySemigroup transformation_band() {
  using Map = std::array<int, 3>;
  const std::vector<std::string> names = {"c", "d", "Px", "Py", "Pz", "1"};
  const std::vector<Map> maps = {{0, 1, 0}, {0, 1, 1}, {0, 0, 0},
                                 {1, 1, 1}, {2, 2, 2}, {0, 1, 2}};
  auto index_of = [&](const Map& m) {
    for (Elem i = 0; i < maps.size(); ++i)
      if (maps[i] == m) return i;
    return ehr::kUndefined;
  };
  std::vector<Elem> mul;
  for (const auto& a : maps)
    for (const auto& b : maps) mul.push_back(index_of({b[a[0]], b[a[1]], b[a[2]]}));
  return ehr::FiniteBiunarySemigroup(6, mul, {5, 5, 4, 4, 4, 5}, {5, 5, 5, 5, 4, 5}, names);
}

inline ehr::FiniteBiunarySemigroup monoid_with_zero() {
  return ehr::FiniteBiunarySemigroup(2, {0, 0, 0, 1}, {1, 1}, {1, 1});
}

inline ehr::FiniteBiunarySemigroup left_zero_band() {
  return ehr::FiniteBiunarySemigroup(2, {0, 0, 1, 1}, {0, 1}, {0, 1});
}

inline ehr::FiniteBiunarySemigroup one_element() {
  return ehr::FiniteBiunarySemigroup(1, {0}, {0}, {0});
}

}  // namespace fixtures
