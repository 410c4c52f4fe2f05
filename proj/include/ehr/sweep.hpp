#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace ehr {

struct SweepOptions {
  std::size_t max_size = 3;
  unsigned threads = 1;
  /// Zoo entries swept alongside the enumerated structures; their named
  /// orders also go through the round-trip, biaction and OC checks.
  std::vector<std::string> zoo = {"trivial", "two-element-monoid", "orderless-band",
                                  "zero-one-nabla", "rel-1", "rel-2", "pt-1", "pt-2",
                                  "pt-3", "pinj-1", "pinj-2", "pinj-3"};
};

/// Runs the containment, partial-law, OS4, restriction, round-trip,
/// biaction and OC-equivalence sweeps over every Ehresmann semigroup up to
/// max_size elements and every Ehresmann order on each. The result lists
/// one verdict block per sweep plus one record per structure; it does not
/// depend on the thread count.
nlohmann::json run_sweep(const SweepOptions& options);

/// True when every sweep block in a run_sweep result holds.
bool sweep_holds(const nlohmann::json& result);

}  // namespace ehr
