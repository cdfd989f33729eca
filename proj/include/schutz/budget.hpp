#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

namespace schutz {

struct Budget {
  std::size_t samples = 500;
  std::uint64_t seed = 0;
  // Cap on dependence-oracle calls (dep3 evaluations) per search.
  std::size_t oracle_calls = 20000;
  // Exhaustive-search guards.
  std::size_t max_indep_paths = 6;
  std::size_t max_symmetry_events = 8;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  bool expired() const {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  }
};

}  // namespace schutz
