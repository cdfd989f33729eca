#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "schutz/rational.hpp"

namespace schutz {

// Coordinates are drawn as p/q with 1 <= q <= denom and |p| <= bound*q.
struct SamplerConfig {
  std::int64_t bound = 16;
  std::int64_t denom = 32;
};

std::uint64_t splitmix64(std::uint64_t x);

// Independent per-check stream: hash64(master_seed, check_id).
std::uint64_t substream_seed(std::uint64_t master, std::string_view check_id);

// Deterministic generator. Only the raw 64-bit engine output is used, so
// results do not depend on the standard library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }

  // p/q with 1 <= q <= denom and |p| <= bound*q.
  Rational rational(const SamplerConfig& cfg);
  // p/q with 1 <= q <= denom and 0 < p < q.
  Rational unit_fraction(std::int64_t denom);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(
          uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace schutz
