#include "schutz/sampler.hpp"

#include "schutz/errors.hpp"

namespace schutz {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::string_view check_id) {
  // FNV-1a over the id, mixed with the master seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : check_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(master) ^ h);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty sampling range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % span);
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return lo + static_cast<std::int64_t>(r % span);
}

Rational Rng::rational(const SamplerConfig& cfg) {
  const std::int64_t q = uniform(1, cfg.denom);
  const std::int64_t p = uniform(-cfg.bound * q, cfg.bound * q);
  return Rational(p, q);
}

Rational Rng::unit_fraction(std::int64_t denom) {
  const std::int64_t q = uniform(2, denom < 2 ? 2 : denom);
  const std::int64_t p = uniform(1, q - 1);
  return Rational(p, q);
}

}  // namespace schutz
