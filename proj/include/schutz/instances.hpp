#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "schutz/core.hpp"

namespace schutz {

struct Instance {
  std::vector<Event> events;
  std::vector<Path> paths;
};

struct InstanceBatch {
  std::vector<Instance> items;
  std::size_t attempts = 0;
  bool exhaustive = false;  // complete enumeration of a finite model
  bool starved = false;     // rejection budget ran out before n instances
};

// Instance kinds and their layout (events / paths):
//   pair            a b
//   triple          a b c          half on one path on line models
//   quad            a b c d        half on one path, sometimes a = d
//   triple-on-path  a b c / Q      distinct, on Q
//   betw-triple     a b c          [a b c]
//   copath-set      k events / Q   distinct, on Q (k = param)
//   chain-seq       k events       a co-path set in chain order or shuffled
//   lemma12         a b c d        [a b c], [a b d], c != d
//   lemma3          a b c d        [a b c], [a c d]
//   triangle-de     a b c d e      kinematic triangle, [b c d], [c e a],
//                                  d and e joined by a path
//   triangle-mid    a b c a' b' c' [c a' b], [a b' c], [b c' a]
//   unreach-config  b / Q          b off Q
//   thm14-config    a b / Q        a, b off Q, both joinable to Q
//   thm14-beyond    x a b / Q R    Q != R meet at x, a on R, b off Q
//
// Line models are sampled by seeded rejection; finite models are
// enumerated exhaustively (n and seed ignored).
InstanceBatch gen_instances(const Model& m, std::string_view kind,
                            std::size_t n, std::uint64_t seed,
                            std::size_t param = 0);

const std::vector<std::string>& instance_kinds();

}  // namespace schutz
