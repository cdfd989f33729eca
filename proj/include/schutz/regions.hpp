#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "schutz/budget.hpp"
#include "schutz/chains.hpp"
#include "schutz/core.hpp"
#include "schutz/verdict.hpp"

namespace schutz {

// (ab): events x of path ab with [a x b].
bool in_segment(const Model& m, const Event& a, const Event& b,
                const Event& x);
// |ab| = (ab) ∪ {a, b}.
bool in_interval(const Model& m, const Event& a, const Event& b,
                 const Event& x);
// Prolongation of (ab) beyond b: [a b x].
bool in_prolongation(const Model& m, const Event& a, const Event& b,
                     const Event& x);

struct Segment {
  Event a;
  Event b;
};

struct Prolongation {
  Event a;
  Event b;  // the ray starts past b
};

struct Segmentation {
  std::vector<Segment> segments;
  Prolongation p1;
  Prolongation p2;
  Chain chain;
  Path path;
};

Segmentation segmentation(const Model& m, const Path& q, const Chain& chain);

// Names of the regions containing x: "S<i>", "P1", "P2" or "Q" (chain
// member). A correct segmentation yields exactly one per path event.
std::vector<std::string> regions_of(const Model& m, const Segmentation& seg,
                                    const Event& x);

// Every probe on the path lies in exactly one region.
Verdict verify_segmentation(const Model& m, const Segmentation& seg,
                            const std::vector<Event>& probes);
// Probes: all path members (finite) or budget.samples sampled parameters
// plus the chain events and neighbour midpoints (line models).
Verdict verify_segmentation(const Model& m, const Segmentation& seg,
                            const Budget& budget);

struct SegmentCount {
  std::size_t count = 0;  // distinct segments as sets
  Verdict verdict;
};

SegmentCount segment_count(const Model& m, const Segmentation& seg);

// f on de and ab with [a f b]. Needs a kinematic triangle abc, d != e
// joined by a path, [b c d] and [c e a].
Result<Event> thm3_witness(const Model& m, const Event& a, const Event& b,
                           const Event& c, const Event& d, const Event& e);
// As thm3_witness, additionally [d e f].
Result<Event> thm7_witness(const Model& m, const Event& a, const Event& b,
                           const Event& c, const Event& d, const Event& e);

// Triangle abc with [a b' c], [b c' a], [c a' b]: no path holds a', b', c'.
Verdict thm8_check(const Model& m, const Event& a, const Event& b,
                   const Event& c, const Event& a1, const Event& b1,
                   const Event& c1);

}  // namespace schutz
