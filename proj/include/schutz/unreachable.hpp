#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schutz/chains.hpp"
#include "schutz/models.hpp"
#include "schutz/verdict.hpp"

namespace schutz {

// Q(b,∅). Finite models list members; line models carry a parameter
// interval (time values along Q).
struct UnreachSet {
  Path path;
  Event source;
  std::vector<Event> members;
  std::optional<ParamInterval> interval;

  bool contains(const Event& e) const;
  bool is_empty() const;
  // 0, 1, or 2 meaning "two or more".
  int size_class() const;
  // Up to n members; for intervals the endpoints (when closed) come first.
  std::vector<Event> sample_members(Rng& rng, std::size_t n) const;
  std::string str() const;
};

// Members of Q between x and Qa sharing an R-witness with Qa.
struct UnreachViaSet {
  Path path;
  Event anchor;
  Path via;
  Event meet;
  std::vector<Event> members;
  std::optional<ParamInterval> interval;

  bool contains(const Event& e) const;
  bool is_empty() const;
  std::string str() const;
};

// x on Q, b off Q, and no path through both.
bool in_unreach(const Model& m, const Path& q, const Event& b, const Event& x);

UnreachSet unreach_from(const Model& m, const Path& q, const Event& b);
UnreachViaSet unreach_via(const Model& m, const Path& q, const Event& qa,
                          const Path& r, const Event& x);

// Some event of Q joined to b by a path.
bool joinable(const Model& m, const Path& q, const Event& b);

// Reachable Qz with [Qx Qy Qz].
Result<Event> thm4_bound(const Model& m, const Path& q, const Event& b,
                         const Event& qx, const Event& qy);

Verdict thm13_check(const Model& m, const Path& q, const Event& b,
                    const Event& qx, const Event& qy, const Event& qz);

// Chain from Qx to Qz of unreachable events. `interior` is the number of
// subdivision points on line models (0 gives the short chain).
Result<Chain> i6_chain(const Model& m, const Path& q, const Event& b,
                       const Event& qx, const Event& qz,
                       std::size_t interior = 1);
// Verifies the I6 conclusion for `c`: endpoints, membership of every
// element, and (on the given probe events) of everything between
// consecutive elements.
Verdict check_i6_chain(const Model& m, const Path& q, const Event& b,
                       const Chain& c, const std::vector<Event>& probes);

// (Qx, Qy, Qn) with Qn reachable.
Result<Chain> i7_chain(const Model& m, const Path& q, const Event& b,
                       const Event& qx, const Event& qy);

Result<std::pair<Event, Event>> thm14_bounds(const Model& m, const Path& q,
                                             const Event& a, const Event& b);

struct Thm14Event {
  Event e;
  Path ae;
  Path be;
};

Result<Thm14Event> thm14_event(const Model& m, const Path& q, const Event& a,
                               const Event& b, const Event& c,
                               const Event& d);
Result<Thm14Event> thm14_beyond(const Model& m, const Path& q, const Path& r,
                                const Event& x, const Event& a,
                                const Event& b);

}  // namespace schutz
