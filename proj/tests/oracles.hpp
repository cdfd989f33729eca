#pragma once

// Reference computations that share no code with the library: plain GMP
// arithmetic, exhaustive scans and naive fixpoints.

#include <gmpxx.h>

#include <array>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "schutz/core.hpp"

namespace oracle {

inline mpq_class q(const char* s) {
  mpq_class r(s);
  r.canonicalize();
  return r;
}

inline mpq_class q(const schutz::Rational& r) { return r.raw(); }

// Cramer's rule for  a1 t + b1 x = c1,  a2 t + b2 x = c2.
inline std::array<mpq_class, 2> solve2(const mpq_class& a1, const mpq_class& b1,
                                       const mpq_class& c1, const mpq_class& a2,
                                       const mpq_class& b2, const mpq_class& c2) {
  const mpq_class det = a1 * b2 - a2 * b1;
  return {(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

// Meeting point of x = x1 + v1 t and x = x2 + v2 t, as (t, x).
inline std::array<mpq_class, 2> meet(const mpq_class& v1, const mpq_class& x1,
                                     const mpq_class& v2, const mpq_class& x2) {
  // -v t + x = x0 for both lines.
  return solve2(-v1, 1, x1, -v2, 1, x2);
}

// A worldline through both events exists iff the velocity dx/dt is defined
// and subluminal.
inline bool joinable_minkowski(const mpq_class& t1, const mpq_class& x1,
                               const mpq_class& t2, const mpq_class& x2) {
  if (t1 == t2) return false;
  const mpq_class v = (x2 - x1) / (t2 - t1);
  return v < 1 && v > -1;
}

inline bool joinable_galilean(const mpq_class& t1, const mpq_class&,
                              const mpq_class& t2, const mpq_class&) {
  return t1 != t2;
}

using Fact = std::array<std::string, 3>;

// Closure by repeated full passes over all pairs of facts.
inline std::set<Fact> naive_closure(std::set<Fact> f) {
  auto both = [](std::set<Fact>& s, const Fact& t) {
    bool grew = s.insert(t).second;
    grew = s.insert(Fact{t[2], t[1], t[0]}).second || grew;
    return grew;
  };
  std::set<Fact> cur;
  for (const auto& t : f) both(cur, t);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Fact> v(cur.begin(), cur.end());
    for (const auto& x : v) {
      if (x[0] == x[1] || x[1] == x[2] || x[0] == x[2]) continue;
      for (const auto& y : v) {
        if (y[0] == y[1] || y[1] == y[2] || y[0] == y[2]) continue;
        // [abc][bcd] -> [abd]
        if (x[1] == y[0] && x[2] == y[1]) grew = both(cur, {x[0], x[1], y[2]}) || grew;
        // [abc][acd] -> [bcd]
        if (x[0] == y[0] && x[2] == y[1]) grew = both(cur, {x[1], x[2], y[2]}) || grew;
        // [abd][bcd] -> [abc]
        if (x[1] == y[0] && x[2] == y[2]) grew = both(cur, {x[0], x[1], y[1]}) || grew;
      }
    }
  }
  return cur;
}

}  // namespace oracle
