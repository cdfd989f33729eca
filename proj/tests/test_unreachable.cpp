#include <doctest.h>

#include "oracles.hpp"
#include "schutz/errors.hpp"
#include "schutz/models.hpp"
#include "schutz/unreachable.hpp"

using namespace schutz;

namespace {

const Path kTimeAxis = Path::line(Line{0, 0});

Event on_axis(const Rational& t) { return Event(t, 0); }

// Grid of time values lo, lo+step, ..., hi.
std::vector<mpq_class> grid(const char* lo, const char* hi, const char* step) {
  std::vector<mpq_class> out;
  const mpq_class h = oracle::q(hi), s = oracle::q(step);
  for (mpq_class t = oracle::q(lo); t <= h; t += s) out.push_back(t);
  return out;
}

Rational rat(const mpq_class& q) { return Rational::parse(q.get_str()); }

// Smallest k >= 1 with (d.t + k*sign, 0) joinable to both sources.
mpq_class first_joinable_step(const mpq_class& from, int sign, const mpq_class& ta,
                              const mpq_class& xa, const mpq_class& tb, const mpq_class& xb) {
  for (int k = 1;; ++k) {
    const mpq_class t = from + sign * k;
    if (oracle::joinable_minkowski(ta, xa, t, 0) && oracle::joinable_minkowski(tb, xb, t, 0)) {
      return t;
    }
  }
}

}  // namespace

TEST_SUITE("unreachable") {

TEST_CASE("unreachable interval against a joinability scan") {
  Minkowski1p1 m;
  const Event b(0, 1);
  const UnreachSet u = unreach_from(m, kTimeAxis, b);
  CHECK(u.str() == "t in [-1,1]");
  CHECK(u.size_class() == 2);
  for (const auto& t : grid("-3", "3", "1/8")) {
    const bool want = !oracle::joinable_minkowski(0, 1, t, 0);
    CHECK(u.contains(on_axis(rat(t))) == want);
    CHECK(in_unreach(m, kTimeAxis, b, on_axis(rat(t))) == want);
  }
  CHECK_THROWS_AS(unreach_from(m, kTimeAxis, Event(2, 0)), InputError);
}

TEST_CASE("galilean unreachable set is the simultaneous event") {
  Galilean1p1 m;
  const UnreachSet u = unreach_from(m, kTimeAxis, Event(0, 1));
  CHECK(u.size_class() == 1);
  for (const auto& t : grid("-2", "2", "1/4")) {
    CHECK(u.contains(on_axis(rat(t))) == !oracle::joinable_galilean(0, 1, t, 0));
  }
  CHECK(u.contains(Event(0, 0)));
}

TEST_CASE("finite unreachable members") {
  const auto fm = load_finite_model_file(std::string(FIXTURES_DIR) + "/reachable_gap.json");
  const Path q = fm.paths()[0];
  const UnreachSet u = unreach_from(fm, q, Event("b"));
  CHECK(u.members == std::vector<Event>{Event("q1"), Event("q3")});
  CHECK(u.str() == "{q1,q3}");
  // q2 is reachable yet sits between two unreachable events.
  const Verdict v = thm13_check(fm, q, Event("b"), Event("q1"), Event("q2"), Event("q3"));
  CHECK(v.failed());
}

TEST_CASE("unreach_via against a witness scan") {
  Minkowski1p1 m;
  const Path r = Path::line(Line{Rational(1, 2), 0});
  const Event x(0, 0), qa(4, 0);
  const UnreachViaSet s = unreach_via(m, kTimeAxis, qa, r, x);
  CHECK(s.str() == "t in [4/3,4)");
  // Qy = (t,0) belongs when some event of R off Q is unreachable from both
  // Qy and Qa, for t strictly between x and Qa.
  const auto us = grid("-12", "12", "1/144");
  for (const auto& t : grid("1/12", "47/12", "1/12")) {
    bool want = false;
    for (const auto& u : us) {
      if (u == 0) continue;
      const mpq_class ux = u / 2;
      if (!oracle::joinable_minkowski(u, ux, 4, 0) && !oracle::joinable_minkowski(u, ux, t, 0)) {
        want = true;
        break;
      }
    }
    CAPTURE(t.get_str());
    CHECK(s.contains(on_axis(rat(t))) == want);
  }
  CHECK_FALSE(s.contains(qa));
  CHECK_THROWS_AS(unreach_via(m, kTimeAxis, x, r, x), InputError);
  CHECK_THROWS_AS(unreach_via(m, kTimeAxis, qa, kTimeAxis, x), InputError);
}

TEST_CASE("theorem 4 bound") {
  Minkowski1p1 m;
  const Event b(0, 1);
  for (const auto& [qx, want] : {std::pair{Event(-2, 0), Event(2, 0)},
                                 std::pair{Event(3, 0), Event(-2, 0)}}) {
    const auto qz = thm4_bound(m, kTimeAxis, b, qx, Event(0, 0));
    REQUIRE(qz);
    CHECK(*qz == want);
    CHECK(betw(m, qx, Event(0, 0), *qz));
    CHECK(oracle::joinable_minkowski(0, 1, oracle::q(qz->t()), 0));
  }
  CHECK_THROWS_AS(thm4_bound(m, kTimeAxis, b, Event(Rational(1, 2), 0), Event(0, 0)),
                  InputError);
  CHECK_THROWS_AS(thm4_bound(m, kTimeAxis, b, Event(-2, 0), Event(5, 0)), InputError);
}

TEST_CASE("theorem 13") {
  Minkowski1p1 m;
  const Event b(0, 1);
  CHECK(thm13_check(m, kTimeAxis, b, Event(-1, 0), Event(0, 0), Event(1, 0)).passed());
  CHECK(thm13_check(m, kTimeAxis, b, Event(-1, 0), Event(Rational(9, 10), 0), Event(1, 0))
            .passed());
  CHECK_THROWS_AS(thm13_check(m, kTimeAxis, b, Event(-1, 0), Event(2, 0), Event(1, 0)),
                  InputError);
  CHECK_THROWS_AS(thm13_check(m, kTimeAxis, b, Event(-2, 0), Event(0, 0), Event(1, 0)),
                  InputError);
}

TEST_CASE("I6 and I7 chains") {
  Minkowski1p1 m;
  const Event b(0, 1);
  const auto c = i6_chain(m, kTimeAxis, b, Event(-1, 0), Event(1, 0));
  REQUIRE(c);
  CHECK(c->seq == std::vector<Event>{Event(-1, 0), Event(0, 0), Event(1, 0)});
  std::vector<Event> probes;
  for (const auto& t : grid("-2", "2", "1/16")) probes.push_back(on_axis(rat(t)));
  const Verdict v = check_i6_chain(m, kTimeAxis, b, *c, probes);
  CHECK(v.passed());
  CHECK(v.samples == 30);

  const Chain bad{{Event(-1, 0), Event(2, 0)}, kTimeAxis};
  CHECK(check_i6_chain(m, kTimeAxis, b, bad, probes).failed());

  const auto c7 = i7_chain(m, kTimeAxis, b, Event(-2, 0), Event(0, 0));
  REQUIRE(c7);
  CHECK(c7->seq == std::vector<Event>{Event(-2, 0), Event(0, 0), Event(2, 0)});
}

TEST_CASE("theorem 14 bounds and events") {
  Minkowski1p1 m;
  const Event a(0, 1), b(0, 2);
  const auto bounds = thm14_bounds(m, kTimeAxis, a, b);
  REQUIRE(bounds);
  CHECK(bounds->first == Event(-3, 0));
  CHECK(bounds->second == Event(3, 0));
  for (const Event* e : {&bounds->first, &bounds->second}) {
    CHECK_FALSE(unreach_from(m, kTimeAxis, a).contains(*e));
    CHECK_FALSE(unreach_from(m, kTimeAxis, b).contains(*e));
  }

  const auto ev = thm14_event(m, kTimeAxis, a, b, Event(-5, 0), Event(4, 0));
  REQUIRE(ev);
  CHECK(oracle::q(ev->e.t()) == first_joinable_step(4, 1, 0, 1, 0, 2));
  CHECK(ev->e == Event(5, 0));
  CHECK(m.on_path(ev->ae, a));
  CHECK(m.on_path(ev->be, b));
  CHECK_THROWS_AS(thm14_event(m, kTimeAxis, a, b, Event(1, 0), Event(1, 0)), InputError);
}

TEST_CASE("theorem 14 beyond an unreachable set") {
  Minkowski1p1 m;
  const Path r = Path::line(Line{Rational(1, 2), 0});
  const Event x(0, 0), a(2, 1), b(0, -2);
  const auto ev = thm14_beyond(m, kTimeAxis, r, x, a, b);
  REQUIRE(ev);
  CHECK(ev->e == Event(4, 0));
  // d is the near end of Q(a,∅) = [1,3]; e lies beyond it.
  const mpq_class t = oracle::q(ev->e.t());
  CHECK(t > 1);
  CHECK(oracle::joinable_minkowski(2, 1, t, 0));
  CHECK(oracle::joinable_minkowski(0, -2, t, 0));
  // Every integer step short of e fails one of the joins.
  for (int k = 2; k < 4; ++k) {
    CHECK_FALSE((oracle::joinable_minkowski(2, 1, k, 0) && oracle::joinable_minkowski(0, -2, k, 0)));
  }
  CHECK_THROWS_AS(thm14_beyond(m, kTimeAxis, r, x, x, b), InputError);
}

}  // TEST_SUITE
