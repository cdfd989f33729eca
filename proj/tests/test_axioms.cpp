#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "schutz/axioms.hpp"
#include "schutz/errors.hpp"
#include "schutz/models.hpp"

using namespace schutz;

namespace {

FiniteModel fixture(const char* name) {
  return load_finite_model_file(std::string(FIXTURES_DIR) + "/" + name);
}

Budget small() {
  Budget b;
  b.samples = 60;
  b.seed = 3;
  return b;
}

Path line(const char* v, const char* x0) {
  return Path::line(Line{Rational::parse(v), Rational::parse(x0)});
}

}  // namespace

TEST_SUITE("axioms") {

TEST_CASE("axiom ids round-trip") {
  CHECK(all_axioms().size() == 16);
  for (const auto id : all_axioms()) CHECK(parse_axiom_id(to_string(id)) == id);
  CHECK_FALSE(parse_axiom_id("I9"));
}

TEST_CASE("minkowski statuses") {
  Minkowski1p1 m;
  const Budget b = small();
  for (const auto id : all_axioms()) {
    const Verdict v = check_axiom(m, id, b);
    CAPTURE(to_string(id));
    CAPTURE(v.reason);
    if (id == AxiomId::S || id == AxiomId::C) {
      CHECK(v.undecided());
    } else if (id == AxiomId::I4) {
      CHECK(v.failed());
      CHECK(v.basis == Basis::evidence);
      CHECK(replay_axiom_witness(m, id, v.witness));
    } else {
      CHECK(v.passed());
      CHECK(v.basis == Basis::sampled);
    }
  }
}

TEST_CASE("galilean breaks I5 with a one-point unreachable set") {
  Galilean1p1 m;
  const Verdict v = check_axiom(m, AxiomId::I5, small());
  REQUIRE(v.failed());
  CHECK(v.witness.get_fact("size") == "1");
  const Path q = v.witness.get_path("Q");
  const Event b = v.witness.get_event("b");
  // The only simultaneous event of Q.
  CHECK(v.witness.get_fact("unreachable") == "t in [" + b.t().str() + "," + b.t().str() + "]");
  CHECK_FALSE(q.as_line().contains(b.coords()));
  CHECK(replay_axiom_witness(m, AxiomId::I5, v.witness));
  CHECK(check_axiom(m, AxiomId::I1, small()).passed());
  CHECK(check_axiom(m, AxiomId::O6, small()).passed());
}

TEST_CASE("singleton model") {
  const auto fm = fixture("singleton.json");
  const Verdict i4 = check_axiom(fm, AxiomId::I4, small());
  CHECK(i4.failed());
  CHECK(replay_axiom_witness(fm, AxiomId::I4, i4.witness));
  CHECK(check_axiom(fm, AxiomId::I1, small()).passed());
  CHECK(check_axiom(fm, AxiomId::O4, small()).passed());
}

TEST_CASE("O4-broken fixture fails O4 and replays") {
  const auto fm = fixture("o4_broken.json");
  const Verdict v = check_axiom(fm, AxiomId::O4, small());
  REQUIRE(v.failed());
  CHECK(v.basis == Basis::exhaustive);
  CHECK(replay_axiom_witness(fm, AxiomId::O4, v.witness));
}

TEST_CASE("spray") {
  Minkowski1p1 m;
  const Event x(1, 2);
  const Spray sp = spray(m, x, 6, 9);
  CHECK(sp.paths.size() == 6);
  for (const auto& p : sp.paths) {
    CHECK(m.on_path(p, x));
    CHECK(m.is_path(p));
  }
  const auto fm = fixture("mirror.json");
  CHECK(spray(fm, Event("x")).paths.size() == 3);
  CHECK(spray(fm, Event("q")).paths.size() == 1);
}

TEST_CASE("dep3 transversal against intersection oracle") {
  Minkowski1p1 m;
  const Path q = line("0", "0"), r = line("1/2", "0"), s = line("-1/2", "0");
  const Verdict v = dep3(m, q, r, s, Event(0, 0));
  REQUIRE(v.passed());
  CHECK(v.basis == Basis::construction);
  const Path t = v.witness.get_path("T");
  CHECK(t == line("3/4", "1"));
  CHECK_FALSE(m.on_path(t, Event(0, 0)));
  const std::map<std::string, std::pair<const char*, const char*>> legs{
      {"T^Q", {"0", "0"}}, {"T^R", {"1/2", "0"}}, {"T^S", {"-1/2", "0"}}};
  for (const auto& [role, vx] : legs) {
    const auto want =
        oracle::meet(oracle::q("3/4"), oracle::q("1"), oracle::q(vx.first), oracle::q(vx.second));
    const Event& got = v.witness.get_event(role);
    CHECK(oracle::q(got.t()) == want[0]);
    CHECK(oracle::q(got.x()) == want[1]);
  }
  CHECK(v.witness.get_event("T^Q") == Event(Rational(-4, 3), 0));
  CHECK(v.witness.get_event("T^R") == Event(-4, -2));
  CHECK(v.witness.get_event("T^S") == Event(Rational(-4, 5), Rational(2, 5)));

  CHECK_THROWS_AS(dep3(m, q, q, s, Event(0, 0)), InputError);
  CHECK_THROWS_AS(dep3(m, q, r, line("0", "1"), Event(0, 0)), InputError);
}

TEST_CASE("dep3 on a finite model without transversals") {
  const auto fm = fixture("mirror.json");
  const auto& ps = fm.paths();
  const Verdict v = dep3(fm, ps[0], ps[1], ps[2], Event("x"));
  CHECK(v.failed());
  CHECK(v.basis == Basis::exhaustive);
}

TEST_CASE("dep_path with two paths reduces to dep3") {
  Minkowski1p1 m;
  const Path q = line("0", "0"), r = line("1/2", "0"), s = line("-1/2", "0");
  const Verdict d = dep_path(m, q, {r, s}, Event(0, 0), small());
  CHECK(d.status == dep3(m, q, r, s, Event(0, 0)).status);
  CHECK(d.passed());
  CHECK_THROWS_AS(dep_path(m, q, {r}, Event(0, 0), small()), InputError);

  const auto fm = fixture("mirror.json");
  const auto& ps = fm.paths();
  CHECK(dep_path(fm, ps[0], {ps[1], ps[2]}, Event("x"), small()).failed());
}

TEST_CASE("indep_set") {
  Minkowski1p1 m;
  const std::vector<Path> four{line("0", "0"), line("1/2", "0"), line("-1/2", "0"),
                               line("1/3", "0")};
  const Verdict v = indep_set(m, four, small());
  REQUIRE(v.failed());
  CHECK(v.witness.has_path("T"));

  const auto fm = fixture("mirror.json");
  CHECK(indep_set(fm, {fm.paths()[0], fm.paths()[1]}, small()).passed());
  CHECK(indep_set(fm, fm.paths(), small()).passed());

  std::vector<Path> seven;
  for (int i = 0; i < 7; ++i) seven.push_back(Path::line(Line{Rational(i, 8), 0}));
  CHECK(indep_set(m, seven, small()).undecided());
}

TEST_CASE("symmetry on the mirror model swaps r and s") {
  const auto fm = fixture("mirror.json");
  const auto& ps = fm.paths();
  const Verdict v = check_symmetry(fm, ps[0], ps[1], ps[2], Event("x"), Event("q"), small());
  REQUIRE(v.passed());
  CHECK(v.witness.get_fact("theta") == "q->q,r->s,s->r,x->x");
  CHECK(check_axiom(fm, AxiomId::S, small()).passed());
  CHECK_THROWS_AS(
      check_symmetry(fm, ps[0], ps[1], ps[2], Event("x"), Event("x"), small()), InputError);
}

TEST_CASE("symmetry hypotheses and guard") {
  const FiniteModel unmet({"x", "y", "qa", "rw", "sw"},
                          {{"x", "y", "qa"}, {"x", "rw"}, {"x", "sw"}, {"sw", "y"}},
                          {{"x", "y", "qa"}});
  const auto& ps = unmet.paths();
  const Verdict v = check_symmetry(unmet, ps[0], ps[1], ps[2], Event("x"), Event("qa"), small());
  CHECK(v.undecided());
  CHECK(v.reason.find("hypothesis unmet") != std::string::npos);

  std::vector<std::string> names{"x", "q", "r", "s", "e1", "e2", "e3", "e4", "e5"};
  const FiniteModel big(names, {{"x", "q"}, {"x", "r"}, {"x", "s"}}, {});
  const auto& bp = big.paths();
  const Verdict g = check_symmetry(big, bp[0], bp[1], bp[2], Event("x"), Event("q"), small());
  CHECK(g.undecided());
  CHECK(g.reason.find("guard") != std::string::npos);

  Minkowski1p1 m;
  CHECK(check_symmetry(m, line("0", "0"), line("1/2", "0"), line("-1/2", "0"), Event(0, 0),
                       Event(1, 0), small())
            .undecided());
}

TEST_CASE("is_bound") {
  Minkowski1p1 m;
  const Chain prefix{{Event(0, 0), Event(1, 0)}, {}};
  CHECK(is_bound(m, prefix, Event(2, 0)));
  CHECK_FALSE(is_bound(m, prefix, Event(-1, 0)));
  CHECK_FALSE(is_bound(m, prefix, Event(Rational(1, 2), 0)));
  CHECK_THROWS_AS(is_bound(m, prefix, Event(2, 1)), InputError);
  CHECK_THROWS_AS(is_bound(m, Chain{{Event(0, 0)}, {}}, Event(2, 0)), InputError);
}

TEST_CASE("reachable-gap fixture fails the unreachability axioms") {
  const auto fm = fixture("reachable_gap.json");
  for (const auto id : {AxiomId::I5, AxiomId::I6, AxiomId::I7}) {
    const Verdict v = check_axiom(fm, id, small());
    CAPTURE(to_string(id));
    CHECK(v.failed());
    CHECK(replay_axiom_witness(fm, id, v.witness));
  }
}

TEST_CASE("verdicts are deterministic") {
  Minkowski1p1 m;
  for (const auto id : {AxiomId::I2, AxiomId::O6, AxiomId::I6, AxiomId::I4}) {
    const Verdict a = check_axiom(m, id, small());
    const Verdict b = check_axiom(m, id, small());
    CHECK(a.status == b.status);
    CHECK(a.samples == b.samples);
    CHECK(a.reason == b.reason);
    CHECK(a.witness.events == b.witness.events);
    CHECK(a.witness.paths == b.witness.paths);
  }
}

}  // TEST_SUITE
