// One line per acceptance criterion; nonzero exit when any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cli.hpp"
#include "schutz/axioms.hpp"
#include "schutz/chains.hpp"
#include "schutz/harness.hpp"
#include "schutz/instances.hpp"
#include "schutz/models.hpp"
#include "schutz/regions.hpp"
#include "schutz/unreachable.hpp"

using namespace schutz;

namespace {

// Pinned workloads. Exact arithmetic throughout, so every tolerance is zero.
constexpr std::uint64_t kSeed = 0;
constexpr std::size_t kBetwTriples = 1000;
constexpr std::size_t kChains = 200;
constexpr std::size_t kTriangles = 100;
constexpr std::size_t kSetsPerSize = 20;
constexpr std::size_t kCoverProbes = 1000;
constexpr std::size_t kUnreachConfigs = 200;
constexpr std::size_t kThm14Configs = 50;
constexpr std::size_t kThm14Members = 100;
constexpr std::size_t kProlongations = 100;
constexpr std::size_t kFactBases = 50;
constexpr std::size_t kMaxViolations = 0;

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << n << " " << title << ": " << o.detail << " ("
            << ms << " ms)" << std::endl;
}

std::string status_of(const nlohmann::json& checks, const std::string& id) {
  for (const auto& c : checks) {
    if (c["id"] == id) return c["verdict"].get<std::string>() + "/" + c["basis"].get<std::string>();
  }
  return "missing";
}

Outcome axiom_conformance() {
  std::ostringstream out, err;
  const int code = run_cli({"check-axioms", "--format", "json"}, out, err);
  const auto j = nlohmann::json::parse(out.str());
  std::vector<std::string> bad;
  for (const auto& id : {"I1", "I2", "I3", "InPathEvent", "O1", "O2", "O3", "O4", "O5", "O6",
                         "I5", "I6", "I7"}) {
    if (status_of(j["checks"], id) != "pass/sampled") bad.push_back(id);
  }
  for (const auto& id : {"S", "C"}) {
    if (status_of(j["checks"], id).rfind("unknown", 0) != 0) bad.push_back(id);
  }
  Minkowski1p1 m;
  const Report r = parse_report(out.str(), m);
  const Verdict* i4 = nullptr;
  for (const auto& c : r.checks) {
    if (c.id == "I4") i4 = &c.verdict;
  }
  bool quad = false;
  if (i4 && i4->failed()) {
    const Witness& w = i4->witness;
    if (w.has_path("P") && w.has_path("S1") && w.has_path("S2") && w.has_path("T")) {
      const Verdict d = dep3(m, w.get_path("P"), w.get_path("S1"), w.get_path("S2"),
                             w.get_event("x"));
      quad = d.passed() && d.witness.get_path("T") == w.get_path("T") &&
             replay_check(m, "I4", w);
    }
  }
  if (!quad) bad.push_back("I4");
  if (j["samples"] != 500) bad.push_back("samples");
  std::string detail = "exit " + std::to_string(code);
  for (const auto& b : bad) detail += " bad:" + b;
  if (bad.empty()) detail += ", 13 sampled passes, I4 dep3 quadruple replays, S/C unknown";
  return {bad.empty() && code == 1, detail};
}

Outcome galilean_exclusion() {
  Galilean1p1 m;
  const std::vector<std::string> sel{"I1", "I2", "I3", "O1", "O2", "O3", "O4", "O5", "I5"};
  SuiteOptions so;
  so.budget.seed = kSeed;
  const Report r = run_suite(m, sel, so);
  bool ok = true;
  std::string detail;
  for (const auto& c : r.checks) {
    if (c.id == "I5") {
      const auto size = c.verdict.witness.get_fact("size");
      const bool small = size && std::stoi(*size) <= 1;
      ok = ok && c.verdict.failed() && small && replay_check(m, "I5", c.verdict.witness);
      detail += "I5 " + to_string(c.verdict.status) + " |Q(b,0)|=" + size.value_or("?") +
                " unreachable " + c.verdict.witness.get_fact("unreachable").value_or("?");
    } else if (!c.verdict.passed()) {
      ok = false;
      detail += c.id + " " + to_string(c.verdict.status) + "; ";
    }
  }
  return {ok, "8 passes, " + detail};
}

Outcome theorem1() {
  Minkowski1p1 m;
  const auto batch = gen_instances(m, "betw-triple", kBetwTriples, substream_seed(kSeed, "acc3"));
  std::size_t violations = 0;
  for (const auto& in : batch.items) {
    const Event &a = in.events[0], &b = in.events[1], &c = in.events[2];
    if (!betw(m, a, b, c)) ++violations;
    for (const auto& t : forbidden_reorderings(Triple{a, b, c})) {
      if (betw(m, t.a, t.b, t.c)) ++violations;
    }
  }
  return {batch.items.size() == kBetwTriples && violations <= kMaxViolations,
          std::to_string(batch.items.size()) + " triples, " + std::to_string(violations) +
              " violations"};
}

Outcome theorem2() {
  Minkowski1p1 m;
  const auto batch = gen_instances(m, "chain-seq", kChains, substream_seed(kSeed, "acc4"));
  std::size_t mismatches = 0, ordered = 0;
  std::set<std::size_t> lengths;
  for (const auto& in : batch.items) {
    lengths.insert(in.events.size());
    const bool local = check_local_order(m, in.events);
    const bool total = check_total_order(m, in.events);
    ordered += total;
    if (local != total) ++mismatches;
  }
  const bool ok = batch.items.size() == kChains && mismatches <= kMaxViolations &&
                  *lengths.begin() >= 3 && *lengths.rbegin() <= 10 && ordered > 0 &&
                  ordered < kChains;
  return {ok, std::to_string(batch.items.size()) + " sequences (" + std::to_string(ordered) +
                  " ordered, lengths " + std::to_string(*lengths.begin()) + "-" +
                  std::to_string(*lengths.rbegin()) + "), " + std::to_string(mismatches) +
                  " mismatches"};
}

Outcome theorems3_7() {
  Minkowski1p1 m;
  const auto batch = gen_instances(m, "triangle-de", kTriangles, substream_seed(kSeed, "acc5"));
  std::size_t bad = 0;
  for (const auto& in : batch.items) {
    const auto& e = in.events;
    const auto f3 = thm3_witness(m, e[0], e[1], e[2], e[3], e[4]);
    const auto f7 = thm7_witness(m, e[0], e[1], e[2], e[3], e[4]);
    if (!f3 || !f7) {
      ++bad;
      continue;
    }
    const Path ab = *path_through(m, e[0], e[1]);
    const Path de = *path_through(m, e[3], e[4]);
    for (const Event& f : {*f3, *f7}) {
      if (!m.on_path(ab, f) || !m.on_path(de, f) || !betw(m, e[0], f, e[1])) ++bad;
    }
    if (!betw(m, e[3], e[4], *f7)) ++bad;
  }
  const auto ex = thm7_witness(m, Event(0, 0), Event(4, 1), Event(2, Rational(-1, 2)),
                               Event(0, -2), Event(Rational(9, 5), Rational(-9, 20)));
  const bool example = ex && *ex == Event(Rational(36, 11), Rational(9, 11));
  return {batch.items.size() == kTriangles && bad <= kMaxViolations && example,
          std::to_string(batch.items.size()) + " configurations, " + std::to_string(bad) +
              " violations, worked example f = " + (ex ? ex->id() : std::string("none"))};
}

Outcome theorem10() {
  Minkowski1p1 m;
  std::size_t sets = 0, bad = 0;
  for (std::size_t k = 2; k <= 7; ++k) {
    const auto batch = gen_instances(m, "copath-set", kSetsPerSize,
                                     substream_seed(kSeed, "acc6-" + std::to_string(k)), k);
    for (const auto& in : batch.items) {
      ++sets;
      if (!same_up_to_reversal(chain_from_set(m, in.events), brute_force_chain(m, in.events))) {
        ++bad;
      }
    }
  }
  return {sets == 6 * kSetsPerSize && bad <= kMaxViolations,
          std::to_string(sets) + " sets of size 2-7, " + std::to_string(bad) + " disagreements"};
}

Outcome theorem11() {
  Minkowski1p1 m;
  Rng rng(substream_seed(kSeed, "acc7"));
  std::string detail;
  bool ok = true;
  for (std::size_t n = 2; n <= 8; ++n) {
    const Line l = m.sample_line(rng);
    std::set<Rational> ts;
    while (ts.size() < n) ts.insert(m.sample_coord(rng));
    std::vector<Event> xs;
    for (const auto& t : ts) xs.push_back(LineModel::point_on(l, t));
    rng.shuffle(xs);
    const Chain c = n == 2 ? brute_force_chain(m, xs) : chain_from_set(m, xs);
    const Segmentation seg = segmentation(m, Path::line(l), c);
    Budget b;
    b.seed = kSeed + n;
    b.samples = kCoverProbes;
    const Verdict cover = verify_segmentation(m, seg, b);
    const SegmentCount count = segment_count(m, seg);
    const bool good = cover.passed() && cover.samples >= kCoverProbes && count.count == n - 1 &&
                      count.verdict.passed();
    ok = ok && good;
    detail += "N=" + std::to_string(n) + ":" + std::to_string(count.count) + (good ? " " : "! ");
  }
  return {ok, detail + "(segments, " + std::to_string(kCoverProbes) + "+ probes each)"};
}

Outcome theorems4_13() {
  Minkowski1p1 m;
  const auto batch =
      gen_instances(m, "unreach-config", kUnreachConfigs, substream_seed(kSeed, "acc8"));
  Rng rng(substream_seed(kSeed, "acc8-pick"));
  std::size_t bad = 0;
  for (const auto& in : batch.items) {
    const Path& q = in.paths[0];
    const Event& b = in.events[0];
    const UnreachSet u = unreach_from(m, q, b);
    const auto& iv = *u.interval;
    const auto members = u.sample_members(rng, 2);
    // Qx reachable, on a random side of the interval.
    const Rational off = rng.unit_fraction(8) + rng.uniform(0, 3);
    const Rational tx = rng.coin() ? iv.lo - off : iv.hi + off;
    const Event qx = LineModel::point_on(q.as_line(), tx);
    const auto qz = thm4_bound(m, q, b, qx, members[0]);
    if (!qz || in_unreach(m, q, b, *qz) || !betw(m, qx, members[0], *qz)) ++bad;
    // Qy strictly between the two interval endpoints.
    const Event& e1 = members[0];
    const Event& e2 = members[1];
    const Event qy = LineModel::point_on(q.as_line(), (e1.t() + e2.t()) / 2);
    if (!thm13_check(m, q, b, e1, qy, e2).passed()) ++bad;
  }
  const auto fm = load_finite_model_file(fixture("reachable_gap.json"));
  const Verdict gap = run_check(fm, "thm13", Budget{});
  const bool fixture_ok = gap.failed() && replay_check(fm, "thm13", gap.witness);
  return {batch.items.size() == kUnreachConfigs && bad <= kMaxViolations && fixture_ok,
          std::to_string(batch.items.size()) + " configurations, " + std::to_string(bad) +
              " violations; reachable-gap fixture " + to_string(gap.status) +
              (fixture_ok ? " and replays" : "")};
}

Outcome theorem14() {
  Minkowski1p1 m;
  Rng rng(substream_seed(kSeed, "acc9-members"));
  std::size_t bad[3] = {0, 0, 0}, done[3] = {0, 0, 0};
  auto all_between = [&](const Event& lo, const UnreachSet& u, const Event& hi) {
    const auto ms = u.sample_members(rng, kThm14Members);
    return ms.size() == kThm14Members && betw_set(m, lo, ms, hi);
  };

  const auto cfg = gen_instances(m, "thm14-config", kThm14Configs, substream_seed(kSeed, "acc9"));
  for (const auto& in : cfg.items) {
    const Path& q = in.paths[0];
    const Event &a = in.events[0], &b = in.events[1];
    const UnreachSet ua = unreach_from(m, q, a), ub = unreach_from(m, q, b);
    // (i) bounds
    ++done[0];
    const auto bounds = thm14_bounds(m, q, a, b);
    if (!bounds || !all_between(bounds->first, ua, bounds->second) ||
        !all_between(bounds->first, ub, bounds->second)) {
      ++bad[0];
    }
    // (ii) an event beyond c, d joined to both
    ++done[1];
    const Event c = LineModel::point_on(q.as_line(), m.sample_coord(rng));
    Event d = LineModel::point_on(q.as_line(), m.sample_coord(rng));
    if (d == c) d = LineModel::point_on(q.as_line(), c.t() + 1);
    const auto ev = thm14_event(m, q, a, b, c, d);
    if (!ev || !betw(m, c, d, ev->e) || !m.is_path(ev->ae) || !m.is_path(ev->be) ||
        !m.on_path(ev->ae, a) || !m.on_path(ev->ae, ev->e) || !m.on_path(ev->be, b) ||
        !m.on_path(ev->be, ev->e) || ua.contains(ev->e) || ub.contains(ev->e)) {
      ++bad[1];
    }
  }

  // (iii) beyond Q(a,0) as seen from x
  const auto bey =
      gen_instances(m, "thm14-beyond", kThm14Configs, substream_seed(kSeed, "acc9-beyond"));
  for (const auto& in : bey.items) {
    ++done[2];
    const Path &q = in.paths[0], &r = in.paths[1];
    const Event &x = in.events[0], &a = in.events[1], &b = in.events[2];
    const auto ev = thm14_beyond(m, q, r, x, a, b);
    if (!ev || !all_between(x, unreach_from(m, q, a), ev->e) || !m.on_path(ev->ae, a) ||
        !m.on_path(ev->be, b) || !m.on_path(ev->ae, ev->e) || !m.on_path(ev->be, ev->e)) {
      ++bad[2];
    }
  }
  const bool ok = done[0] == kThm14Configs && done[1] == kThm14Configs &&
                  done[2] == kThm14Configs && bad[0] + bad[1] + bad[2] <= kMaxViolations;
  return {ok, "(i) " + std::to_string(done[0]) + "/" + std::to_string(bad[0]) + " (ii) " +
                  std::to_string(done[1]) + "/" + std::to_string(bad[1]) + " (iii) " +
                  std::to_string(done[2]) + "/" + std::to_string(bad[2]) +
                  " configurations/violations"};
}

Outcome theorem6() {
  Minkowski1p1 m;
  Rng rng(substream_seed(kSeed, "acc10"));
  const Line l = m.sample_line(rng);
  const Event a = LineModel::point_on(l, m.sample_coord(rng));
  Event b = LineModel::point_on(l, m.sample_coord(rng));
  if (b == a) b = LineModel::point_on(l, a.t() + 1);
  const auto seq = distinct_prolong_sequence(m, a, b, kProlongations);
  if (!seq) return {false, seq.verdict().reason};
  std::set<Event> all(seq->begin(), seq->end());
  all.insert(a);
  all.insert(b);
  bool copath = true;
  for (const auto& e : *seq) copath = copath && l.contains(e.coords());
  return {all.size() == kProlongations + 2 && copath,
          std::to_string(all.size()) + " pairwise-distinct events on one path"};
}

Outcome saturation() {
  FactBase two;
  two.add(Event("a"), Event("b"), Event("c"));
  two.add(Event("b"), Event("c"), Event("d"));
  const FactBase closed = saturate(two);
  const bool closure_ok = closed.consistent() &&
                          closed.holds(Event("a"), Event("b"), Event("d")) &&
                          closed.holds(Event("a"), Event("c"), Event("d"));
  FactBase clash;
  clash.add(Event("a"), Event("b"), Event("c"));
  clash.add(Event("b"), Event("a"), Event("c"));
  const bool clash_ok = !saturate(clash).consistent();

  Rng rng(substream_seed(kSeed, "acc11"));
  std::size_t not_idem = 0;
  for (std::size_t i = 0; i < kFactBases; ++i) {
    FactBase fb;
    const auto k = rng.uniform(1, 8);
    for (std::int64_t j = 0; j < k; ++j) {
      std::string n[3];
      for (auto& s : n) s = std::string(1, static_cast<char>('a' + rng.uniform(0, 5)));
      if (n[0] == n[1] || n[1] == n[2] || n[0] == n[2]) continue;
      fb.add(Event(n[0]), Event(n[1]), Event(n[2]));
    }
    const FactBase once = saturate(fb);
    const FactBase twice = saturate(once);
    if (twice.triples != once.triples || twice.consistent() != once.consistent()) ++not_idem;
  }
  return {closure_ok && clash_ok && not_idem == 0,
          std::string("closure ") + (closure_ok ? "ok" : "wrong") + ", contradiction " +
              (clash_ok ? "reported" : "missed") + ", " + std::to_string(kFactBases) +
              " random bases, " + std::to_string(not_idem) + " not idempotent"};
}

Outcome finite_pipeline() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"singleton.json", "three_event.json"}) {
    const auto fm = load_finite_model_file(fixture(name));
    SuiteOptions so;
    so.budget.seed = kSeed;
    const Report r1 = run_suite(fm, std::nullopt, so);
    const Report r2 = run_suite(fm, std::nullopt, so);
    const std::string j1 = render_report(r1, ReportFormat::json);
    const std::string j2 = render_report(r2, ReportFormat::json);
    bool exhaustive = true, i4_fail = false;
    for (const auto& c : r1.checks) {
      const Basis bs = c.verdict.basis;
      if (c.verdict.status != Status::unknown && bs != Basis::exhaustive &&
          bs != Basis::vacuous && bs != Basis::construction) {
        exhaustive = false;
      }
      if (c.id == "I4") i4_fail = c.verdict.failed();
    }
    const bool same = j1 == j2;
    ok = ok && exhaustive && i4_fail && same;
    detail += std::string(name) + ": I4 " + (i4_fail ? "fail" : "not fail") +
              (exhaustive ? ", exhaustive" : ", sampled?") +
              (same ? ", byte-identical json; " : ", json differs; ");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  criterion(1, "axiom conformance (minkowski11)", axiom_conformance);
  criterion(2, "galilean exclusion", galilean_exclusion);
  criterion(3, "betweenness reorderings", theorem1);
  criterion(4, "local = total chain order", theorem2);
  criterion(5, "triangle side meeting", theorems3_7);
  criterion(6, "chain_from_set = brute force", theorem10);
  criterion(7, "segmentation cover and count", theorem11);
  criterion(8, "unreachable bounds and convexity", theorems4_13);
  criterion(9, "events joined to two sources", theorem14);
  criterion(10, "iterated prolongation", theorem6);
  criterion(11, "saturation engine", saturation);
  criterion(12, "finite-model pipeline", finite_pipeline);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << 12 - failures << "/12" << std::endl;
  return failures ? 1 : 0;
}
