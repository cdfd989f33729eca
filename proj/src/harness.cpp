#include "schutz/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "schutz/axioms.hpp"
#include "schutz/chains.hpp"
#include "schutz/errors.hpp"
#include "schutz/instances.hpp"
#include "schutz/models.hpp"
#include "schutz/regions.hpp"
#include "schutz/sampler.hpp"
#include "schutz/unreachable.hpp"

namespace schutz {

std::string to_string(CheckKind k) {
  switch (k) {
    case CheckKind::axiom: return "axiom";
    case CheckKind::theorem: return "theorem";
    case CheckKind::lemma: return "lemma";
  }
  return "?";
}

namespace {

using Eval = std::function<std::optional<std::string>(const Model&, const Witness&)>;
using Make = std::function<std::vector<Witness>(const Model&, const Instance&, Rng&)>;

struct Part {
  std::string kind;
  std::size_t param = 0;
};

struct TheoremDef {
  std::string id;
  CheckKind kind;
  std::vector<Part> parts;
  Make make;
  Eval eval;
};

// ---- witness plumbing -----------------------------------------------------

std::vector<std::string> roles_for(const std::string& kind, std::size_t n) {
  if (kind == "betw-triple" || kind == "triple-on-path") return {"a", "b", "c"};
  if (kind == "triangle-de") return {"a", "b", "c", "d", "e"};
  if (kind == "triangle-mid") return {"a", "b", "c", "a'", "b'", "c'"};
  if (kind == "lemma12" || kind == "lemma3") return {"a", "b", "c", "d"};
  if (kind == "unreach-config") return {"b"};
  if (kind == "thm14-config") return {"a", "b"};
  if (kind == "thm14-beyond") return {"x", "a", "b"};
  std::vector<std::string> r;
  for (std::size_t i = 0; i < n; ++i) r.push_back("s" + std::to_string(i));
  return r;
}

Witness plain_witness(const std::string& kind, const Instance& in) {
  Witness w;
  const auto roles = roles_for(kind, in.events.size());
  for (std::size_t i = 0; i < in.events.size(); ++i) w.event(roles[i], in.events[i]);
  static const char* path_roles[] = {"Q", "R"};
  for (std::size_t i = 0; i < in.paths.size() && i < 2; ++i) {
    w.path(path_roles[i], in.paths[i]);
  }
  return w;
}

std::vector<Event> seq_of(const Witness& w) {
  std::vector<Event> out;
  for (const auto& [role, e] : w.events) {
    if (role.size() > 1 && role[0] == 's' &&
        std::isdigit(static_cast<unsigned char>(role[1]))) {
      out.push_back(e);
    }
  }
  return out;
}

std::uint64_t probe_seed(const Witness& w) {
  const auto s = w.get_fact("probe_seed");
  return s ? std::stoull(*s) : 0;
}

std::vector<Event> unreach_probe(const Model& m, const Path& q,
                                 const Event& b, Rng& rng, std::size_t n) {
  return unreach_from(m, q, b).sample_members(rng, n);
}

Rational param_between(Rng& rng, const Rational& lo, const Rational& hi) {
  return lo + (hi - lo) * rng.unit_fraction(32);
}

// ---- theorem bodies -------------------------------------------------------

std::optional<std::string> eval_thm1(const Model& m, const Witness& w) {
  const Event a = w.get_event("a"), b = w.get_event("b"), c = w.get_event("c");
  if (!betw(m, a, b, c)) return std::nullopt;
  if (!betw(m, c, b, a)) return "[c b a] does not hold";
  const std::array<std::pair<const char*, std::array<Event, 3>>, 4> bad{{
      {"[b c a]", {b, c, a}},
      {"[c a b]", {c, a, b}},
      {"[b a c]", {b, a, c}},
      {"[a c b]", {a, c, b}},
  }};
  for (const auto& [name, t] : bad) {
    if (betw(m, t[0], t[1], t[2])) return std::string(name) + " also holds";
  }
  return std::nullopt;
}

std::optional<std::string> eval_thm2(const Model& m, const Witness& w) {
  const auto seq = seq_of(w);
  const bool local = check_local_order(m, seq);
  const bool total = check_total_order(m, seq);
  if (local == total) return std::nullopt;
  return local ? "locally ordered but not totally" : "totally ordered but not locally";
}

std::optional<std::string> eval_side_meet(const Model& m, const Witness& w,
                                          bool thm7) {
  const Event a = w.get_event("a"), b = w.get_event("b"), c = w.get_event("c"),
              d = w.get_event("d"), e = w.get_event("e");
  const auto f = thm7 ? thm7_witness(m, a, b, c, d, e)
                      : thm3_witness(m, a, b, c, d, e);
  if (!f) return f.verdict().reason;
  if (!m.on_path(*path_through(m, a, b), *f) ||
      !m.on_path(*path_through(m, d, e), *f)) {
    return "f " + f->id() + " is not on both paths";
  }
  if (!betw(m, a, *f, b)) return "[a f b] fails for f " + f->id();
  if (thm7 && !betw(m, d, e, *f)) return "[d e f] fails for f " + f->id();
  return std::nullopt;
}

std::optional<std::string> eval_thm4(const Model& m, const Witness& w) {
  const Path& q = w.get_path("Q");
  const Event b = w.get_event("b"), qx = w.get_event("Qx"), qy = w.get_event("Qy");
  const auto qz = thm4_bound(m, q, b, qx, qy);
  if (!qz) return qz.verdict().reason;
  if (!m.on_path(q, *qz) || in_unreach(m, q, b, *qz)) {
    return "Qz " + qz->id() + " is not a reachable event of Q";
  }
  if (*qz == qx || !betw(m, qx, qy, *qz)) return "[Qx Qy Qz] fails";
  return std::nullopt;
}

std::optional<std::string> eval_thm5(const Model& m, const Witness& w) {
  const Path& q = w.get_path("Q");
  const Event a = w.get_event("s0");
  if (const auto* fm = as_finite_model(m)) {
    const auto mem = fm->members(q);
    if (std::none_of(mem.begin(), mem.end(), [&](const Event& e) { return e != a; })) {
      return "(i) no second event on Q";
    }
    for (const auto& c : fm->events()) {
      if (!m.on_path(q, c) && path_through(m, a, c)) return std::nullopt;
    }
    return "(ii) no event off Q joined to a";
  }
  const Line& l = q.as_line();
  const Event b = LineModel::point_on(l, a.t() + 1);
  if (b == a || !m.on_path(q, b)) return "(i) no second event on Q";
  const Rational v = l.v.sign() == 0 ? Rational(1, 2) : Rational(0);
  const Line other{v, a.x() - v * a.t()};
  const Event c = LineModel::point_on(other, a.t() + 1);
  const auto ac = path_through(m, a, c);
  if (m.on_path(q, c) || !ac || *ac == q) return "(ii) construction failed";
  return std::nullopt;
}

std::optional<std::string> eval_thm6(const Model& m, const Witness& w) {
  const auto s = seq_of(w);
  if (s.size() == 2) {
    const auto c = prolong(m, s[0], s[1]);
    if (!c) return "(i) " + c.verdict().reason;
    if (!betw(m, s[0], s[1], *c)) return "(i) [a b c] fails";
    if (!m.finite()) {
      const auto seq = distinct_prolong_sequence(m, s[0], s[1], 8);
      if (!seq) return "(ii) " + seq.verdict().reason;
      std::vector<Event> all{s[0], s[1]};
      all.insert(all.end(), seq->begin(), seq->end());
      if (!index_injective_check(all)) return "(ii) prolongations repeat";
    }
    return std::nullopt;
  }
  const auto [x, y] = chain_ends(m, s);
  for (const auto& e : s) {
    if (e != x && e != y && !betw(m, x, e, y)) {
      return e.id() + " is not between the ends";
    }
  }
  return std::nullopt;
}

std::optional<std::string> eval_thm8(const Model& m, const Witness& w) {
  const auto v = thm8_check(m, w.get_event("a"), w.get_event("b"),
                            w.get_event("c"), w.get_event("a'"),
                            w.get_event("b'"), w.get_event("c'"));
  if (v.failed()) return v.reason;
  return std::nullopt;
}

std::optional<std::string> eval_thm9(const Model& m, const Witness& w) {
  const auto s = seq_of(w);
  const Chain c = chain4(m, s[0], s[1], s[2], s[3]);
  if (c.size() != 4 || !check_total_order(m, c.seq)) return "chain4 is not a chain";
  if (!same_up_to_reversal(c, brute_force_chain(m, s))) {
    return "chain4 disagrees with the exhaustive ordering";
  }
  return std::nullopt;
}

std::optional<std::string> eval_thm10(const Model& m, const Witness& w) {
  const auto s = seq_of(w);
  const Chain c = chain_from_set(m, s);
  const Chain bf = brute_force_chain(m, s);
  if (!same_up_to_reversal(c, bf)) {
    return "builder " + c.str() + " vs exhaustive " + bf.str();
  }
  return std::nullopt;
}

std::optional<std::string> eval_thm11(const Model& m, const Witness& w) {
  const auto s = seq_of(w);
  const Path& q = w.get_path("Q");
  const Chain c = s.size() == 2 ? Chain{s, q} : chain_from_set(m, s);
  const Segmentation seg = segmentation(m, q, c);
  Budget probes;
  probes.seed = probe_seed(w);
  probes.samples = 200;
  const auto v = verify_segmentation(m, seg, probes);
  if (v.failed()) {
    return v.reason + " at " + v.witness.get_event("x").id();
  }
  const auto n = segment_count(m, seg);
  if (n.verdict.failed()) return n.verdict.reason;
  return std::nullopt;
}

std::optional<std::string> eval_thm13(const Model& m, const Witness& w) {
  const auto v = thm13_check(m, w.get_path("Q"), w.get_event("b"),
                             w.get_event("Qx"), w.get_event("Qy"),
                             w.get_event("Qz"));
  if (v.failed()) return v.reason;
  return std::nullopt;
}

std::optional<std::string> joined(const Model& m, const Path& p,
                                  const Event& u, const Event& v,
                                  const char* name) {
  if (!m.is_path(p) || !m.on_path(p, u) || !m.on_path(p, v)) {
    return std::string("path ") + name + " does not join its events";
  }
  return std::nullopt;
}

std::optional<std::string> eval_thm14(const Model& m, const Witness& w) {
  const Path& q = w.get_path("Q");
  const Event a = w.get_event("a"), b = w.get_event("b");
  Rng rng(probe_seed(w));
  if (w.has_path("R")) {
    const Event x = w.get_event("x");
    const auto r = thm14_beyond(m, q, w.get_path("R"), x, a, b);
    if (!r) return "(iii) " + r.verdict().reason;
    for (const auto& y : unreach_probe(m, q, a, rng, 100)) {
      if (!betw(m, x, y, r->e)) return "(iii) [x " + y.id() + " e] fails";
    }
    if (auto bad = joined(m, r->ae, a, r->e, "ae")) return "(iii) " + *bad;
    if (auto bad = joined(m, r->be, b, r->e, "be")) return "(iii) " + *bad;
    return std::nullopt;
  }
  const auto yz = thm14_bounds(m, q, a, b);
  if (!yz) return "(i) " + yz.verdict().reason;
  const auto& [y, z] = *yz;
  for (const Event* src : {&a, &b}) {
    for (const auto& u : unreach_probe(m, q, *src, rng, 100)) {
      if (!betw(m, y, u, z)) return "(i) member " + u.id() + " not between bounds";
    }
  }
  if (!w.has_event("c")) return std::nullopt;
  const Event c = w.get_event("c"), d = w.get_event("d");
  const auto r = thm14_event(m, q, a, b, c, d);
  if (!r) return "(ii) " + r.verdict().reason;
  if (!m.on_path(q, r->e) || !betw(m, c, d, r->e)) return "(ii) [c d e] fails";
  if (auto bad = joined(m, r->ae, a, r->e, "ae")) return "(ii) " + *bad;
  if (auto bad = joined(m, r->be, b, r->e, "be")) return "(ii) " + *bad;
  return std::nullopt;
}

template <Verdict (*F)(const Model&, const Event&, const Event&, const Event&,
                       const Event&)>
std::optional<std::string> eval_lemma(const Model& m, const Witness& w) {
  const auto v = F(m, w.get_event("a"), w.get_event("b"), w.get_event("c"),
                   w.get_event("d"));
  if (v.failed()) return v.reason;
  return std::nullopt;
}

// ---- instance expansion ---------------------------------------------------

Make plain(std::string kind) {
  return [kind](const Model&, const Instance& in, Rng&) {
    return std::vector<Witness>{plain_witness(kind, in)};
  };
}

Make with_probe_seed(std::string kind) {
  return [kind](const Model&, const Instance& in, Rng& rng) {
    Witness w = plain_witness(kind, in);
    w.fact("probe_seed", std::to_string(rng.next() >> 1));
    return std::vector<Witness>{w};
  };
}

std::vector<Witness> make_thm4(const Model& m, const Instance& in, Rng& rng) {
  const Path& q = in.paths[0];
  const Event& b = in.events[0];
  const auto u = unreach_from(m, q, b);
  std::vector<Witness> out;
  auto add = [&](const Event& qx, const Event& qy) {
    out.push_back(Witness{}.path("Q", q).event("b", b).event("Qx", qx).event("Qy", qy));
  };
  if (const auto* fm = as_finite_model(m)) {
    for (const auto& qx : fm->members(q)) {
      if (u.contains(qx)) continue;
      for (const auto& qy : u.members) add(qx, qy);
    }
    return out;
  }
  const auto mem = u.sample_members(rng, 3);
  if (mem.empty()) return out;
  const auto& iv = *u.interval;
  const Rational step = rng.unit_fraction(8) * Rational(rng.uniform(1, 8));
  const Rational tx = rng.coin() ? iv.lo - step : iv.hi + step;
  add(LineModel::point_on(q.as_line(), tx), mem.back());
  return out;
}

std::vector<Witness> make_thm13(const Model& m, const Instance& in, Rng& rng) {
  const Path& q = in.paths[0];
  const Event& b = in.events[0];
  const auto u = unreach_from(m, q, b);
  std::vector<Witness> out;
  auto add = [&](const Event& qx, const Event& qy, const Event& qz) {
    out.push_back(Witness{}.path("Q", q).event("b", b).event("Qx", qx)
                      .event("Qy", qy).event("Qz", qz));
  };
  if (const auto* fm = as_finite_model(m)) {
    for (const auto& qx : u.members)
      for (const auto& qz : u.members) {
        if (qx == qz) continue;
        for (const auto& qy : fm->members(q)) {
          if (m.betw_raw(qx, qy, qz)) add(qx, qy, qz);
        }
      }
    return out;
  }
  const auto mem = u.sample_members(rng, 6);
  if (mem.size() < 2) return out;  // hypotheses unmet
  const Event& qx = mem[0];
  const Event& qz = mem[1 + static_cast<std::size_t>(
                              rng.uniform(0, static_cast<std::int64_t>(mem.size()) - 2))];
  add(qx, LineModel::point_on(q.as_line(), param_between(rng, qx.t(), qz.t())), qz);
  return out;
}

std::vector<Witness> make_thm14(const Model& m, const Instance& in, Rng& rng) {
  Witness base = plain_witness(in.paths.size() == 2 ? "thm14-beyond" : "thm14-config", in);
  base.fact("probe_seed", std::to_string(rng.next() >> 1));
  if (in.paths.size() == 2) return {base};
  const Path& q = in.paths[0];
  std::vector<Witness> out;
  if (const auto* fm = as_finite_model(m)) {
    const auto mem = fm->members(q);
    for (const auto& c : mem)
      for (const auto& d : mem) {
        if (c == d) continue;
        Witness w = base;
        out.push_back(w.event("c", c).event("d", d));
      }
    if (out.empty()) out.push_back(base);
    return out;
  }
  const auto* lm = as_line_model(m);
  const Rational tc = lm->sample_coord(rng);
  Rational td = lm->sample_coord(rng);
  if (td == tc) td = tc + 1;
  Witness w = base;
  w.event("c", LineModel::point_on(q.as_line(), tc));
  w.event("d", LineModel::point_on(q.as_line(), td));
  return {w};
}

// ---- registry -------------------------------------------------------------

std::vector<Part> sizes(const std::string& kind, std::size_t lo, std::size_t hi) {
  std::vector<Part> p;
  for (std::size_t k = lo; k <= hi; ++k) p.push_back({kind, k});
  return p;
}

const std::vector<TheoremDef>& theorems() {
  using K = CheckKind;
  static const std::vector<TheoremDef> defs{
      {"thm1", K::theorem, {{"betw-triple"}}, plain("betw-triple"), eval_thm1},
      {"thm2", K::theorem, {{"chain-seq"}}, plain("chain-seq"), eval_thm2},
      {"thm3", K::theorem, {{"triangle-de"}}, plain("triangle-de"),
       [](const Model& m, const Witness& w) { return eval_side_meet(m, w, false); }},
      {"thm4", K::theorem, {{"unreach-config"}}, make_thm4, eval_thm4},
      {"thm5", K::theorem, {{"copath-set", 1}}, plain("copath-set"), eval_thm5},
      {"thm6", K::theorem, sizes("copath-set", 2, 5), plain("copath-set"), eval_thm6},
      {"thm7", K::theorem, {{"triangle-de"}}, plain("triangle-de"),
       [](const Model& m, const Witness& w) { return eval_side_meet(m, w, true); }},
      {"thm8", K::theorem, {{"triangle-mid"}}, plain("triangle-mid"), eval_thm8},
      {"thm9", K::theorem, {{"copath-set", 4}}, plain("copath-set"), eval_thm9},
      {"thm10", K::theorem, sizes("copath-set", 2, 7), plain("copath-set"), eval_thm10},
      {"thm11", K::theorem, sizes("copath-set", 2, 8), with_probe_seed("copath-set"),
       eval_thm11},
      {"thm13", K::theorem, {{"unreach-config"}}, make_thm13, eval_thm13},
      {"thm14", K::theorem, {{"thm14-config"}, {"thm14-beyond"}}, make_thm14, eval_thm14},
      {"lemma1", K::lemma, {{"lemma12"}}, plain("lemma12"), eval_lemma<check_lemma1>},
      {"lemma2", K::lemma, {{"lemma12"}}, plain("lemma12"), eval_lemma<check_lemma2>},
      {"lemma3", K::lemma, {{"lemma3"}}, plain("lemma3"), eval_lemma<check_lemma3>},
  };
  return defs;
}

const TheoremDef* find_theorem(const std::string& id) {
  for (const auto& d : theorems()) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

std::optional<std::string> evaluate(const TheoremDef& d, const Model& m,
                                    const Witness& w) {
  try {
    return d.eval(m, w);
  } catch (const Error& e) {
    return std::string(e.what());
  }
}

Verdict run_theorem(const Model& m, const TheoremDef& d, const Budget& b) {
  std::size_t used = 0;
  bool exhaustive = true;
  bool starved = false;
  Rng rng(substream_seed(b.seed, d.id + "/make"));
  const std::size_t per = std::max<std::size_t>(
      1, (b.samples + d.parts.size() - 1) / d.parts.size());
  for (const auto& part : d.parts) {
    const auto batch = gen_instances(
        m, part.kind, per,
        substream_seed(b.seed, d.id + "/" + part.kind + "/" + std::to_string(part.param)),
        part.param);
    exhaustive = exhaustive && batch.exhaustive;
    starved = starved || batch.starved;
    const Basis basis = batch.exhaustive ? Basis::exhaustive : Basis::sampled;
    for (const auto& inst : batch.items) {
      for (auto& w : d.make(m, inst, rng)) {
        if (b.expired()) return Verdict::unknown("timeout", used);
        ++used;
        if (auto why = evaluate(d, m, w)) {
          return Verdict::fail(std::move(w), *why, used, basis);
        }
      }
    }
  }
  if (used == 0) {
    if (exhaustive) return Verdict::pass(Basis::vacuous, 0, "no instance meets the hypotheses");
    return Verdict::unknown("no conforming instances generated");
  }
  std::string note;
  if (starved) note = "rejection budget exhausted before all samples";
  if (d.id == "thm14") note = note.empty() ? "strict bounds" : note + "; strict bounds";
  return Verdict::pass(exhaustive ? Basis::exhaustive : Basis::sampled, used, note);
}

}  // namespace

const std::vector<CheckSpec>& registry() {
  static const std::vector<CheckSpec> specs = [] {
    std::vector<CheckSpec> v;
    for (const auto id : all_axioms()) v.push_back({to_string(id), CheckKind::axiom, "axiom"});
    for (const auto& d : theorems()) {
      std::string s;
      for (const auto& p : d.parts) {
        if (s.find(p.kind) == std::string::npos) s += (s.empty() ? "" : "+") + p.kind;
      }
      v.push_back({d.id, d.kind, s});
    }
    return v;
  }();
  return specs;
}

const CheckSpec* find_check(const std::string& id) {
  for (const auto& s : registry()) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

namespace {

void assert_registry_complete() {
  static const char* required[] = {
      "I1", "I2", "I3", "InPathEvent", "O1", "O2", "O3", "O4", "O5", "O6",
      "I5", "I6", "I7", "S", "C", "I4", "thm1", "thm2", "thm3", "thm4",
      "thm5", "thm6", "thm7", "thm8", "thm9", "thm10", "thm11", "thm13",
      "thm14", "lemma1", "lemma2", "lemma3"};
  for (const char* id : required) {
    if (!find_check(id)) throw InconsistencyError(std::string("unregistered check ") + id);
  }
}

}  // namespace

Verdict run_check(const Model& m, const std::string& id, const Budget& b) {
  if (const auto ax = parse_axiom_id(id)) return check_axiom(m, *ax, b);
  if (const auto* d = find_theorem(id)) return run_theorem(m, *d, b);
  throw InputError("unknown check id '" + id + "'");
}

bool replay_check(const Model& m, const std::string& id, const Witness& w) {
  if (const auto ax = parse_axiom_id(id)) {
    try {
      return replay_axiom_witness(m, *ax, w);
    } catch (const Error&) {
      return false;
    }
  }
  if (const auto* d = find_theorem(id)) return evaluate(*d, m, w).has_value();
  throw InputError("unknown check id '" + id + "'");
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(),
      [&](const CheckResult& c) { return c.verdict.status == s; }));
}

Report run_suite(const Model& m,
                 const std::optional<std::vector<std::string>>& selection,
                 const SuiteOptions& opts) {
  assert_registry_complete();
  std::vector<std::string> ids;
  if (selection) {
    for (const auto& id : *selection) {
      if (!find_check(id)) throw InputError("unknown check id '" + id + "'");
      ids.push_back(id);
    }
  } else {
    for (const auto& s : registry()) ids.push_back(s.id);
  }
  Report r;
  r.model = m.descriptor();
  r.seed = opts.budget.seed;
  r.samples = opts.budget.samples;
  r.notes = {
      "lightlike pairs are not path-connected, so unreachable intervals are closed",
      "theorem 14 bounds use strict betweenness",
      "axiom S: Q is invariant under theta (pointwise)",
  };
  for (const auto& id : ids) {
    Budget b = opts.budget;
    const auto t0 = std::chrono::steady_clock::now();
    b.deadline = t0 + opts.timeout;
    CheckResult c{id, find_check(id)->kind, run_check(m, id, b), 0};
    c.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    r.checks.push_back(std::move(c));
  }
  return r;
}

// ---- rendering ------------------------------------------------------------

namespace {

using nlohmann::json;

json witness_json(const Witness& w) {
  json j = json::object();
  json ev = json::object(), ps = json::object(), fs = json::object();
  for (const auto& [k, e] : w.events) ev[k] = e.id();
  for (const auto& [k, p] : w.paths) ps[k] = p.id();
  for (const auto& [k, v] : w.facts) fs[k] = v;
  if (!ev.empty()) j["events"] = ev;
  if (!ps.empty()) j["paths"] = ps;
  if (!fs.empty()) j["facts"] = fs;
  return j;
}

Status parse_status(const std::string& s) {
  for (const auto st : {Status::pass, Status::fail, Status::unknown}) {
    if (to_string(st) == s) return st;
  }
  throw ParseError("bad status '" + s + "'");
}

Basis parse_basis(const std::string& s) {
  for (const auto b : {Basis::exhaustive, Basis::sampled, Basis::evidence,
                       Basis::vacuous, Basis::construction, Basis::none}) {
    if (to_string(b) == s) return b;
  }
  throw ParseError("bad basis '" + s + "'");
}

std::string pad(std::string s, std::size_t n) {
  if (s.size() < n) s.resize(n, ' ');
  return s;
}

}  // namespace

std::string render_report(const Report& r, ReportFormat f) {
  if (f == ReportFormat::json) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      json j;
      j["id"] = c.id;
      j["kind"] = to_string(c.kind);
      j["verdict"] = to_string(c.verdict.status);
      j["basis"] = to_string(c.verdict.basis);
      j["samples"] = c.verdict.samples;
      j["reason"] = c.verdict.reason;
      j["witness"] = witness_json(c.verdict.witness);
      checks.push_back(std::move(j));
    }
    json doc;
    doc["model"] = r.model;
    doc["seed"] = r.seed;
    doc["samples"] = r.samples;
    doc["checks"] = std::move(checks);
    doc["notes"] = r.notes;
    doc["summary"] = {{"pass", r.count(Status::pass)},
                      {"fail", r.count(Status::fail)},
                      {"unknown", r.count(Status::unknown)}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "model " << r.model << "  seed " << r.seed << "  samples " << r.samples << "\n";
  out << pad("check", 12) << pad("kind", 9) << pad("verdict", 9)
      << pad("basis", 14) << pad("samples", 9) << pad("ms", 9) << "detail\n";
  for (const auto& c : r.checks) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f", c.wall_ms);
    std::string detail = c.verdict.reason;
    if (c.verdict.failed() && !c.verdict.witness.empty()) {
      std::string w;
      for (const auto& [k, e] : c.verdict.witness.events) w += " " + k + "=" + e.id();
      for (const auto& [k, p] : c.verdict.witness.paths) w += " " + k + "=" + p.id();
      detail += " |" + w;
    }
    out << pad(c.id, 12) << pad(to_string(c.kind), 9)
        << pad(to_string(c.verdict.status), 9) << pad(to_string(c.verdict.basis), 14)
        << pad(std::to_string(c.verdict.samples), 9) << pad(ms, 9) << detail << "\n";
  }
  out << "pass " << r.count(Status::pass) << "  fail " << r.count(Status::fail)
      << "  unknown " << r.count(Status::unknown) << "\n";
  return out.str();
}

Event resolve_event(const Model& m, const std::string& id) {
  if (!id.empty() && id.front() == '(') return parse_event(id);
  Event e(id);
  require_event(m, e);
  return e;
}

Path resolve_path(const Model& m, const std::string& id) {
  if (id.rfind("line(", 0) == 0 && id.back() == ')') {
    return Path::line(parse_line(id.substr(5, id.size() - 6)));
  }
  const auto* fm = as_finite_model(m);
  if (fm && id.size() >= 2 && id.front() == '{' && id.back() == '}') {
    // Members in any order.
    std::vector<std::string> names;
    std::stringstream ss(id.substr(1, id.size() - 2));
    for (std::string n; std::getline(ss, n, ',');) names.push_back(n);
    std::sort(names.begin(), names.end());
    for (const auto& p : fm->paths()) {
      if (p.members() == names) return p;
    }
  }
  throw ParseError("unknown path '" + id + "'");
}

Report parse_report(const std::string& text, const Model& m) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  Report r;
  try {
    r.model = doc.at("model").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.samples = doc.at("samples").get<std::size_t>();
    r.notes = doc.value("notes", std::vector<std::string>{});
    for (const auto& j : doc.at("checks")) {
      CheckResult c;
      c.id = j.at("id").get<std::string>();
      const auto* spec = find_check(c.id);
      if (!spec) throw ParseError("unknown check '" + c.id + "'");
      c.kind = spec->kind;
      c.verdict.status = parse_status(j.at("verdict").get<std::string>());
      c.verdict.basis = parse_basis(j.at("basis").get<std::string>());
      c.verdict.samples = j.at("samples").get<std::size_t>();
      c.verdict.reason = j.at("reason").get<std::string>();
      const auto& w = j.at("witness");
      if (w.contains("events")) {
        for (const auto& [k, v] : w["events"].items()) {
          c.verdict.witness.event(k, resolve_event(m, v.get<std::string>()));
        }
      }
      if (w.contains("paths")) {
        for (const auto& [k, v] : w["paths"].items()) {
          c.verdict.witness.path(k, resolve_path(m, v.get<std::string>()));
        }
      }
      if (w.contains("facts")) {
        for (const auto& [k, v] : w["facts"].items()) {
          c.verdict.witness.fact(k, v.get<std::string>());
        }
      }
      r.checks.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return r;
}

}  // namespace schutz
