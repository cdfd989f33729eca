#include "schutz/axioms.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "schutz/errors.hpp"
#include "schutz/instances.hpp"
#include "schutz/models.hpp"
#include "schutz/sampler.hpp"
#include "schutz/unreachable.hpp"

namespace schutz {

namespace {

const std::vector<std::pair<AxiomId, std::string>>& axiom_names() {
  static const std::vector<std::pair<AxiomId, std::string>> names{
      {AxiomId::I1, "I1"},   {AxiomId::I2, "I2"},
      {AxiomId::I3, "I3"},   {AxiomId::InPathEvent, "InPathEvent"},
      {AxiomId::O1, "O1"},   {AxiomId::O2, "O2"},
      {AxiomId::O3, "O3"},   {AxiomId::O4, "O4"},
      {AxiomId::O5, "O5"},   {AxiomId::O6, "O6"},
      {AxiomId::I5, "I5"},   {AxiomId::I6, "I6"},
      {AxiomId::I7, "I7"},   {AxiomId::S, "S"},
      {AxiomId::C, "C"},     {AxiomId::I4, "I4"}};
  return names;
}

}  // namespace

const std::vector<AxiomId>& all_axioms() {
  static const std::vector<AxiomId> ids = [] {
    std::vector<AxiomId> v;
    for (const auto& [id, name] : axiom_names()) v.push_back(id);
    return v;
  }();
  return ids;
}

std::string to_string(AxiomId id) {
  for (const auto& [k, name] : axiom_names()) {
    if (k == id) return name;
  }
  return "?";
}

std::optional<AxiomId> parse_axiom_id(std::string_view s) {
  for (const auto& [k, name] : axiom_names()) {
    if (name == s) return k;
  }
  return std::nullopt;
}

namespace {

using Failure = std::optional<std::pair<Witness, std::string>>;

const FiniteModel* finite_of(const Model& m) { return as_finite_model(m); }

Witness events_witness(const std::vector<Event>& ev,
                       std::initializer_list<const char*> roles) {
  Witness w;
  std::size_t i = 0;
  for (const char* r : roles) {
    if (i < ev.size()) w.event(r, ev[i++]);
  }
  return w;
}

// Runs `f` over generated instances. The first failure ends the run.
Verdict over_instances(const Model& m, std::string_view kind,
                       const Budget& b, std::string_view check_id,
                       const std::function<Failure(const Instance&)>& f,
                       std::size_t param = 0) {
  const auto batch = gen_instances(m, kind, b.samples,
                                   substream_seed(b.seed, check_id), param);
  const Basis basis = batch.exhaustive ? Basis::exhaustive : Basis::sampled;
  std::size_t used = 0;
  for (const auto& inst : batch.items) {
    if (b.expired()) return Verdict::unknown("timeout", used);
    ++used;
    if (auto fail = f(inst)) {
      return Verdict::fail(std::move(fail->first), fail->second, used, basis);
    }
  }
  if (used == 0) {
    if (batch.exhaustive) {
      return Verdict::pass(Basis::vacuous, 0, "no instance meets the hypotheses");
    }
    return Verdict::unknown("no conforming instances generated", 0);
  }
  std::string note;
  if (batch.starved) note = "rejection budget exhausted before all samples";
  return Verdict::pass(basis, used, note);
}

bool some_path_contains(const Model& m, const std::vector<Event>& ev) {
  if (const auto* fm = finite_of(m)) {
    return std::any_of(fm->paths().begin(), fm->paths().end(),
                       [&](const Path& p) {
                         return std::all_of(ev.begin(), ev.end(),
                                            [&](const Event& e) {
                                              return m.on_path(p, e);
                                            });
                       });
  }
  return common_path(m, ev).has_value();
}

bool o5_holds(const Model& m, const Event& a, const Event& b,
              const Event& c) {
  return m.betw_raw(a, b, c) || m.betw_raw(b, c, a) || m.betw_raw(c, a, b) ||
         m.betw_raw(c, b, a) || m.betw_raw(a, c, b) || m.betw_raw(b, a, c);
}

// ---- I2 / I3 --------------------------------------------------------------

bool i2_holds(const Model& m, const Event& a, const Event& b) {
  if (const auto* fm = finite_of(m)) {
    for (const auto& r : fm->paths_containing(a)) {
      for (const auto& s : fm->paths_containing(b)) {
        const auto rm = fm->members(r);
        for (const auto& e : rm) {
          if (m.on_path(s, e)) return true;
        }
      }
    }
    return false;
  }
  // A common event in the future of both.
  const Rational dx = (a.x() - b.x()).abs();
  const Event c(max(a.t(), b.t()) + dx + 1, (a.x() + b.x()) / Rational(2));
  return m.path_through_raw(a, c) && m.path_through_raw(b, c);
}

std::vector<Path> paths_with_both(const FiniteModel& fm, const Event& a,
                                  const Event& b) {
  std::vector<Path> out;
  std::set<std::vector<Event>> seen;
  for (const auto& p : fm.paths()) {
    if (fm.on_path(p, a) && fm.on_path(p, b) && seen.insert(fm.members(p)).second) {
      out.push_back(p);
    }
  }
  return out;
}

// ---- O6 -------------------------------------------------------------------

std::optional<Event> o6_meet(const Model& m, const Path& q, const Path& t,
                             const Event& a, const Event& b) {
  if (const auto* fm = finite_of(m)) {
    for (const auto& f : fm->members(t)) {
      if (m.on_path(q, f) && m.betw_raw(a, f, b)) return f;
    }
    return std::nullopt;
  }
  if (q == t) return std::nullopt;
  auto f = line_intersection(q, t);
  if (f && m.betw_raw(a, *f, b)) return f;
  return std::nullopt;
}

Witness o6_witness(const Path& q, const Path& r, const Path& s, const Path& t,
                   const std::vector<Event>& ev) {
  Witness w = events_witness(ev, {"a", "b", "c", "d", "e"});
  w.path("Q", q).path("R", r).path("S", s).path("T", t);
  return w;
}

Verdict check_o6_finite(const FiniteModel& fm, const Budget& b) {
  const auto& P = fm.paths();
  std::size_t instances = 0;
  for (const auto& q : P)
    for (const auto& r : P)
      for (const auto& s : P) {
        if (q == r || q == s || r == s) continue;
        if (b.expired()) return Verdict::unknown("timeout", instances);
        const auto qm = fm.members(q);
        const auto rm = fm.members(r);
        const auto sm = fm.members(s);
        for (const auto& a : qm) {
          if (!fm.on_path(r, a)) continue;
          for (const auto& bb : qm) {
            if (!fm.on_path(s, bb)) continue;
            for (const auto& c : rm) {
              if (!fm.on_path(s, c)) continue;
              for (const auto& d : sm) {
                if (!fm.betw_raw(bb, c, d)) continue;
                for (const auto& e : rm) {
                  if (!fm.betw_raw(c, e, a)) continue;
                  for (const auto& t : P) {
                    if (!fm.on_path(t, d) || !fm.on_path(t, e)) continue;
                    ++instances;
                    if (!o6_meet(fm, q, t, a, bb)) {
                      return Verdict::fail(
                          o6_witness(q, r, s, t, {a, bb, c, d, e}),
                          "T meets Q in no event f with [a f b]", instances);
                    }
                  }
                }
              }
            }
          }
        }
      }
  if (instances == 0) {
    return Verdict::pass(Basis::vacuous, 0, "no instance meets the hypotheses");
  }
  return Verdict::pass(Basis::exhaustive, instances);
}

// ---- I6 -------------------------------------------------------------------

// Finite I6 for one (Q, b, Qx, Qz): the full unreachable set between the
// endpoints first, then subsets of it.
Verdict i6_finite(const FiniteModel& fm, const Path& q, const Event& b,
                  const Event& qx, const Event& qz, const Budget& budget) {
  auto full = i6_chain(fm, q, b, qx, qz);
  if (full) return Verdict::pass(Basis::exhaustive, 1);
  std::vector<Event> inner;
  for (const auto& y : fm.members(q)) {
    if (y != qx && y != qz && in_unreach(fm, q, b, y)) inner.push_back(y);
  }
  if (inner.size() > budget.max_indep_paths) {
    return Verdict::unknown("I6 subset search exceeds guard");
  }
  const auto probes = fm.members(q);
  for (std::uint32_t mask = 0; mask < (1u << inner.size()); ++mask) {
    std::vector<Event> xs{qx, qz};
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (mask & (1u << i)) xs.push_back(inner[i]);
    }
    Chain c;
    try {
      c = xs.size() == 2 ? Chain{xs, q} : brute_force_chain(fm, xs);
    } catch (const Error&) {
      continue;
    }
    if (c.front() != qx) c = reverse_chain(c);
    if (c.front() != qx || c.back() != qz) continue;
    if (check_i6_chain(fm, q, b, c, probes).passed()) {
      return Verdict::pass(Basis::exhaustive, 1);
    }
  }
  return full.verdict();
}

Verdict check_i6(const Model& m, const Budget& b) {
  if (const auto* fm = finite_of(m)) {
    std::size_t n = 0;
    for (const auto& q : fm->paths()) {
      for (const auto& src : fm->events()) {
        if (fm->on_path(q, src)) continue;
        const auto u = unreach_from(m, q, src);
        for (const auto& qx : u.members) {
          for (const auto& qz : u.members) {
            if (qx == qz) continue;
            if (b.expired()) return Verdict::unknown("timeout", n);
            ++n;
            auto v = i6_finite(*fm, q, src, qx, qz, b);
            if (v.undecided()) return v;
            if (v.failed()) {
              Witness w;
              w.path("Q", q).event("b", src).event("Qx", qx).event("Qz", qz);
              return Verdict::fail(w, v.reason, n);
            }
          }
        }
      }
    }
    if (n == 0) return Verdict::pass(Basis::vacuous, 0, "no instance meets the hypotheses");
    return Verdict::pass(Basis::exhaustive, n);
  }

  Rng rng(substream_seed(b.seed, "I6/members"));
  return over_instances(m, "unreach-config", b, "I6", [&](const Instance& in)
                                                          -> Failure {
    const Path& q = in.paths[0];
    const Event& src = in.events[0];
    const auto u = unreach_from(m, q, src);
    const auto mem = u.sample_members(rng, 6);
    if (mem.size() < 2) return std::nullopt;  // hypotheses unmet
    const Event& qx = mem[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(mem.size()) - 1))];
    Event qz = mem[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(mem.size()) - 1))];
    if (qz == qx) qz = mem[0] == qx ? mem[1] : mem[0];
    const auto interior = static_cast<std::size_t>(rng.uniform(0, 3));
    auto chain = i6_chain(m, q, src, qx, qz, interior);
    Witness w;
    w.path("Q", q).event("b", src).event("Qx", qx).event("Qz", qz);
    if (!chain) return std::pair{w, chain.verdict().reason};
    if (chain->front() != qx || chain->back() != qz) {
      return std::pair{w, "chain endpoints differ from Qx, Qz"};
    }
    // Probes between each pair of neighbours.
    std::vector<Event> probes;
    const auto& seq = chain->seq;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      for (int k = 0; k < 3; ++k) {
        const Rational u = rng.unit_fraction(32);
        probes.push_back(LineModel::point_on(
            q.as_line(), seq[i].t() + u * (seq[i + 1].t() - seq[i].t())));
      }
    }
    const auto v = check_i6_chain(m, q, src, *chain, probes);
    if (!v.passed()) return std::pair{w, v.reason};
    return std::nullopt;
  });
}

// ---- I7 -------------------------------------------------------------------

Verdict check_i7(const Model& m, const Budget& b) {
  if (const auto* fm = finite_of(m)) {
    std::size_t n = 0;
    for (const auto& q : fm->paths()) {
      for (const auto& src : fm->events()) {
        if (fm->on_path(q, src)) continue;
        const auto u = unreach_from(m, q, src);
        for (const auto& qx : fm->members(q)) {
          if (u.contains(qx)) continue;
          for (const auto& qy : u.members) {
            ++n;
            auto c = i7_chain(m, q, src, qx, qy);
            if (!c) {
              Witness w;
              w.path("Q", q).event("b", src).event("Qx", qx).event("Qy", qy);
              return Verdict::fail(w, "no reachable Qn with [Qx Qy Qn]", n);
            }
          }
        }
      }
    }
    if (n == 0) return Verdict::pass(Basis::vacuous, 0, "no instance meets the hypotheses");
    return Verdict::pass(Basis::exhaustive, n);
  }

  Rng rng(substream_seed(b.seed, "I7/members"));
  return over_instances(m, "unreach-config", b, "I7", [&](const Instance& in)
                                                          -> Failure {
    const Path& q = in.paths[0];
    const Event& src = in.events[0];
    const auto u = unreach_from(m, q, src);
    const auto mem = u.sample_members(rng, 3);
    if (mem.empty()) {
      return std::pair{Witness{}.path("Q", q).event("b", src),
                       "empty unreachable set"};
    }
    const Event& qy = mem.back();
    const auto& iv = *u.interval;
    const Rational step = rng.unit_fraction(8) * Rational(rng.uniform(1, 8));
    const Rational tx = rng.coin() ? iv.lo - step : iv.hi + step;
    const Event qx = LineModel::point_on(q.as_line(), tx);
    Witness w;
    w.path("Q", q).event("b", src).event("Qx", qx).event("Qy", qy);
    auto c = i7_chain(m, q, src, qx, qy);
    if (!c) return std::pair{w, c.verdict().reason};
    const Event& qn = c->back();
    if (c->front() != qx || c->seq[1] != qy || !check_total_order(m, c->seq) ||
        in_unreach(m, q, src, qn)) {
      return std::pair{w.event("Qn", qn), "constructed chain violates I7"};
    }
    return std::nullopt;
  });
}

// ---- S --------------------------------------------------------------------

Verdict check_s(const Model& m, const Budget& b) {
  const auto* fm = finite_of(m);
  if (!fm) {
    return Verdict::unknown(
        "symmetry is only decidable on finite models here");
  }
  if (fm->events().size() > b.max_symmetry_events) {
    return Verdict::unknown("symmetry search exceeds the event guard (" +
                            std::to_string(b.max_symmetry_events) + ")");
  }
  std::size_t n = 0;
  for (const auto& x : fm->events()) {
    const auto sp = fm->paths_containing(x);
    for (const auto& q : sp)
      for (const auto& r : sp)
        for (const auto& s : sp) {
          if (q == r || q == s || r <= s) continue;
          for (const auto& qa : fm->members(q)) {
            if (qa == x) continue;
            try {
              if (unreach_via(m, q, qa, r, x).members !=
                  unreach_via(m, q, qa, s, x).members) {
                continue;
              }
            } catch (const InputError&) {
              continue;
            }
            ++n;
            auto v = check_symmetry(m, q, r, s, x, qa, b);
            if (v.undecided()) return v;
            if (v.failed()) return Verdict::fail(v.witness, v.reason, n);
          }
        }
  }
  if (n == 0) return Verdict::pass(Basis::vacuous, 0, "no instance meets the hypotheses");
  return Verdict::pass(Basis::exhaustive, n, "Q fixed pointwise by theta");
}

// ---- I4 -------------------------------------------------------------------

Verdict check_i4(const Model& m, const Budget& b) {
  if (const auto* fm = finite_of(m)) {
    if (fm->events().empty()) {
      return Verdict::pass(Basis::vacuous, 0, "no events");
    }
    bool unknown = false;
    std::string why;
    for (const auto& x : fm->events()) {
      auto v = three_spray_at(m, x, b);
      if (v.passed()) return v;
      if (v.undecided()) {
        unknown = true;
        why = v.reason;
      }
    }
    if (unknown) return Verdict::unknown(why);
    Witness w;
    w.fact("events", std::to_string(fm->events().size()))
        .fact("paths", std::to_string(fm->paths().size()));
    return Verdict::fail(w, "no event carries a 3-SPRAY",
                         fm->events().size());
  }
  return three_spray_at(m, Event(0, 0), b);
}

}  // namespace

Verdict check_axiom(const Model& m, AxiomId id, const Budget& b) {
  const std::string cid = to_string(id);
  const auto* fm = finite_of(m);
  switch (id) {
    case AxiomId::I1:
      if (fm) {
        if (fm->events().empty()) {
          return Verdict::fail(Witness{}.fact("events", "0"),
                               "the event set is empty");
        }
        return Verdict::pass(Basis::exhaustive, 1);
      }
      return over_instances(m, "pair", b, cid, [&](const Instance& in)
                                                   -> Failure {
        if (m.is_event(in.events[0])) return std::nullopt;
        return std::pair{Witness{}.event("a", in.events[0]), "not an event"};
      });

    case AxiomId::I2:
      return over_instances(m, "pair", b, cid, [&](const Instance& in)
                                                   -> Failure {
        if (i2_holds(m, in.events[0], in.events[1])) return std::nullopt;
        return std::pair{events_witness(in.events, {"a", "b"}),
                         "no meeting paths through a and b"};
      });

    case AxiomId::I3:
      if (fm) {
        return over_instances(m, "pair", b, cid, [&](const Instance& in)
                                                     -> Failure {
          const auto ps = paths_with_both(*fm, in.events[0], in.events[1]);
          if (ps.size() <= 1) return std::nullopt;
          auto w = events_witness(in.events, {"a", "b"});
          w.path("P", ps[0]).path("P2", ps[1]);
          return std::pair{w, "two paths share a and b"};
        });
      }
      return over_instances(m, "triple-on-path", b, cid,
                            [&](const Instance& in) -> Failure {
        const auto p = m.path_through_raw(in.events[0], in.events[1]);
        if (p && *p == in.paths[0]) return std::nullopt;
        auto w = events_witness(in.events, {"a", "b"});
        w.path("P", in.paths[0]);
        if (p) w.path("P2", *p);
        return std::pair{w, "path through a and b is not unique"};
      });

    case AxiomId::InPathEvent:
      if (fm) {
        std::size_t n = 0;
        for (const auto& p : fm->paths()) {
          for (const auto& e : fm->members(p)) {
            ++n;
            if (!fm->is_event(e)) {
              return Verdict::fail(Witness{}.path("Q", p).event("a", e),
                                   "path member is not an event", n);
            }
          }
        }
        if (n == 0) return Verdict::pass(Basis::vacuous, 0, "no path members");
        return Verdict::pass(Basis::exhaustive, n);
      }
      return over_instances(m, "triple-on-path", b, cid,
                            [&](const Instance& in) -> Failure {
        for (const auto& e : in.events) {
          if (!m.is_path(in.paths[0]) || !m.is_event(e)) {
            return std::pair{Witness{}.path("Q", in.paths[0]).event("a", e),
                             "path member is not an event"};
          }
        }
        return std::nullopt;
      });

    case AxiomId::O1:
      return over_instances(m, "triple", b, cid, [&](const Instance& in)
                                                     -> Failure {
        const auto& e = in.events;
        if (!m.betw_raw(e[0], e[1], e[2]) || some_path_contains(m, e)) {
          return std::nullopt;
        }
        return std::pair{events_witness(e, {"a", "b", "c"}),
                         "[a b c] but no path contains all three"};
      });

    case AxiomId::O2:
      return over_instances(m, "triple", b, cid, [&](const Instance& in)
                                                     -> Failure {
        const auto& e = in.events;
        if (m.betw_raw(e[0], e[1], e[2]) == m.betw_raw(e[2], e[1], e[0])) {
          return std::nullopt;
        }
        return std::pair{events_witness(e, {"a", "b", "c"}),
                         "[a b c] and [c b a] disagree"};
      });

    case AxiomId::O3:
      return over_instances(m, "triple", b, cid, [&](const Instance& in)
                                                     -> Failure {
        const auto& e = in.events;
        const bool distinct = e[0] != e[1] && e[1] != e[2] && e[0] != e[2];
        if (!m.betw_raw(e[0], e[1], e[2]) || distinct) return std::nullopt;
        return std::pair{events_witness(e, {"a", "b", "c"}),
                         "[a b c] with repeated events"};
      });

    case AxiomId::O4:
      return over_instances(m, "quad", b, cid, [&](const Instance& in)
                                                   -> Failure {
        const auto& e = in.events;
        if (!m.betw_raw(e[0], e[1], e[2]) || !m.betw_raw(e[1], e[2], e[3]) ||
            m.betw_raw(e[0], e[1], e[3])) {
          return std::nullopt;
        }
        return std::pair{events_witness(e, {"a", "b", "c", "d"}),
                         "[a b c] and [b c d] but not [a b d]"};
      });

    case AxiomId::O5:
      return over_instances(m, "triple-on-path", b, cid,
                            [&](const Instance& in) -> Failure {
        const auto& e = in.events;
        if (o5_holds(m, e[0], e[1], e[2])) return std::nullopt;
        auto w = events_witness(e, {"a", "b", "c"});
        w.path("Q", in.paths[0]);
        return std::pair{w, "three events of a path in no order"};
      });

    case AxiomId::O6:
      if (fm) return check_o6_finite(*fm, b);
      return over_instances(m, "triangle-de", b, cid, [&](const Instance& in)
                                                          -> Failure {
        const auto& e = in.events;
        const Path q = *m.path_through_raw(e[0], e[1]);
        const Path r = *m.path_through_raw(e[0], e[2]);
        const Path s = *m.path_through_raw(e[1], e[2]);
        const Path t = *m.path_through_raw(e[3], e[4]);
        if (o6_meet(m, q, t, e[0], e[1])) return std::nullopt;
        return std::pair{o6_witness(q, r, s, t, e),
                         "T meets Q in no event f with [a f b]"};
      });

    case AxiomId::I5:
      return over_instances(m, "unreach-config", b, cid,
                            [&](const Instance& in) -> Failure {
        const auto u = unreach_from(m, in.paths[0], in.events[0]);
        if (u.size_class() >= 2) return std::nullopt;
        Witness w;
        w.path("Q", in.paths[0]).event("b", in.events[0]);
        w.fact("unreachable", u.str());
        w.fact("size", std::to_string(u.size_class()));
        return std::pair{w, "|Q(b,∅)| <= 1"};
      });

    case AxiomId::I6: return check_i6(m, b);
    case AxiomId::I7: return check_i7(m, b);
    case AxiomId::S: return check_s(m, b);

    case AxiomId::C:
      if (fm) {
        return Verdict::pass(Basis::vacuous, 0,
                             "a finite model has no infinite chains");
      }
      return Verdict::unknown("rational line is Dedekind-incomplete");

    case AxiomId::I4: return check_i4(m, b);
  }
  throw InputError("unknown axiom id");
}

// ---- spray and dependence -------------------------------------------------

Spray spray(const Model& m, const Event& x, std::size_t count,
            std::uint64_t seed) {
  require_event(m, x);
  if (const auto* fm = finite_of(m)) return Spray{x, fm->paths_containing(x)};
  const auto* lm = as_line_model(m);
  Rng rng(substream_seed(seed, "spray"));
  std::vector<Path> out;
  for (std::size_t tries = 0; out.size() < count && tries < 100 * count;
       ++tries) {
    Path p = Path::line(lm->sample_line_through(rng, x));
    if (std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(std::move(p));
    }
  }
  return Spray{x, std::move(out)};
}

namespace {

void require_spray(const Model& m, const Path& p, const Event& x) {
  if (!m.is_path(p)) throw InputError(p.id() + " is not a path");
  if (!m.on_path(p, x)) {
    throw InputError(p.id() + " does not pass through " + x.id());
  }
}

bool meets(const Model& m, const Path& a, const Path& b) {
  if (const auto* fm = finite_of(m)) {
    for (const auto& e : fm->members(a)) {
      if (m.on_path(b, e)) return true;
    }
    return false;
  }
  return a == b || line_intersection(a, b).has_value();
}

}  // namespace

Verdict dep3(const Model& m, const Path& q, const Path& r, const Path& s,
             const Event& x) {
  if (q == r || q == s || r == s) {
    throw InputError("dep3 needs three distinct paths");
  }
  for (const Path* p : {&q, &r, &s}) require_spray(m, *p, x);

  Witness w;
  w.path("Q", q).path("R", r).path("S", s).event("x", x);
  if (const auto* fm = finite_of(m)) {
    for (const auto& t : fm->paths()) {
      if (m.on_path(t, x)) continue;
      if (meets(m, t, q) && meets(m, t, r) && meets(m, t, s)) {
        return Verdict::pass_with(Basis::exhaustive, 1, w.path("T", t));
      }
    }
    return Verdict::fail(w, "no path outside SPRAY[x] meets all three");
  }

  const auto* lm = as_line_model(m);
  const std::array<Rational, 4> candidates{Rational(3, 4), Rational(-3, 4),
                                           Rational(4, 5), Rational(-4, 5)};
  for (const auto& v : candidates) {
    if (v == q.as_line().v || v == r.as_line().v || v == s.as_line().v ||
        !lm->admissible_velocity(v)) {
      continue;
    }
    // Through (t_x, x_x + 1), hence not through x.
    const Path t = Path::line(Line{v, x.x() + 1 - v * x.t()});
    w.path("T", t);
    const std::array<std::pair<const char*, const Path*>, 3> legs{
        {{"Q", &q}, {"R", &r}, {"S", &s}}};
    for (const auto& [role, p] : legs) {
      w.event(std::string("T^") + role, *line_intersection(t, *p));
    }
    return Verdict::pass_with(Basis::construction, 1, w);
  }
  return Verdict::unknown("no transversal velocity available");
}

namespace {

class DepSearch {
 public:
  DepSearch(const Model& m, const Event& x, const Budget& b,
            std::vector<Path> pool)
      : m_(m), x_(x), b_(b), pool_(std::move(pool)) {}

  Status run(const Path& t, std::vector<Path> s) {
    std::sort(s.begin(), s.end());
    const auto key = std::pair{t, s};
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Status st = s.size() == 2 ? base(t, s[0], s[1]) : step(t, s);
    memo_[key] = st;
    return st;
  }

  bool exhausted() const { return exhausted_; }
  std::size_t calls() const { return calls_; }

 private:
  Status base(const Path& t, const Path& a, const Path& b) {
    if (t == a || t == b || a == b) return Status::fail;
    if (calls_ >= b_.oracle_calls || b_.expired()) {
      exhausted_ = true;
      return Status::unknown;
    }
    ++calls_;
    return dep3(m_, t, a, b, x_).status;
  }

  Status step(const Path& t, const std::vector<Path>& s) {
    bool unknown = false;
    auto note = [&](Status st) {
      if (st == Status::unknown) unknown = true;
      return st == Status::pass;
    };
    // Candidates for the two intermediate paths: s first, then the pool.
    std::vector<Path> cand = s;
    for (const auto& p : pool_) {
      if (std::find(cand.begin(), cand.end(), p) == cand.end()) {
        cand.push_back(p);
      }
    }
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t j = i + 1; j < cand.size(); ++j) {
        const Path& s1 = cand[i];
        const Path& s2 = cand[j];
        if (s1 == t || s2 == t) continue;
        if (!note(run(t, {s1, s2}))) continue;
        bool ok1 = false;
        bool ok2 = false;
        for (std::size_t k = 0; k < s.size() && !(ok1 && ok2); ++k) {
          std::vector<Path> sub = s;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(k));
          if (!ok1) ok1 = note(run(s1, sub));
          if (!ok2) ok2 = note(run(s2, sub));
        }
        if (ok1 && ok2) return Status::pass;
        if (exhausted_) return Status::unknown;
      }
    }
    return unknown ? Status::unknown : Status::fail;
  }

  const Model& m_;
  Event x_;
  const Budget& b_;
  std::vector<Path> pool_;
  std::map<std::pair<Path, std::vector<Path>>, Status> memo_;
  std::size_t calls_ = 0;
  bool exhausted_ = false;
};

std::vector<Path> default_pool(const Model& m, const Event& x,
                               const std::vector<Path>& s,
                               const Budget& b) {
  std::vector<Path> pool = s;
  for (auto& p : spray(m, x, 6, b.seed).paths) {
    if (std::find(pool.begin(), pool.end(), p) == pool.end()) {
      pool.push_back(std::move(p));
    }
  }
  return pool;
}

Verdict dep_path_unchecked(const Model& m, const Path& t,
                           const std::vector<Path>& s, const Event& x,
                           const Budget& b, std::vector<Path> pool) {
  if (pool.empty()) pool = default_pool(m, x, s, b);
  DepSearch search(m, x, b, std::move(pool));
  const Status st = search.run(t, s);
  Witness w;
  w.path("T", t).event("x", x);
  std::string members;
  for (const auto& p : s) members += (members.empty() ? "" : " ") + p.id();
  w.fact("S", members);
  w.fact("oracle_calls", std::to_string(search.calls()));
  const Basis basis = m.finite() ? Basis::exhaustive : Basis::construction;
  switch (st) {
    case Status::pass: return Verdict::pass_with(basis, search.calls(), w);
    case Status::fail:
      return Verdict::fail(w, "T is not dependent on S", search.calls(),
                           basis);
    case Status::unknown: break;
  }
  return Verdict::unknown("dependence search budget exhausted",
                          search.calls());
}

std::vector<Event> common_events(const Model& m, const std::vector<Path>& ps) {
  if (ps.empty()) return {};
  if (const auto* fm = finite_of(m)) {
    std::vector<Event> out;
    for (const auto& e : fm->members(ps[0])) {
      if (std::all_of(ps.begin(), ps.end(),
                      [&](const Path& p) { return m.on_path(p, e); })) {
        out.push_back(e);
      }
    }
    return out;
  }
  if (ps.size() < 2) return {};
  const auto x = line_intersection(ps[0], ps[1]);
  if (!x) return {};
  for (const auto& p : ps) {
    if (!m.on_path(p, *x)) return {};
  }
  return {*x};
}

}  // namespace

Verdict dep_path(const Model& m, const Path& t, const std::vector<Path>& s,
                 const Event& x, const Budget& budget, std::vector<Path> pool) {
  if (s.size() < 2) throw InputError("dep_path needs at least two paths");
  require_spray(m, t, x);
  for (const auto& p : s) require_spray(m, p, x);
  return dep_path_unchecked(m, t, s, x, budget, std::move(pool));
}

Verdict indep_set(const Model& m, const std::vector<Path>& s,
                  const Budget& budget) {
  if (s.size() > budget.max_indep_paths) {
    return Verdict::unknown("independence search exceeds the path guard (" +
                            std::to_string(budget.max_indep_paths) + ")");
  }
  const std::size_t n = s.size();
  bool unknown = false;
  std::size_t checked = 0;
  // Subsets S' by increasing size, then the extra path P outside S'.
  for (std::size_t k = 2; k < n; ++k) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<Path> sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) sub.push_back(s[i]);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) continue;
        std::vector<Path> all = sub;
        all.push_back(s[i]);
        for (const auto& x : common_events(m, all)) {
          if (budget.expired()) return Verdict::unknown("timeout", checked);
          ++checked;
          auto v = dep_path_unchecked(m, s[i], sub, x, budget, {});
          if (v.undecided()) unknown = true;
          if (!v.passed()) continue;
          Witness w;
          w.path("P", s[i]).event("x", x);
          for (std::size_t j = 0; j < sub.size(); ++j) {
            w.path("S" + std::to_string(j + 1), sub[j]);
          }
          if (sub.size() == 2) {
            auto d = dep3(m, s[i], sub[0], sub[1], x);
            if (d.witness.has_path("T")) w.path("T", d.witness.get_path("T"));
          }
          return Verdict::fail(w, "dependent subset found", checked,
                               m.finite() ? Basis::exhaustive
                                          : Basis::construction);
        }
      }
    }
  }
  if (unknown) return Verdict::unknown("dependence search budget exhausted", checked);
  return Verdict::pass(Basis::exhaustive, checked);
}

Verdict three_spray_at(const Model& m, const Event& x, const Budget& budget) {
  require_event(m, x);
  const Spray sp = spray(m, x, 6, budget.seed);
  const auto& P = sp.paths;
  if (P.size() < 4) {
    Witness w;
    w.event("x", x).fact("spray_size", std::to_string(P.size()));
    return Verdict::fail(w, "SPRAY[x] has fewer than four paths", 1,
                         m.finite() ? Basis::exhaustive : Basis::evidence);
  }
  bool unknown = false;
  std::string why;
  std::size_t subsets = 0;
  std::optional<Verdict> first_dependent;
  const std::size_t n = P.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          if (budget.expired()) return Verdict::unknown("timeout", subsets);
          ++subsets;
          const std::vector<Path> four{P[a], P[b], P[c], P[d]};
          auto ind = indep_set(m, four, budget);
          if (ind.failed()) {
            if (!first_dependent) first_dependent = ind;
            continue;
          }
          if (ind.undecided()) {
            unknown = true;
            why = ind.reason;
            continue;
          }
          if (!m.finite()) {
            unknown = true;
            why = "independent 4-subset found; spanning is not decidable "
                  "from samples";
            continue;
          }
          bool spans = true;
          for (const auto& s : P) {
            auto dv = dep_path_unchecked(m, s, four, x, budget, P);
            if (dv.undecided()) {
              unknown = true;
              why = dv.reason;
            }
            if (!dv.passed()) {
              spans = false;
              break;
            }
          }
          if (spans) {
            Witness w;
            w.event("x", x);
            for (std::size_t i = 0; i < 4; ++i) {
              w.path("S" + std::to_string(i + 1), four[i]);
            }
            return Verdict::pass_with(Basis::exhaustive, subsets, w);
          }
        }
  if (unknown) return Verdict::unknown(why, subsets);
  if (!m.finite() && first_dependent) {
    // Every sampled 4-subset of the spray contains a dependent triple.
    Witness w = first_dependent->witness;
    w.fact("subsets_checked", std::to_string(subsets));
    return Verdict::fail(w, "every sampled 4-subset of SPRAY[x] is dependent",
                         subsets, Basis::evidence);
  }
  Witness w;
  w.event("x", x).fact("subsets_checked", std::to_string(subsets));
  if (first_dependent) w = first_dependent->witness;
  return Verdict::fail(w, "no 3-SPRAY at x", subsets, Basis::exhaustive);
}

// ---- symmetry -------------------------------------------------------------

Verdict check_symmetry(const Model& m, const Path& q, const Path& r,
                       const Path& s, const Event& x, const Event& qa,
                       const Budget& budget) {
  const auto* fm = finite_of(m);
  if (!fm) return Verdict::unknown("symmetry is checked on finite models only");
  if (q == r || q == s || r == s) throw InputError("Q, R, S must be distinct");
  for (const Path* p : {&q, &r, &s}) require_spray(m, *p, x);
  require_event(m, qa);
  if (!m.on_path(q, qa) || qa == x) {
    throw InputError("Qa must be an event of Q other than x");
  }
  const auto& E = fm->events();
  if (E.size() > budget.max_symmetry_events) {
    return Verdict::unknown("symmetry search exceeds the event guard (" +
                            std::to_string(budget.max_symmetry_events) + ")");
  }
  if (unreach_via(m, q, qa, r, x).members != unreach_via(m, q, qa, s, x).members) {
    return Verdict::unknown("hypothesis unmet: unreachable sets via R and S differ");
  }

  const std::size_t n = E.size();
  auto index = [&](const Event& e) {
    return static_cast<std::size_t>(
        std::lower_bound(E.begin(), E.end(), e) - E.begin());
  };
  // Distinct path member sets as bitmasks.
  std::set<std::uint32_t> family;
  auto mask_of = [&](const Path& p) {
    std::uint32_t bits = 0;
    for (const auto& e : fm->members(p)) bits |= 1u << index(e);
    return bits;
  };
  for (const auto& p : fm->paths()) family.insert(mask_of(p));
  const std::vector<std::uint32_t> fam(family.begin(), family.end());
  const std::uint32_t rmask = mask_of(r);
  const std::uint32_t smask = mask_of(s);
  const std::uint32_t qmask = mask_of(q);

  std::vector<int> theta(n, -1);
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (qmask & (1u << i)) {
      theta[i] = static_cast<int>(i);
    } else {
      free.push_back(i);
    }
  }
  std::uint32_t assigned = qmask;
  auto image = [&](std::uint32_t set) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (set & (1u << i)) out |= 1u << theta[i];
    }
    return out;
  };
  auto consistent = [&] {
    for (const auto f : fam) {
      if ((f & assigned) == f && !family.contains(image(f))) return false;
    }
    if ((rmask & assigned) == rmask && image(rmask) != smask) return false;
    return true;
  };
  auto bijective = [&] {
    std::set<std::uint32_t> images;
    for (const auto f : fam) images.insert(image(f));
    return images.size() == fam.size();
  };

  std::size_t visited = 0;
  std::function<bool(std::size_t)> search = [&](std::size_t k) {
    if (budget.expired()) return false;
    if (k == free.size()) return bijective();
    const std::size_t i = free[k];
    for (std::size_t v = 0; v < n; ++v) {
      ++visited;
      theta[i] = static_cast<int>(v);
      assigned |= 1u << i;
      if (consistent() && search(k + 1)) return true;
      assigned &= ~(1u << i);
    }
    theta[i] = -1;
    return false;
  };

  Witness w;
  w.path("Q", q).path("R", r).path("S", s).event("x", x).event("Qa", qa);
  w.fact("invariance", "theta fixes Q pointwise");
  if (consistent() && search(0)) {
    std::string map;
    for (std::size_t i = 0; i < n; ++i) {
      map += (map.empty() ? "" : ",") + E[i].id() + "->" +
             E[static_cast<std::size_t>(theta[i])].id();
    }
    w.fact("theta", map);
    return Verdict::pass_with(Basis::exhaustive, visited, w);
  }
  if (budget.expired()) return Verdict::unknown("timeout", visited);
  return Verdict::fail(w, "no map fixing Q induces a path bijection taking R to S",
                       visited);
}

bool is_bound(const Model& m, const Chain& prefix, const Event& qb) {
  if (prefix.size() < 2) throw InputError("bound needs a prefix of length 2");
  std::vector<Event> all = prefix.seq;
  all.push_back(qb);
  for (const auto& e : all) require_event(m, e);
  if (!common_path(m, all)) throw InputError("prefix and bound not co-path");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    for (std::size_t j = i + 1; j < prefix.size(); ++j) {
      if (!betw(m, prefix.seq[i], prefix.seq[j], qb)) return false;
    }
  }
  return true;
}

// ---- witness replay -------------------------------------------------------

bool replay_axiom_witness(const Model& m, AxiomId id, const Witness& w) {
  auto ev = [&](const char* r) { return w.get_event(r); };
  const auto* fm = finite_of(m);
  switch (id) {
    case AxiomId::I1: return fm && fm->events().empty();
    case AxiomId::I2: return !i2_holds(m, ev("a"), ev("b"));
    case AxiomId::I3: {
      const auto& p1 = w.get_path("P");
      if (!w.has_path("P2")) return false;
      const auto& p2 = w.get_path("P2");
      return p1 != p2 && m.on_path(p1, ev("a")) && m.on_path(p1, ev("b")) &&
             m.on_path(p2, ev("a")) && m.on_path(p2, ev("b"));
    }
    case AxiomId::InPathEvent:
      return m.on_path(w.get_path("Q"), ev("a")) && !m.is_event(ev("a"));
    case AxiomId::O1:
      return m.betw_raw(ev("a"), ev("b"), ev("c")) &&
             !some_path_contains(m, {ev("a"), ev("b"), ev("c")});
    case AxiomId::O2:
      return m.betw_raw(ev("a"), ev("b"), ev("c")) !=
             m.betw_raw(ev("c"), ev("b"), ev("a"));
    case AxiomId::O3: {
      const Triple t{ev("a"), ev("b"), ev("c")};
      return m.betw_raw(t.a, t.b, t.c) && t.has_repeat();
    }
    case AxiomId::O4:
      return m.betw_raw(ev("a"), ev("b"), ev("c")) &&
             m.betw_raw(ev("b"), ev("c"), ev("d")) &&
             !m.betw_raw(ev("a"), ev("b"), ev("d"));
    case AxiomId::O5: {
      const auto& q = w.get_path("Q");
      const Event a = ev("a"), b = ev("b"), c = ev("c");
      return m.on_path(q, a) && m.on_path(q, b) && m.on_path(q, c) &&
             a != b && b != c && a != c && !o5_holds(m, a, b, c);
    }
    case AxiomId::O6: {
      const auto& q = w.get_path("Q");
      const auto& r = w.get_path("R");
      const auto& s = w.get_path("S");
      const auto& t = w.get_path("T");
      const Event a = ev("a"), b = ev("b"), c = ev("c"), d = ev("d"),
                  e = ev("e");
      const bool hyp = q != r && q != s && r != s && m.on_path(q, a) &&
                       m.on_path(r, a) && m.on_path(q, b) && m.on_path(s, b) &&
                       m.on_path(r, c) && m.on_path(s, c) && m.on_path(s, d) &&
                       m.betw_raw(b, c, d) && m.on_path(r, e) &&
                       m.betw_raw(c, e, a) && m.on_path(t, d) &&
                       m.on_path(t, e);
      return hyp && !o6_meet(m, q, t, a, b);
    }
    case AxiomId::I5:
      return unreach_from(m, w.get_path("Q"), ev("b")).size_class() < 2;
    case AxiomId::I6: {
      if (!w.has_event("Qx") || !w.has_event("Qz")) {
        return unreach_from(m, w.get_path("Q"), ev("b")).size_class() < 2;
      }
      if (fm) {
        return i6_finite(*fm, w.get_path("Q"), ev("b"), ev("Qx"), ev("Qz"),
                         Budget{})
            .failed();
      }
      return !i6_chain(m, w.get_path("Q"), ev("b"), ev("Qx"), ev("Qz")).ok();
    }
    case AxiomId::I7: {
      const auto& q = w.get_path("Q");
      auto c = i7_chain(m, q, ev("b"), ev("Qx"), ev("Qy"));
      return !c.ok() || in_unreach(m, q, ev("b"), c->back());
    }
    case AxiomId::S:
      return check_symmetry(m, w.get_path("Q"), w.get_path("R"),
                            w.get_path("S"), ev("x"), ev("Qa"), Budget{})
          .failed();
    case AxiomId::C: return false;
    case AxiomId::I4: {
      if (fm) return check_i4(m, Budget{}).failed();
      if (w.has_path("T")) {
        const auto& t = w.get_path("T");
        const Event x = ev("x");
        return !m.on_path(t, x) && meets(m, t, w.get_path("P")) &&
               meets(m, t, w.get_path("S1")) && meets(m, t, w.get_path("S2")) &&
               m.on_path(w.get_path("P"), x) && m.on_path(w.get_path("S1"), x) &&
               m.on_path(w.get_path("S2"), x);
      }
      return three_spray_at(m, ev("x"), Budget{}).failed();
    }
  }
  return false;
}

}  // namespace schutz
