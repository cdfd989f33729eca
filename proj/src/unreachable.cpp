#include "schutz/unreachable.hpp"

#include <algorithm>

#include "schutz/errors.hpp"

namespace schutz {

namespace {

const LineModel* line_model(const Model& m) { return as_line_model(m); }

void require_on(const Model& m, const Path& q, const Event& e,
                const char* role) {
  require_event(m, e);
  if (!m.on_path(q, e)) {
    throw InputError(std::string(role) + " " + e.id() + " is not on " +
                     q.id());
  }
}

void require_off(const Model& m, const Path& q, const Event& e,
                 const char* role) {
  require_event(m, e);
  if (m.on_path(q, e)) {
    throw InputError(std::string(role) + " " + e.id() + " lies on " + q.id());
  }
}

void require_path(const Model& m, const Path& q) {
  if (!m.is_path(q)) throw InputError(q.id() + " is not a path of the model");
}

std::vector<Event> path_members(const Model& m, const Path& q) {
  return as_finite_model(m)->members(q);
}

std::string list_str(const std::vector<Event>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].id();
  return s + "}";
}

// Closed-or-open bounds on a parameter, narrowed by linear constraints.
struct Bounds {
  std::optional<Rational> lo, hi;
  bool lo_closed = false, hi_closed = false;

  void at_least(const Rational& v, bool closed) {
    if (!lo || v > *lo || (v == *lo && !closed)) {
      lo = v;
      lo_closed = closed;
    }
  }
  void at_most(const Rational& v, bool closed) {
    if (!hi || v < *hi || (v == *hi && !closed)) {
      hi = v;
      hi_closed = closed;
    }
  }
  // alpha*t + beta <= 0
  bool constrain(const Rational& alpha, const Rational& beta) {
    if (alpha.sign() == 0) return beta.sign() <= 0;
    const Rational root = -beta / alpha;
    if (alpha.sign() > 0) {
      at_most(root, true);
    } else {
      at_least(root, true);
    }
    return true;
  }
  ParamInterval interval() const {
    if (!lo || !hi || *hi < *lo ||
        (*hi == *lo && !(lo_closed && hi_closed))) {
      return ParamInterval::none();
    }
    return ParamInterval{*lo, *hi, lo_closed, hi_closed, false};
  }
};

}  // namespace

// ---- sets -----------------------------------------------------------------

bool UnreachSet::contains(const Event& e) const {
  if (interval) {
    return e.has_coords() && path.as_line().contains(e.coords()) &&
           interval->contains(e.t());
  }
  return std::binary_search(members.begin(), members.end(), e);
}

bool UnreachSet::is_empty() const {
  return interval ? interval->empty : members.empty();
}

int UnreachSet::size_class() const {
  if (interval) {
    if (interval->empty) return 0;
    return interval->single_point() ? 1 : 2;
  }
  return static_cast<int>(std::min<std::size_t>(members.size(), 2));
}

std::vector<Event> UnreachSet::sample_members(Rng& rng, std::size_t n) const {
  if (!interval) {
    std::vector<Event> v = members;
    if (v.size() > n) v.resize(n);
    return v;
  }
  std::vector<Event> out;
  const ParamInterval& iv = *interval;
  if (iv.empty) return out;
  const Line& l = path.as_line();
  auto add = [&](const Rational& t) {
    Event e = LineModel::point_on(l, t);
    if (out.size() < n && std::find(out.begin(), out.end(), e) == out.end()) {
      out.push_back(std::move(e));
    }
  };
  if (iv.lo_closed) add(iv.lo);
  if (iv.hi_closed) add(iv.hi);
  if (iv.single_point()) return out;
  for (std::size_t tries = 0; out.size() < n && tries < 4 * n; ++tries) {
    add(iv.lo + (iv.hi - iv.lo) * rng.unit_fraction(64));
  }
  return out;
}

std::string UnreachSet::str() const {
  return interval ? "t in " + interval->str() : list_str(members);
}

bool UnreachViaSet::contains(const Event& e) const {
  if (interval) {
    return e.has_coords() && path.as_line().contains(e.coords()) &&
           interval->contains(e.t());
  }
  return std::binary_search(members.begin(), members.end(), e);
}

bool UnreachViaSet::is_empty() const {
  return interval ? interval->empty : members.empty();
}

std::string UnreachViaSet::str() const {
  return interval ? "t in " + interval->str() : list_str(members);
}

// ---- membership -----------------------------------------------------------

bool in_unreach(const Model& m, const Path& q, const Event& b,
                const Event& x) {
  require_path(m, q);
  require_off(m, q, b, "source");
  require_event(m, x);
  if (!m.on_path(q, x)) return false;
  return !m.path_through_raw(b, x).has_value();
}

UnreachSet unreach_from(const Model& m, const Path& q, const Event& b) {
  require_path(m, q);
  require_off(m, q, b, "source");
  UnreachSet s{q, b, {}, std::nullopt};
  if (const auto* lm = line_model(m)) {
    s.interval = lm->unreach_interval(q.as_line(), b.coords());
    return s;
  }
  for (const auto& x : path_members(m, q)) {
    if (!m.path_through_raw(b, x)) s.members.push_back(x);
  }
  return s;
}

UnreachViaSet unreach_via(const Model& m, const Path& q, const Event& qa,
                          const Path& r, const Event& x) {
  require_path(m, q);
  require_path(m, r);
  if (q == r) throw InputError("unreach_via needs distinct paths");
  require_on(m, q, x, "meeting event");
  require_on(m, r, x, "meeting event");
  require_on(m, q, qa, "anchor");
  if (qa == x) throw InputError("anchor must differ from the meeting event");

  UnreachViaSet s{q, qa, r, x, {}, std::nullopt};
  if (const auto* lm = line_model(m)) {
    // J(p) = R(p,∅) has endpoints linear in the parameter of p on each side
    // of x, so two probes on the anchor's side determine them there.
    const Line& lq = q.as_line();
    const Line& lr = r.as_line();
    auto j = [&](const Rational& t) {
      return lm->unreach_interval(lr, LineModel::point_on(lq, t).coords());
    };
    const ParamInterval ja = j(qa.t());
    const Rational t1 = (x.t() + qa.t()) / Rational(2);
    const Rational t2 = (t1 + qa.t()) / Rational(2);
    const ParamInterval j1 = j(t1);
    const ParamInterval j2 = j(t2);
    if (ja.empty || j1.empty || j2.empty) {
      s.interval = ParamInterval::none();
      return s;
    }
    const Rational lo_slope = (j2.lo - j1.lo) / (t2 - t1);
    const Rational hi_slope = (j2.hi - j1.hi) / (t2 - t1);
    Bounds bd;
    bd.at_least(min(x.t(), qa.t()), false);
    bd.at_most(max(x.t(), qa.t()), false);
    // lo(t) <= ja.hi and ja.lo <= hi(t)
    const bool ok1 =
        bd.constrain(lo_slope, j1.lo - lo_slope * t1 - ja.hi);
    const bool ok2 =
        bd.constrain(-hi_slope, ja.lo - (j1.hi - hi_slope * t1));
    s.interval = (ok1 && ok2) ? bd.interval() : ParamInterval::none();
    return s;
  }

  const auto r_members = path_members(m, r);
  for (const auto& qy : path_members(m, q)) {
    if (!m.betw_raw(x, qy, qa)) continue;
    const bool shared = std::any_of(
        r_members.begin(), r_members.end(), [&](const Event& rw) {
          return !m.on_path(q, rw) &&
                 !m.path_through_raw(rw, qa) &&
                 !m.path_through_raw(rw, qy);
        });
    if (shared) s.members.push_back(qy);
  }
  return s;
}

bool joinable(const Model& m, const Path& q, const Event& b) {
  require_path(m, q);
  require_off(m, q, b, "event");
  // Unreachable sets on lines are bounded, so lines always qualify.
  if (line_model(m)) return true;
  const auto members = path_members(m, q);
  return std::any_of(members.begin(), members.end(), [&](const Event& x) {
    return m.path_through_raw(b, x).has_value();
  });
}

// ---- Theorems 4 and 13 ----------------------------------------------------

Result<Event> thm4_bound(const Model& m, const Path& q, const Event& b,
                         const Event& qx, const Event& qy) {
  require_on(m, q, qx, "Qx");
  require_on(m, q, qy, "Qy");
  if (in_unreach(m, q, b, qx)) throw InputError("Qx must be reachable");
  if (!in_unreach(m, q, b, qy)) throw InputError("Qy must be unreachable");

  if (const auto* lm = line_model(m)) {
    const auto iv = lm->unreach_interval(q.as_line(), b.coords());
    const Rational t = qx.t() < iv.lo ? iv.hi + 1 : iv.lo - 1;
    return LineModel::point_on(q.as_line(), t);
  }
  for (const auto& qz : path_members(m, q)) {
    if (m.betw_raw(qx, qy, qz) && !in_unreach(m, q, b, qz)) return qz;
  }
  return Verdict::fail(
      Witness{}.path("Q", q).event("b", b).event("Qx", qx).event("Qy", qy),
      "no reachable Qz with [Qx Qy Qz]");
}

Verdict thm13_check(const Model& m, const Path& q, const Event& b,
                    const Event& qx, const Event& qy, const Event& qz) {
  require_on(m, q, qy, "Qy");
  if (!in_unreach(m, q, b, qx) || !in_unreach(m, q, b, qz)) {
    throw InputError("Qx and Qz must be unreachable");
  }
  if (qx == qz || !betw(m, qx, qy, qz)) {
    throw InputError("theorem 13 needs distinct Qx, Qz and [Qx Qy Qz]");
  }
  if (in_unreach(m, q, b, qy)) return Verdict::pass(Basis::exhaustive, 1);
  return Verdict::fail(Witness{}
                           .path("Q", q)
                           .event("b", b)
                           .event("Qx", qx)
                           .event("Qy", qy)
                           .event("Qz", qz),
                       "reachable Qy between unreachable Qx and Qz");
}

// ---- I6 / I7 chains -------------------------------------------------------

Verdict check_i6_chain(const Model& m, const Path& q, const Event& b,
                       const Chain& c, const std::vector<Event>& probes) {
  const auto& seq = c.seq;
  Witness w;
  w.path("Q", q).event("b", b);
  if (seq.size() < 2 || !index_injective_check(seq)) {
    return Verdict::fail(w, "not a chain");
  }
  if (seq.size() >= 3 && !check_total_order(m, seq)) {
    return Verdict::fail(w.fact("chain", c.str()), "sequence is not ordered");
  }
  if (seq.size() == 2 && !path_connected(m, seq[0], seq[1])) {
    return Verdict::fail(w.fact("chain", c.str()), "pair not on a path");
  }
  for (const auto& e : seq) {
    if (!in_unreach(m, q, b, e)) {
      return Verdict::fail(w.event("member", e), "chain member reachable");
    }
  }
  std::size_t checked = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    for (const auto& p : probes) {
      if (!m.betw_raw(seq[i], p, seq[i + 1])) continue;
      ++checked;
      if (!in_unreach(m, q, b, p)) {
        return Verdict::fail(w.event("left", seq[i])
                                 .event("right", seq[i + 1])
                                 .event("Qy", p),
                             "reachable event between chain neighbours");
      }
    }
  }
  return Verdict::pass(Basis::exhaustive, checked);
}

Result<Chain> i6_chain(const Model& m, const Path& q, const Event& b,
                       const Event& qx, const Event& qz,
                       std::size_t interior) {
  require_on(m, q, qx, "Qx");
  require_on(m, q, qz, "Qz");
  if (qx == qz) throw InputError("Qx and Qz must differ");
  if (!in_unreach(m, q, b, qx) || !in_unreach(m, q, b, qz)) {
    throw InputError("Qx and Qz must be unreachable");
  }
  if (line_model(m)) {
    std::vector<Event> seq{qx};
    const Rational step =
        (qz.t() - qx.t()) / Rational(static_cast<std::int64_t>(interior) + 1);
    for (std::size_t i = 1; i <= interior; ++i) {
      seq.push_back(LineModel::point_on(
          q.as_line(), qx.t() + step * Rational(static_cast<std::int64_t>(i))));
    }
    seq.push_back(qz);
    return Chain{std::move(seq), q};
  }

  Witness w;
  w.path("Q", q).event("b", b).event("Qx", qx).event("Qz", qz);
  std::vector<Event> xs{qx, qz};
  for (const auto& y : path_members(m, q)) {
    if (m.betw_raw(qx, y, qz) && in_unreach(m, q, b, y)) xs.push_back(y);
  }
  Chain c;
  try {
    c = chain_from_set(m, xs);
  } catch (const InconsistencyError& e) {
    return Verdict::fail(w, e.what());
  }
  if (c.front() != qx) c = reverse_chain(c);
  if (c.front() != qx || c.back() != qz) {
    return Verdict::fail(w, "Qx and Qz are not the chain ends");
  }
  const auto v = check_i6_chain(m, q, b, c, path_members(m, q));
  if (!v.passed()) return v;
  return c;
}

Result<Chain> i7_chain(const Model& m, const Path& q, const Event& b,
                       const Event& qx, const Event& qy) {
  auto qn = thm4_bound(m, q, b, qx, qy);
  if (!qn) return qn.verdict();
  return Chain{{qx, qy, *qn}, q};
}

// ---- Theorem 14 -----------------------------------------------------------

namespace {

void require_thm14_sources(const Model& m, const Path& q, const Event& a,
                           const Event& b) {
  require_path(m, q);
  for (const Event* e : {&a, &b}) {
    if (!joinable(m, q, *e)) {
      throw InputError("event " + e->id() + " is joined to no event of " +
                       q.id());
    }
  }
}

bool reachable_from_both(const Model& m, const Event& a, const Event& b,
                         const Event& e) {
  return e != a && e != b && m.path_through_raw(a, e) &&
         m.path_through_raw(b, e);
}

Thm14Event with_paths(const Model& m, const Event& a, const Event& b,
                      const Event& e) {
  return Thm14Event{e, *m.path_through_raw(a, e), *m.path_through_raw(b, e)};
}

}  // namespace

Result<std::pair<Event, Event>> thm14_bounds(const Model& m, const Path& q,
                                             const Event& a, const Event& b) {
  require_thm14_sources(m, q, a, b);
  const UnreachSet ua = unreach_from(m, q, a);
  const UnreachSet ub = unreach_from(m, q, b);

  if (line_model(m)) {
    std::optional<Rational> lo, hi;
    for (const auto* s : {&ua, &ub}) {
      if (s->interval->empty) continue;
      lo = lo ? min(*lo, s->interval->lo) : s->interval->lo;
      hi = hi ? max(*hi, s->interval->hi) : s->interval->hi;
    }
    if (!lo) lo = hi = Rational(0);
    const Line& l = q.as_line();
    return std::pair{LineModel::point_on(l, *lo - 1),
                     LineModel::point_on(l, *hi + 1)};
  }

  const auto members = path_members(m, q);
  for (const auto& y : members) {
    for (const auto& z : members) {
      if (y == z) continue;
      if (betw_set(m, y, ua.members, z) && betw_set(m, y, ub.members, z)) {
        return std::pair{y, z};
      }
    }
  }
  return Verdict::fail(Witness{}.path("Q", q).event("a", a).event("b", b),
                       "no pair of events of Q bounds both unreachable sets");
}

Result<Thm14Event> thm14_event(const Model& m, const Path& q, const Event& a,
                               const Event& b, const Event& c,
                               const Event& d) {
  require_on(m, q, c, "c");
  require_on(m, q, d, "d");
  if (c == d) throw InputError("c and d must differ");
  require_thm14_sources(m, q, a, b);

  const auto bounds = thm14_bounds(m, q, a, b);
  if (bounds) {
    const auto& [y, z] = *bounds;
    for (const Event* e : {&y, &z}) {
      if (m.betw_raw(c, d, *e) && reachable_from_both(m, a, b, *e)) {
        return with_paths(m, a, b, *e);
      }
    }
  }

  if (line_model(m)) {
    // Step away from c in whole parameter units; past both intervals every
    // event qualifies.
    const Line& l = q.as_line();
    const int s = (d.t() - c.t()).sign();
    const Rational far = s > 0 ? bounds->second.t() : bounds->first.t();
    const Rational gap = (far - d.t()).abs();
    const mpz_class whole = gap.raw().get_num() / gap.raw().get_den();
    for (std::int64_t k = 1; k <= whole.get_si() + 2; ++k) {
      Event e = LineModel::point_on(l, d.t() + Rational(s * k));
      if (reachable_from_both(m, a, b, e)) return with_paths(m, a, b, e);
    }
    throw InconsistencyError("no reachable event beyond the bounds");
  }

  for (const auto& e : path_members(m, q)) {
    if (m.betw_raw(c, d, e) && reachable_from_both(m, a, b, e)) {
      return with_paths(m, a, b, e);
    }
  }
  return Verdict::fail(Witness{}
                           .path("Q", q)
                           .event("a", a)
                           .event("b", b)
                           .event("c", c)
                           .event("d", d),
                       "no event e with [c d e] joined to both a and b");
}

Result<Thm14Event> thm14_beyond(const Model& m, const Path& q, const Path& r,
                                const Event& x, const Event& a,
                                const Event& b) {
  require_path(m, q);
  require_path(m, r);
  if (q == r) throw InputError("Q and R must differ");
  require_on(m, q, x, "x");
  require_on(m, r, x, "x");
  require_on(m, r, a, "a");
  if (a == x) throw InputError("a must differ from x");
  require_off(m, q, a, "a");
  require_thm14_sources(m, q, a, b);

  const UnreachSet ua = unreach_from(m, q, a);
  if (ua.is_empty()) {
    return Verdict::fail(
        Witness{}.path("Q", q).event("a", a),
        "Q(a,∅) is empty, nothing to bound");
  }
  Event d;
  if (ua.interval) {
    const auto& iv = *ua.interval;
    d = LineModel::point_on(q.as_line(), x.t() < iv.lo ? iv.lo : iv.hi);
  } else {
    d = ua.members.front();
  }
  return thm14_event(m, q, a, b, x, d);
}

}  // namespace schutz
