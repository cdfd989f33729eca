#include "schutz/regions.hpp"

#include <algorithm>
#include <set>

#include "schutz/errors.hpp"
#include "schutz/models.hpp"
#include "schutz/sampler.hpp"

namespace schutz {

namespace {

void require_connected(const Model& m, const Event& a, const Event& b) {
  require_event(m, a);
  require_event(m, b);
  if (a == b || !path_connected(m, a, b)) {
    throw InputError("no path through " + a.id() + " and " + b.id());
  }
}

}  // namespace

bool in_segment(const Model& m, const Event& a, const Event& b,
                const Event& x) {
  require_connected(m, a, b);
  return betw(m, a, x, b);
}

bool in_interval(const Model& m, const Event& a, const Event& b,
                 const Event& x) {
  require_connected(m, a, b);
  require_event(m, x);
  return x == a || x == b || betw(m, a, x, b);
}

bool in_prolongation(const Model& m, const Event& a, const Event& b,
                     const Event& x) {
  require_connected(m, a, b);
  return betw(m, a, b, x);
}

Segmentation segmentation(const Model& m, const Path& q, const Chain& chain) {
  const auto& seq = chain.seq;
  if (seq.size() < 2) throw InputError("segmentation needs at least 2 events");
  if (!index_injective_check(seq)) throw InputError("chain repeats an event");
  for (const auto& e : seq) {
    require_event(m, e);
    if (!m.on_path(q, e)) throw InputError(e.id() + " is not on " + q.id());
  }
  if (seq.size() >= 3 && !check_total_order(m, seq)) {
    throw InputError("sequence is not a chain");
  }
  Segmentation s{{}, {seq[1], seq[0]}, {seq[seq.size() - 2], seq.back()},
                 Chain{seq, q}, q};
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    s.segments.push_back({seq[i], seq[i + 1]});
  }
  return s;
}

std::vector<std::string> regions_of(const Model& m, const Segmentation& seg,
                                    const Event& x) {
  std::vector<std::string> out;
  if (std::find(seg.chain.seq.begin(), seg.chain.seq.end(), x) !=
      seg.chain.seq.end()) {
    out.emplace_back("Q");
  }
  for (std::size_t i = 0; i < seg.segments.size(); ++i) {
    if (m.betw_raw(seg.segments[i].a, x, seg.segments[i].b)) {
      out.push_back("S" + std::to_string(i + 1));
    }
  }
  if (m.betw_raw(seg.p1.a, seg.p1.b, x)) out.emplace_back("P1");
  if (m.betw_raw(seg.p2.a, seg.p2.b, x)) out.emplace_back("P2");
  return out;
}

Verdict verify_segmentation(const Model& m, const Segmentation& seg,
                            const std::vector<Event>& probes) {
  std::size_t n = 0;
  for (const auto& x : probes) {
    if (!m.on_path(seg.path, x)) continue;
    ++n;
    const auto r = regions_of(m, seg, x);
    if (r.size() != 1) {
      std::string names;
      for (const auto& s : r) names += (names.empty() ? "" : ",") + s;
      Witness w;
      w.event("x", x).path("Q", seg.path).fact("chain", seg.chain.str());
      w.fact("regions", names.empty() ? "none" : names);
      return Verdict::fail(w, r.empty() ? "event in no region"
                                        : "event in several regions",
                           n, m.finite() ? Basis::exhaustive : Basis::sampled);
    }
  }
  return Verdict::pass(m.finite() ? Basis::exhaustive : Basis::sampled, n);
}

Verdict verify_segmentation(const Model& m, const Segmentation& seg,
                            const Budget& budget) {
  if (const auto* fm = as_finite_model(m)) {
    return verify_segmentation(m, seg, fm->members(seg.path));
  }
  const auto* lm = as_line_model(m);
  const Line& l = seg.path.as_line();
  const auto& seq = seg.chain.seq;
  std::vector<Event> probes = seq;
  Rational lo = seq[0].t();
  Rational hi = lo;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    lo = min(lo, seq[i].t());
    hi = max(hi, seq[i].t());
    if (i + 1 < seq.size()) {
      probes.push_back(LineModel::point_on(
          l, (seq[i].t() + seq[i + 1].t()) / Rational(2)));
    }
  }
  const Rational span = hi - lo + 1;
  Rng rng(substream_seed(budget.seed, "segmentation"));
  while (probes.size() < budget.samples + seq.size()) {
    // Mostly inside the chain's span, some beyond either end.
    Rational t;
    if (rng.uniform(0, 3) == 0) {
      t = lm->sample_coord(rng);
    } else {
      t = lo - span + Rational(3) * span * rng.unit_fraction(256);
    }
    probes.push_back(LineModel::point_on(l, t));
  }
  return verify_segmentation(m, seg, probes);
}

SegmentCount segment_count(const Model& m, const Segmentation& seg) {
  const std::size_t expected = seg.chain.size() - 1;
  std::size_t count = 0;
  std::size_t empty = 0;
  if (const auto* fm = as_finite_model(m)) {
    const auto members = fm->members(seg.path);
    std::set<std::vector<Event>> sets;
    for (const auto& s : seg.segments) {
      std::vector<Event> in;
      for (const auto& x : members) {
        if (m.betw_raw(s.a, x, s.b)) in.push_back(x);
      }
      if (in.empty()) ++empty;
      sets.insert(in);
    }
    count = sets.size();
  } else {
    // On a dense line a nonempty segment is determined by its endpoints.
    std::set<std::pair<Event, Event>> ends;
    for (const auto& s : seg.segments) {
      const Event mid = LineModel::point_on(
          seg.path.as_line(), (s.a.t() + s.b.t()) / Rational(2));
      if (!m.betw_raw(s.a, mid, s.b)) ++empty;
      ends.insert(std::minmax(s.a, s.b));
    }
    count = ends.size();
  }
  Witness w;
  w.path("Q", seg.path).fact("chain", seg.chain.str());
  w.fact("count", std::to_string(count));
  w.fact("expected", std::to_string(expected));
  const Basis basis = m.finite() ? Basis::exhaustive : Basis::construction;
  if (count == expected && empty == 0) {
    return {count, Verdict::pass_with(basis, seg.segments.size(), w)};
  }
  if (!m.dense()) {
    w.fact("empty_segments", std::to_string(empty));
    return {count,
            Verdict::pass_with(basis, seg.segments.size(), w,
                               "degenerate: " + std::to_string(empty) +
                                   " empty segment(s) coincide; count is "
                                   "density-conditional")};
  }
  return {count, Verdict::fail(w, "dense model with segment count != N-1",
                               seg.segments.size(), basis)};
}

namespace {

void require_thm3_hypotheses(const Model& m, const Event& a, const Event& b,
                             const Event& c, const Event& d, const Event& e) {
  for (const Event* x : {&a, &b, &c, &d, &e}) require_event(m, *x);
  if (!is_kinematic_triangle(m, a, b, c)) {
    throw InputError("a, b, c do not form a kinematic triangle");
  }
  if (d == e || !path_connected(m, d, e)) {
    throw InputError("no path through d and e");
  }
  if (!betw(m, b, c, d) || !betw(m, c, e, a)) {
    throw InputError("hypotheses [b c d] and [c e a] not met");
  }
}

Result<Event> side_meet(const Model& m, const Event& a, const Event& b,
                        const Event& d, const Event& e, bool need_def) {
  const Path ab = *path_through(m, a, b);
  const Path de = *path_through(m, d, e);
  auto good = [&](const Event& f) {
    return m.on_path(ab, f) && m.on_path(de, f) && betw(m, a, f, b) &&
           (!need_def || betw(m, d, e, f));
  };
  if (const auto* fm = as_finite_model(m)) {
    for (const auto& f : fm->members(de)) {
      if (good(f)) return f;
    }
  } else if (ab != de) {
    if (auto f = line_intersection(ab, de); f && good(*f)) return *f;
  }
  Witness w;
  w.event("a", a).event("b", b).event("d", d).event("e", e);
  w.path("ab", ab).path("de", de);
  return Verdict::fail(w, need_def ? "no f on de with [a f b] and [d e f]"
                                   : "no f on de with [a f b]");
}

}  // namespace

Result<Event> thm3_witness(const Model& m, const Event& a, const Event& b,
                           const Event& c, const Event& d, const Event& e) {
  require_thm3_hypotheses(m, a, b, c, d, e);
  return side_meet(m, a, b, d, e, false);
}

Result<Event> thm7_witness(const Model& m, const Event& a, const Event& b,
                           const Event& c, const Event& d, const Event& e) {
  require_thm3_hypotheses(m, a, b, c, d, e);
  return side_meet(m, a, b, d, e, true);
}

Verdict thm8_check(const Model& m, const Event& a, const Event& b,
                   const Event& c, const Event& a1, const Event& b1,
                   const Event& c1) {
  for (const Event* x : {&a, &b, &c, &a1, &b1, &c1}) require_event(m, *x);
  if (!is_kinematic_triangle(m, a, b, c)) {
    throw InputError("a, b, c do not form a kinematic triangle");
  }
  if (!betw(m, a, b1, c) || !betw(m, b, c1, a) || !betw(m, c, a1, b)) {
    throw InputError("hypotheses [a b' c], [b c' a], [c a' b] not met");
  }
  const std::vector<Event> mids{a1, b1, c1};
  Witness w;
  w.event("a", a).event("b", b).event("c", c);
  w.event("a'", a1).event("b'", b1).event("c'", c1);
  const Basis basis = m.finite() ? Basis::exhaustive : Basis::construction;
  if (const auto p = common_path(m, mids)) {
    return Verdict::fail(w.path("P", *p), "a path contains a', b', c'", 1,
                         basis);
  }
  return Verdict::pass_with(basis, 1, w);
}

}  // namespace schutz
