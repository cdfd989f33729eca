#include "schutz/instances.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>

#include "schutz/errors.hpp"
#include "schutz/models.hpp"
#include "schutz/sampler.hpp"
#include "schutz/unreachable.hpp"

namespace schutz {

const std::vector<std::string>& instance_kinds() {
  static const std::vector<std::string> kinds{
      "pair",         "triple",         "quad",         "triple-on-path",
      "betw-triple",  "copath-set",     "chain-seq",    "lemma12",
      "lemma3",       "triangle-de",    "triangle-mid", "unreach-config",
      "thm14-config", "thm14-beyond"};
  return kinds;
}

namespace {

// ---- line models ----------------------------------------------------------

class Sampler {
 public:
  Sampler(const LineModel& m, std::uint64_t seed) : m_(m), rng_(seed) {}

  Rng& rng() { return rng_; }
  Event event() { return m_.sample_event(rng_); }
  Line line() { return m_.sample_line(rng_); }
  Rational param() { return m_.sample_coord(rng_); }

  // k distinct parameters, ascending.
  std::vector<Rational> params(std::size_t k) {
    std::vector<Rational> ts;
    while (ts.size() < k) {
      Rational t = param();
      if (std::find(ts.begin(), ts.end(), t) == ts.end()) {
        ts.push_back(std::move(t));
      }
    }
    std::sort(ts.begin(), ts.end());
    return ts;
  }

  std::vector<Event> on(const Line& l, const std::vector<Rational>& ts) {
    std::vector<Event> out;
    for (const auto& t : ts) out.push_back(LineModel::point_on(l, t));
    return out;
  }

  // Points of a sampled line at parameters drawn from a small pool, so that
  // repeats and every ordering occur.
  std::vector<Event> loose_on_line(std::size_t k) {
    const Line l = line();
    const auto pool = params(3);
    std::vector<Event> out;
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = static_cast<std::size_t>(rng_.uniform(0, 2));
      out.push_back(LineModel::point_on(l, pool[j]));
    }
    return out;
  }

  std::vector<Event> loose_events(std::size_t k) {
    if (rng_.coin()) return loose_on_line(k);
    std::vector<Event> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(event());
    return out;
  }

  Rational positive() {
    const std::int64_t q = rng_.uniform(1, 8);
    return Rational(rng_.uniform(1, 4 * q), q);
  }

  Event offset(const Event& base, const Event& from, const Event& to,
               const Rational& s) {
    return Event(base.t() + s * (to.t() - from.t()),
                 base.x() + s * (to.x() - from.x()));
  }

  // Kinematic triangle a, b, c.
  std::optional<std::array<Event, 3>> triangle() {
    const Event a = event();
    const Line q = m_.sample_line_through(rng_, a);
    Line r = m_.sample_line_through(rng_, a);
    if (r.v == q.v) return std::nullopt;
    Rational dt1 = param();
    Rational dt2 = param();
    if (dt1.sign() == 0 || dt2.sign() == 0) return std::nullopt;
    Event b = LineModel::point_on(q, a.t() + dt1);
    Event c = LineModel::point_on(r, a.t() + dt2);
    if (!is_kinematic_triangle(m_, a, b, c)) return std::nullopt;
    return std::array<Event, 3>{a, b, c};
  }

 private:
  const LineModel& m_;
  Rng rng_;
};

std::optional<Instance> sample_one(const LineModel& m, Sampler& s,
                                   std::string_view kind, std::size_t param) {
  Rng& rng = s.rng();
  if (kind == "pair") {
    Event a = s.event();
    Event b = s.event();
    if (a == b) return std::nullopt;
    return Instance{{a, b}, {}};
  }
  if (kind == "triple") return Instance{s.loose_events(3), {}};
  if (kind == "quad") {
    auto ev = s.loose_events(4);
    if (rng.uniform(0, 7) == 0) ev[3] = ev[0];
    return Instance{ev, {}};
  }
  if (kind == "triple-on-path" || kind == "betw-triple") {
    const Line l = s.line();
    auto ev = s.on(l, s.params(3));
    if (rng.coin()) std::reverse(ev.begin(), ev.end());
    if (kind == "triple-on-path") rng.shuffle(ev);
    return Instance{ev, {Path::line(l)}};
  }
  if (kind == "copath-set" || kind == "chain-seq") {
    const std::size_t k =
        param ? param : static_cast<std::size_t>(rng.uniform(3, 10));
    const Line l = s.line();
    auto ev = s.on(l, s.params(k));
    if (kind == "copath-set" || rng.coin()) rng.shuffle(ev);
    else if (rng.coin()) std::reverse(ev.begin(), ev.end());
    return Instance{ev, {Path::line(l)}};
  }
  if (kind == "lemma12") {
    // a < b < {c, d} along the line, or the mirror image.
    const Line l = s.line();
    auto ev = s.on(l, s.params(4));
    if (rng.coin()) std::reverse(ev.begin(), ev.end());
    if (rng.coin()) std::swap(ev[2], ev[3]);
    return Instance{ev, {Path::line(l)}};
  }
  if (kind == "lemma3") {
    const Line l = s.line();
    auto ev = s.on(l, s.params(4));
    if (rng.coin()) std::reverse(ev.begin(), ev.end());
    return Instance{ev, {Path::line(l)}};
  }
  if (kind == "triangle-de" || kind == "triangle-mid") {
    const auto tri = s.triangle();
    if (!tri) return std::nullopt;
    const auto& [a, b, c] = *tri;
    auto inside = [&] { return rng.unit_fraction(16); };
    if (kind == "triangle-mid") {
      Event a1 = s.offset(c, c, b, inside());
      Event b1 = s.offset(a, a, c, inside());
      Event c1 = s.offset(b, b, a, inside());
      return Instance{{a, b, c, a1, b1, c1}, {}};
    }
    Event d = s.offset(c, b, c, s.positive());
    Event e = s.offset(c, c, a, inside());
    if (!m.path_through_raw(d, e)) return std::nullopt;
    return Instance{{a, b, c, d, e}, {}};
  }
  if (kind == "unreach-config" || kind == "thm14-config") {
    const Line l = s.line();
    std::vector<Event> ev{s.event()};
    if (kind == "thm14-config") ev.push_back(rng.uniform(0, 7) ? s.event() : ev[0]);
    for (const auto& e : ev) {
      if (l.contains(e.coords())) return std::nullopt;
    }
    return Instance{ev, {Path::line(l)}};
  }
  if (kind == "thm14-beyond") {
    const Line q = s.line();
    const Event x = LineModel::point_on(q, s.param());
    const Line r = m.sample_line_through(rng, x);
    if (r.v == q.v) return std::nullopt;
    const Rational dt = s.param();
    if (dt.sign() == 0) return std::nullopt;
    const Event a = LineModel::point_on(r, x.t() + dt);
    const Event b = s.event();
    if (q.contains(b.coords())) return std::nullopt;
    return Instance{{x, a, b}, {Path::line(q), Path::line(r)}};
  }
  throw InputError("unknown instance kind '" + std::string(kind) + "'");
}

// ---- finite models --------------------------------------------------------

void for_subsets(const std::vector<Event>& v, std::size_t k,
                 const std::function<void(std::vector<Event>)>& f) {
  if (k > v.size()) return;
  std::vector<bool> pick(v.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<Event> s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (pick[i]) s.push_back(v[i]);
    }
    f(std::move(s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

InstanceBatch enumerate(const FiniteModel& m, std::string_view kind,
                        std::size_t param) {
  InstanceBatch out;
  out.exhaustive = true;
  auto& items = out.items;
  const auto& E = m.events();
  const auto& P = m.paths();

  auto ordered_betw = [&] {
    std::vector<std::array<Event, 3>> v;
    for (const auto& t : m.triples()) {
      v.push_back({t.a, t.b, t.c});
      v.push_back({t.c, t.b, t.a});
    }
    return v;
  };

  if (kind == "pair") {
    for (const auto& a : E)
      for (const auto& b : E)
        if (a != b) items.push_back({{a, b}, {}});
  } else if (kind == "triple") {
    for (const auto& a : E)
      for (const auto& b : E)
        for (const auto& c : E) items.push_back({{a, b, c}, {}});
  } else if (kind == "quad") {
    for (const auto& a : E)
      for (const auto& b : E)
        for (const auto& c : E)
          for (const auto& d : E) items.push_back({{a, b, c, d}, {}});
  } else if (kind == "triple-on-path") {
    for (const auto& q : P) {
      const auto mem = m.members(q);
      for (const auto& a : mem)
        for (const auto& b : mem)
          for (const auto& c : mem)
            if (a != b && b != c && a != c) items.push_back({{a, b, c}, {q}});
    }
  } else if (kind == "betw-triple") {
    for (const auto& t : ordered_betw()) items.push_back({{t[0], t[1], t[2]}, {}});
  } else if (kind == "copath-set" || kind == "chain-seq") {
    for (const auto& q : P) {
      const auto mem = m.members(q);
      const std::size_t lo = param ? param : 3;
      const std::size_t hi = param ? param : std::min<std::size_t>(mem.size(), 6);
      for (std::size_t k = lo; k <= hi; ++k) {
        for_subsets(mem, k, [&](std::vector<Event> s) {
          if (kind == "copath-set") {
            items.push_back({s, {q}});
            return;
          }
          do {
            items.push_back({s, {q}});
          } while (std::next_permutation(s.begin(), s.end()));
        });
      }
    }
  } else if (kind == "lemma12" || kind == "lemma3") {
    const auto bt = ordered_betw();
    for (const auto& t1 : bt) {
      for (const auto& t2 : bt) {
        if (kind == "lemma12" && t1[0] == t2[0] && t1[1] == t2[1] &&
            t1[2] != t2[2]) {
          items.push_back({{t1[0], t1[1], t1[2], t2[2]}, {}});
        }
        if (kind == "lemma3" && t1[0] == t2[0] && t1[2] == t2[1]) {
          items.push_back({{t1[0], t1[1], t1[2], t2[2]}, {}});
        }
      }
    }
  } else if (kind == "triangle-de" || kind == "triangle-mid") {
    for (const auto& a : E)
      for (const auto& b : E)
        for (const auto& c : E) {
          if (!is_kinematic_triangle(m, a, b, c)) continue;
          if (kind == "triangle-de") {
            for (const auto& d : E) {
              if (!m.betw_raw(b, c, d)) continue;
              for (const auto& e : E) {
                if (m.betw_raw(c, e, a) && d != e && m.path_through_raw(d, e)) {
                  items.push_back({{a, b, c, d, e}, {}});
                }
              }
            }
          } else {
            for (const auto& a1 : E) {
              if (!m.betw_raw(c, a1, b)) continue;
              for (const auto& b1 : E) {
                if (!m.betw_raw(a, b1, c)) continue;
                for (const auto& c1 : E) {
                  if (m.betw_raw(b, c1, a)) {
                    items.push_back({{a, b, c, a1, b1, c1}, {}});
                  }
                }
              }
            }
          }
        }
  } else if (kind == "unreach-config") {
    for (const auto& q : P)
      for (const auto& b : E)
        if (!m.on_path(q, b)) items.push_back({{b}, {q}});
  } else if (kind == "thm14-config") {
    for (const auto& q : P)
      for (const auto& a : E)
        for (const auto& b : E)
          if (!m.on_path(q, a) && !m.on_path(q, b) && joinable(m, q, a) &&
              joinable(m, q, b)) {
            items.push_back({{a, b}, {q}});
          }
  } else if (kind == "thm14-beyond") {
    for (const auto& q : P)
      for (const auto& r : P) {
        if (q == r) continue;
        for (const auto& x : E) {
          if (!m.on_path(q, x) || !m.on_path(r, x)) continue;
          for (const auto& a : E) {
            if (a == x || !m.on_path(r, a) || m.on_path(q, a)) continue;
            for (const auto& b : E) {
              if (!m.on_path(q, b) && joinable(m, q, b)) {
                items.push_back({{x, a, b}, {q, r}});
              }
            }
          }
        }
      }
  } else {
    throw InputError("unknown instance kind '" + std::string(kind) + "'");
  }
  out.attempts = items.size();
  return out;
}

}  // namespace

InstanceBatch gen_instances(const Model& m, std::string_view kind,
                            std::size_t n, std::uint64_t seed,
                            std::size_t param) {
  if (const auto* fm = as_finite_model(m)) return enumerate(*fm, kind, param);
  const auto* lm = as_line_model(m);
  if (!lm) throw InputError("unsupported model kind");

  InstanceBatch out;
  Sampler s(*lm, seed);
  const std::size_t max_attempts = 50 * n + 100;
  while (out.items.size() < n) {
    if (out.attempts >= max_attempts) {
      out.starved = true;
      break;
    }
    ++out.attempts;
    if (auto inst = sample_one(*lm, s, kind, param)) {
      out.items.push_back(std::move(*inst));
    }
  }
  return out;
}

}  // namespace schutz
