#include "schutz/chains.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <json.hpp>

#include "schutz/errors.hpp"
#include "schutz/models.hpp"

namespace schutz {

std::string Chain::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += " ";
    s += seq[i].id();
  }
  return s + "]";
}

namespace {

void require_long(std::span<const Event> seq) {
  if (seq.size() < 3) throw InputError("ordering needs at least 3 events");
}

std::vector<Event> distinct_sorted(std::span<const Event> xs) {
  std::vector<Event> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    throw InputError("event set contains duplicates");
  }
  return v;
}

Path require_copath(const Model& m, std::span<const Event> xs) {
  for (const auto& e : xs) require_event(m, e);
  auto p = common_path(m, xs);
  if (!p) throw InputError("events do not lie on a common path");
  return *p;
}

}  // namespace

bool check_total_order(const Model& m, std::span<const Event> seq) {
  require_long(seq);
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!betw(m, seq[i], seq[j], seq[k])) return false;
      }
    }
  }
  return true;
}

bool check_local_order(const Model& m, std::span<const Event> seq) {
  require_long(seq);
  for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
    if (!betw(m, seq[i], seq[i + 1], seq[i + 2])) return false;
  }
  return true;
}

bool local_total_equiv(const Model& m, std::span<const Event> seq) {
  return check_local_order(m, seq) == check_total_order(m, seq);
}

bool index_injective_check(std::span<const Event> seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return false;
    }
  }
  return true;
}

std::string to_string(ChainKind k) {
  switch (k) {
    case ChainKind::short_chain: return "short";
    case ChainKind::long_chain: return "long";
    case ChainKind::not_chain: return "not_chain";
  }
  return "?";
}

ChainClass classify_chain(const Model& m, std::span<const Event> xs) {
  if (xs.size() < 2) return {ChainKind::not_chain, {}, "fewer than 2 events"};
  if (!index_injective_check(xs)) {
    return {ChainKind::not_chain, {}, "repeated event"};
  }
  for (const auto& e : xs) require_event(m, e);
  const auto p = common_path(m, xs);
  if (!p) return {ChainKind::not_chain, {}, "no common path"};
  if (xs.size() == 2) {
    return {ChainKind::short_chain,
            Chain{std::vector<Event>(xs.begin(), xs.end()), p}, ""};
  }
  try {
    return {ChainKind::long_chain, chain_from_set(m, xs), ""};
  } catch (const InconsistencyError& e) {
    return {ChainKind::not_chain, {}, e.what()};
  }
}

Chain chain_from_set(const Model& m, std::span<const Event> xs) {
  if (xs.size() < 2) throw InputError("a chain needs at least 2 events");
  const auto v = distinct_sorted(xs);
  const Path q = require_copath(m, v);
  if (v.size() == 2) return Chain{v, q};

  std::vector<Event> seq;
  switch (some_betw_case(m, q, v[0], v[1], v[2])) {
    case BetwCase::abc: seq = {v[0], v[1], v[2]}; break;
    case BetwCase::bca: seq = {v[1], v[2], v[0]}; break;
    case BetwCase::cab: seq = {v[2], v[0], v[1]}; break;
    default: throw InconsistencyError("distinct events compared equal");
  }

  for (std::size_t i = 3; i < v.size(); ++i) {
    const Event& b = v[i];
    const Event& a1 = seq.front();
    const Event& an = seq.back();
    if (betw(m, b, a1, an)) {
      seq.insert(seq.begin(), b);
    } else if (betw(m, a1, an, b)) {
      // Right edge: the mirror image of the left-edge case.
      seq.push_back(b);
    } else if (betw(m, a1, b, an)) {
      std::size_t k = 1;
      while (k < seq.size() && !betw(m, a1, b, seq[k])) ++k;
      if (k == seq.size()) {
        throw InconsistencyError("no insertion index for " + b.id());
      }
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(k), b);
    } else {
      throw InconsistencyError("no betweenness among " + b.id() + ", " +
                               a1.id() + ", " + an.id() + " (O5 fails)");
    }
  }
  if (!check_total_order(m, seq)) {
    throw InconsistencyError("inserted sequence is not totally ordered");
  }
  return Chain{std::move(seq), q};
}

Chain brute_force_chain(const Model& m, std::span<const Event> xs) {
  if (xs.size() < 2) throw InputError("a chain needs at least 2 events");
  if (xs.size() > 9) throw InputError("brute force limited to 9 events");
  auto perm = distinct_sorted(xs);
  const Path q = require_copath(m, perm);
  if (perm.size() == 2) return Chain{perm, q};

  // Permutations in lexicographic order, cut as soon as an adjacent triple
  // fails: local order is necessary for total order.
  std::vector<std::vector<Event>> found;
  std::vector<Event> seq;
  std::vector<bool> used(perm.size(), false);
  std::function<void()> extend = [&] {
    if (seq.size() == perm.size()) {
      if (check_total_order(m, seq)) found.push_back(seq);
      return;
    }
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if (used[i]) continue;
      const std::size_t k = seq.size();
      if (k >= 2 && !betw(m, seq[k - 2], seq[k - 1], perm[i])) continue;
      used[i] = true;
      seq.push_back(perm[i]);
      extend();
      seq.pop_back();
      used[i] = false;
    }
  };
  extend();

  if (found.empty()) throw InconsistencyError("no ordering of the set exists");
  if (found.size() != 2 ||
      !std::equal(found[0].begin(), found[0].end(), found[1].rbegin())) {
    throw InconsistencyError("ordering is not unique up to reversal (" +
                             std::to_string(found.size()) + " found)");
  }
  return Chain{found.front(), q};
}

Chain reverse_chain(const Chain& c) {
  return Chain{std::vector<Event>(c.seq.rbegin(), c.seq.rend()), c.path};
}

bool same_up_to_reversal(const Chain& a, const Chain& b) {
  if (a.seq.size() != b.seq.size()) return false;
  return a.seq == b.seq ||
         std::equal(a.seq.begin(), a.seq.end(), b.seq.rbegin());
}

std::pair<Event, Event> chain_ends(const Model& m, std::span<const Event> xs) {
  if (xs.size() < 3) throw InputError("chain_ends needs at least 3 events");
  const auto v = distinct_sorted(xs);
  const Path q = require_copath(m, v);

  Event a;
  Event b;
  switch (some_betw_case(m, q, v[0], v[1], v[2])) {
    case BetwCase::abc: a = v[0]; b = v[2]; break;
    case BetwCase::bca: a = v[1]; b = v[0]; break;
    case BetwCase::cab: a = v[2]; b = v[1]; break;
    default: throw InconsistencyError("distinct events compared equal");
  }
  for (std::size_t i = 3; i < v.size(); ++i) {
    const Event& x = v[i];
    if (betw(m, a, x, b)) continue;
    if (betw(m, x, b, a)) {
      b = x;
    } else if (betw(m, b, a, x)) {
      a = x;
    } else {
      throw InconsistencyError("no betweenness among " + a.id() + ", " +
                               x.id() + ", " + b.id() + " (O5 fails)");
    }
  }
  return {a, b};
}

Result<Event> prolong(const Model& m, const Event& a, const Event& b) {
  if (!path_connected(m, a, b)) {
    throw InputError("prolong needs distinct path-connected events");
  }
  if (m.kind() == ModelKind::analytic) {
    return Event(b.t() + (b.t() - a.t()), b.x() + (b.x() - a.x()));
  }
  const auto* fm = as_finite_model(m);
  for (const auto& c : fm->events()) {
    if (m.betw_raw(a, b, c)) return c;
  }
  return Verdict::fail(Witness{}.event("a", a).event("b", b),
                       "no event c with [a b c]");
}

Result<std::vector<Event>> distinct_prolong_sequence(const Model& m,
                                                     const Event& a,
                                                     const Event& b,
                                                     std::size_t k) {
  if (k < 1) throw InputError("prolongation count must be at least 1");
  if (m.kind() != ModelKind::analytic) {
    return Verdict::unknown("iterated prolongation needs an analytic model");
  }
  std::vector<Event> out;
  Event cur = b;
  for (std::size_t i = 0; i < k; ++i) {
    auto next = prolong(m, a, cur);
    if (!next) return next.verdict();
    cur = *next;
    out.push_back(cur);
  }
  return out;
}

namespace {

Witness quad(const Event& a, const Event& b, const Event& c, const Event& d) {
  return Witness{}.event("a", a).event("b", b).event("c", c).event("d", d);
}

Verdict conclude(bool first, bool second, const char* first_name,
                 const char* second_name, Witness w) {
  if (first) return Verdict::pass_with(Basis::exhaustive, 1, {}, first_name);
  if (second) return Verdict::pass_with(Basis::exhaustive, 1, {}, second_name);
  return Verdict::fail(std::move(w), std::string("neither ") + first_name +
                                         " nor " + second_name);
}

}  // namespace

Verdict check_lemma1(const Model& m, const Event& a, const Event& b,
                     const Event& c, const Event& d) {
  if (!betw(m, a, b, c) || !betw(m, a, b, d) || c == d) {
    throw InputError("lemma 1 needs [a b c], [a b d] and c != d");
  }
  return conclude(betw(m, b, c, d), betw(m, b, d, c), "[b c d]", "[b d c]",
                  quad(a, b, c, d));
}

Verdict check_lemma2(const Model& m, const Event& a, const Event& b,
                     const Event& c, const Event& d) {
  if (!betw(m, a, b, c) || !betw(m, a, b, d) || c == d) {
    throw InputError("lemma 2 needs [a b c], [a b d] and c != d");
  }
  return conclude(betw(m, a, c, d), betw(m, a, d, c), "[a c d]", "[a d c]",
                  quad(a, b, c, d));
}

Verdict check_lemma3(const Model& m, const Event& a, const Event& b,
                     const Event& c, const Event& d) {
  if (!betw(m, a, b, c) || !betw(m, a, c, d)) {
    throw InputError("lemma 3 needs [a b c] and [a c d]");
  }
  return conclude(betw(m, b, c, d), false, "[b c d]", "[b c d]",
                  quad(a, b, c, d));
}

Chain chain4(const Model& m, const Event& a, const Event& b, const Event& c,
             const Event& d) {
  const std::vector<Event> xs{a, b, c, d};
  if (!index_injective_check(xs)) {
    throw InputError("chain4 needs four distinct events");
  }
  return chain_from_set(m, xs);
}

// ---- saturation -----------------------------------------------------------

std::vector<Triple> forbidden_reorderings(const Triple& t) {
  return {Triple{t.b, t.c, t.a}.canonical(), Triple{t.c, t.a, t.b}.canonical(),
          Triple{t.b, t.a, t.c}.canonical(), Triple{t.a, t.c, t.b}.canonical()};
}

namespace {

using Key = std::pair<Event, Event>;

// Oriented triples with the two indices the rules need.
class Closure {
 public:
  void add(const Event& a, const Event& b, const Event& c) {
    push(a, b, c);
    push(c, b, a);
  }

  void run() {
    while (!work_.empty()) {
      const Triple t = work_.back();
      work_.pop_back();
      fire(t.a, t.b, t.c);
    }
  }

  std::set<Triple> canonical() const {
    std::set<Triple> out;
    for (const auto& t : seen_) out.insert(t.canonical());
    return out;
  }

 private:
  void push(const Event& a, const Event& b, const Event& c) {
    Triple t{a, b, c};
    if (!seen_.insert(t).second) return;
    // Repeated-member triples are contradictions, never premises.
    if (t.has_repeat()) return;
    next_[{a, b}].insert(c);
    mid_[{a, c}].insert(b);
    work_.push_back(std::move(t));
  }

  std::vector<Event> lookup(const std::map<Key, std::set<Event>>& idx,
                            const Event& x, const Event& y) const {
    const auto it = idx.find({x, y});
    if (it == idx.end()) return {};
    return {it->second.begin(), it->second.end()};
  }

  void fire(const Event& a, const Event& b, const Event& c) {
    // O4 [abc][bcd] => [abd], this triple as either premise.
    for (const auto& d : lookup(next_, b, c)) add(a, b, d);
    for (const auto& x : lookup(next_, b, a)) add(x, a, c);
    // Lemma 3 [abc][acd] => [bcd].
    for (const auto& d : lookup(next_, a, c)) add(b, c, d);
    for (const auto& y : lookup(mid_, a, b)) add(y, b, c);
    // [abd][bcd] => [abc].
    for (const auto& y : lookup(mid_, b, c)) add(a, b, y);
    for (const auto& x : lookup(next_, c, a)) add(x, a, b);
  }

  std::set<Triple> seen_;
  std::map<Key, std::set<Event>> next_;  // (a,b) -> {c : [a b c]}
  std::map<Key, std::set<Event>> mid_;   // (a,c) -> {b : [a b c]}
  std::vector<Triple> work_;
};

}  // namespace

FactBase saturate(const FactBase& fb) {
  Closure cl;
  for (const auto& t : fb.triples) cl.add(t.a, t.b, t.c);
  cl.run();

  FactBase out;
  out.triples = cl.canonical();
  out.distinct = fb.distinct;
  for (const auto& [u, w] : out.distinct) {
    if (u == w) {
      out.contradiction =
          Contradiction{Triple{u, w, u}, std::nullopt, "distinct(u,u)"};
      return out;
    }
  }
  // A clashing pair among the given facts is the most direct witness.
  const std::set<Triple>* pools[] = {&fb.triples, &out.triples};
  for (const auto* pool : pools) {
    for (const auto& t : *pool) {
      if (t.has_repeat()) continue;
      for (const auto& f : forbidden_reorderings(t)) {
        if (pool->contains(f)) {
          out.contradiction = Contradiction{t, f, "Thm1"};
          return out;
        }
      }
    }
  }
  for (const auto& t : out.triples) {
    if (t.has_repeat()) {
      out.contradiction = Contradiction{t, std::nullopt, "O3"};
      return out;
    }
  }
  return out;
}

FactBase load_fact_base(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed fact file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("facts") || !doc["facts"].is_array()) {
    throw ParseError("fact file needs a 'facts' array");
  }
  auto names = [](const json& j, std::size_t n, const char* what) {
    if (!j.is_array() || j.size() != n) {
      throw ParseError(std::string(what) + " entries need " +
                       std::to_string(n) + " names");
    }
    std::vector<Event> out;
    for (const auto& s : j) {
      if (!s.is_string()) throw ParseError(std::string(what) + " names must be strings");
      out.emplace_back(s.get<std::string>());
    }
    return out;
  };
  FactBase fb;
  for (const auto& f : doc["facts"]) {
    const auto e = names(f, 3, "fact");
    fb.add(e[0], e[1], e[2]);
  }
  if (doc.contains("distinct")) {
    if (!doc["distinct"].is_array()) throw ParseError("'distinct' must be an array");
    for (const auto& d : doc["distinct"]) {
      const auto e = names(d, 2, "distinct");
      fb.distinct.insert({e[0], e[1]});
    }
  }
  return fb;
}

}  // namespace schutz
