#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schutz/core.hpp"
#include "schutz/verdict.hpp"

namespace schutz {

// A finite chain: seq[i] plays the role of the indexing function f(i).
struct Chain {
  std::vector<Event> seq;
  std::optional<Path> path;

  std::size_t size() const { return seq.size(); }
  const Event& front() const { return seq.front(); }
  const Event& back() const { return seq.back(); }
  std::string str() const;
};

// Every index-ordered triple is in betweenness. Needs |seq| >= 3.
bool check_total_order(const Model& m, std::span<const Event> seq);
// Only adjacent triples. Needs |seq| >= 3.
bool check_local_order(const Model& m, std::span<const Event> seq);
// The two orderings agree on this sequence.
bool local_total_equiv(const Model& m, std::span<const Event> seq);
bool index_injective_check(std::span<const Event> seq);

enum class ChainKind { short_chain, long_chain, not_chain };
std::string to_string(ChainKind k);

struct ChainClass {
  ChainKind kind = ChainKind::not_chain;
  std::optional<Chain> chain;
  std::string reason;
};

ChainClass classify_chain(const Model& m, std::span<const Event> xs);

// Incremental insertion builder. Deterministic: events are taken in
// ascending order, the first three seeding the chain.
Chain chain_from_set(const Model& m, std::span<const Event> xs);
// Exhaustive permutation search, |xs| <= 9. Asserts uniqueness up to
// reversal.
Chain brute_force_chain(const Model& m, std::span<const Event> xs);
Chain reverse_chain(const Chain& c);
bool same_up_to_reversal(const Chain& a, const Chain& b);

// Two members with every other member strictly between them.
std::pair<Event, Event> chain_ends(const Model& m, std::span<const Event> xs);

// Some c with [a b c]. Analytic: c = 2b - a.
Result<Event> prolong(const Model& m, const Event& a, const Event& b);
// k prolongations from the fixed base a: c1 = prolong(a,b),
// c(i+1) = prolong(a, c(i)).
Result<std::vector<Event>> distinct_prolong_sequence(const Model& m,
                                                     const Event& a,
                                                     const Event& b,
                                                     std::size_t k);

// [abc], [abd], c != d  =>  [bcd] or [bdc].
Verdict check_lemma1(const Model& m, const Event& a, const Event& b,
                     const Event& c, const Event& d);
// [abc], [abd], c != d  =>  [acd] or [adc].
Verdict check_lemma2(const Model& m, const Event& a, const Event& b,
                     const Event& c, const Event& d);
// [abc], [acd]  =>  [bcd].
Verdict check_lemma3(const Model& m, const Event& a, const Event& b,
                     const Event& c, const Event& d);

Chain chain4(const Model& m, const Event& a, const Event& b, const Event& c,
             const Event& d);

// ---- fact bases -----------------------------------------------------------

struct Contradiction {
  Triple first;
  std::optional<Triple> second;  // absent for a self-inconsistent fact
  std::string rule;
};

struct FactBase {
  std::set<Triple> triples;  // canonical
  std::set<std::pair<Event, Event>> distinct;
  std::optional<Contradiction> contradiction;

  bool consistent() const { return !contradiction.has_value(); }
  bool holds(const Event& a, const Event& b, const Event& c) const {
    return triples.contains(Triple::canonical(a, b, c));
  }
  void add(const Event& a, const Event& b, const Event& c) {
    triples.insert(Triple::canonical(a, b, c));
  }
};

// Least fixed point under O4 (a = d allowed), Lemma 3 and
// [abd][bcd] => [abc]; O2 is structural. Flags a contradiction when some
// triple and one of its forbidden reorderings are both present.
FactBase saturate(const FactBase& fb);

// The four reorderings of [abc] other than [cba].
std::vector<Triple> forbidden_reorderings(const Triple& t);

// {"facts": [[a,b,c],...], "distinct": [[c,d],...]}
FactBase load_fact_base(std::string_view text);

}  // namespace schutz
