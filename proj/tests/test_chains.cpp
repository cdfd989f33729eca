#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "schutz/chains.hpp"
#include "schutz/errors.hpp"
#include "schutz/models.hpp"

using namespace schutz;

namespace {

// Events on a line, ordered by time: the reference chain.
std::vector<Event> by_time(std::vector<Event> v) {
  std::sort(v.begin(), v.end(), [](const Event& a, const Event& b) {
    return oracle::q(a.t()) < oracle::q(b.t());
  });
  return v;
}

bool equal_up_to_reversal(const std::vector<Event>& a, const std::vector<Event>& b) {
  return a == b || std::equal(a.begin(), a.end(), b.rbegin(), b.rend());
}

std::vector<Event> sample_on_line(const LineModel& m, Rng& rng, const Line& l, std::size_t n) {
  std::set<Rational> ts;
  while (ts.size() < n) ts.insert(m.sample_coord(rng));
  std::vector<Event> out;
  for (const auto& t : ts) out.push_back(LineModel::point_on(l, t));
  rng.shuffle(out);
  return out;
}

}  // namespace

TEST_SUITE("chains") {

TEST_CASE("chain_from_set matches time order and brute force") {
  Minkowski1p1 m;
  Rng rng(substream_seed(5, "chains"));
  for (int i = 0; i < 60; ++i) {
    const Line l = m.sample_line(rng);
    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0, 4));
    const auto xs = sample_on_line(m, rng, l, n);
    const Chain c = chain_from_set(m, xs);
    CHECK(equal_up_to_reversal(c.seq, by_time(xs)));
    CHECK(check_total_order(m, c.seq));
    CHECK(local_total_equiv(m, c.seq));
    CHECK(same_up_to_reversal(c, brute_force_chain(m, xs)));
    REQUIRE(c.path);
    CHECK(c.path->as_line() == l);
  }
}

TEST_CASE("chain on a finite model") {
  const FiniteModel fm({"a", "b", "c", "d"}, {{"a", "b", "c", "d"}},
                       {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "c", "d"}, {"b", "c", "d"}});
  const std::vector<Event> xs{Event("d"), Event("b"), Event("a"), Event("c")};
  const Chain c = chain_from_set(fm, xs);
  CHECK(c.str() == "[a b c d]");
  CHECK(same_up_to_reversal(c, brute_force_chain(fm, xs)));
  CHECK(same_up_to_reversal(c, chain4(fm, Event("c"), Event("a"), Event("d"), Event("b"))));
  const auto ends = chain_ends(fm, xs);
  CHECK(std::set<Event>{ends.first, ends.second} == std::set<Event>{Event("a"), Event("d")});
}

TEST_CASE("chain inputs") {
  Minkowski1p1 m;
  CHECK_THROWS_AS(chain_from_set(m, std::vector<Event>{Event(0, 0)}), InputError);
  CHECK_THROWS_AS(chain_from_set(m, std::vector<Event>{Event(0, 0), Event(1, 0), Event(0, 1)}),
                  InputError);
  CHECK_THROWS_AS(chain_from_set(m, std::vector<Event>{Event(0, 0), Event(0, 0), Event(1, 0)}),
                  InputError);
  const std::vector<Event> two{Event(1, 0), Event(0, 0)};
  CHECK(chain_from_set(m, two).size() == 2);
  CHECK(classify_chain(m, two).kind == ChainKind::short_chain);
  CHECK(classify_chain(m, std::vector<Event>{Event(0, 0), Event(1, 0), Event(2, 0)}).kind ==
        ChainKind::long_chain);
  CHECK(classify_chain(m, std::vector<Event>{Event(0, 0), Event(0, 1)}).kind ==
        ChainKind::not_chain);
  CHECK_FALSE(index_injective_check(std::vector<Event>{Event(0, 0), Event(0, 0)}));
}

TEST_CASE("O4-broken model is rejected by the chain builders") {
  const auto fm = load_finite_model_file(std::string(FIXTURES_DIR) + "/o4_broken.json");
  const std::vector<Event> xs{Event("a"), Event("b"), Event("c"), Event("d")};
  CHECK_THROWS_AS(brute_force_chain(fm, xs), InconsistencyError);
  CHECK(classify_chain(fm, xs).kind == ChainKind::not_chain);
}

TEST_CASE("chain_ends are the extreme times") {
  Minkowski1p1 m;
  Rng rng(substream_seed(6, "ends"));
  for (int i = 0; i < 40; ++i) {
    const auto xs = sample_on_line(m, rng, m.sample_line(rng), 6);
    const auto ref = by_time(xs);
    const auto [a, b] = chain_ends(m, xs);
    CHECK(std::set<Event>{a, b} == std::set<Event>{ref.front(), ref.back()});
  }
}

TEST_CASE("prolong") {
  Minkowski1p1 m;
  const auto c = prolong(m, Event(0, 0), Event(2, 1));
  REQUIRE(c);
  CHECK(*c == Event(4, 2));
  CHECK(betw(m, Event(0, 0), Event(2, 1), *c));
  CHECK_THROWS_AS(prolong(m, Event(0, 0), Event(1, 1)), InputError);

  const auto seq = distinct_prolong_sequence(m, Event(0, 0), Event(1, 0), 3);
  REQUIRE(seq);
  CHECK(*seq == std::vector<Event>{Event(2, 0), Event(4, 0), Event(8, 0)});

  const FiniteModel fm({"a", "b", "c"}, {{"a", "b", "c"}}, {{"a", "b", "c"}});
  CHECK(*prolong(fm, Event("a"), Event("b")) == Event("c"));
  const auto none = prolong(fm, Event("b"), Event("c"));
  CHECK_FALSE(none);
  CHECK(none.verdict().failed());
  CHECK(distinct_prolong_sequence(fm, Event("a"), Event("b"), 2).verdict().undecided());
}

TEST_CASE("ordering lemmas on sampled lines") {
  Minkowski1p1 m;
  Rng rng(substream_seed(8, "lemmas"));
  for (int i = 0; i < 50; ++i) {
    auto xs = by_time(sample_on_line(m, rng, m.sample_line(rng), 4));
    // xs[0] < xs[1] < xs[2] < xs[3] in time.
    CHECK(check_lemma1(m, xs[0], xs[1], xs[2], xs[3]).passed());
    CHECK(check_lemma2(m, xs[0], xs[1], xs[2], xs[3]).passed());
    CHECK(check_lemma3(m, xs[0], xs[1], xs[2], xs[3]).passed());
    const Chain c = chain4(m, xs[3], xs[1], xs[0], xs[2]);
    CHECK(equal_up_to_reversal(c.seq, xs));
  }
  CHECK_THROWS_AS(check_lemma3(m, Event(0, 0), Event(2, 0), Event(1, 0), Event(3, 0)),
                  InputError);
}

TEST_CASE("lemma violations on a broken fixture") {
  const auto fm = load_finite_model_file(std::string(FIXTURES_DIR) + "/o4_broken.json");
  // [d c b] and [d c a] hold; neither [d b a] nor [d a b] is listed.
  const Verdict v = check_lemma2(fm, Event("d"), Event("c"), Event("b"), Event("a"));
  CHECK(v.failed());
  CHECK(v.witness.get_event("a") == Event("d"));
}

}  // TEST_SUITE
