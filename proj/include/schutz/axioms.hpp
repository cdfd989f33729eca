#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schutz/budget.hpp"
#include "schutz/chains.hpp"
#include "schutz/core.hpp"
#include "schutz/verdict.hpp"

namespace schutz {

enum class AxiomId {
  I1, I2, I3, InPathEvent, O1, O2, O3, O4, O5, O6, I5, I6, I7, S, C, I4
};

const std::vector<AxiomId>& all_axioms();
std::string to_string(AxiomId id);
std::optional<AxiomId> parse_axiom_id(std::string_view s);

// Finite models: exhaustive. Line models: sampled with `budget.samples`
// instances from the substream of (budget.seed, axiom id).
Verdict check_axiom(const Model& m, AxiomId id, const Budget& budget);

// True when re-evaluating the witness of a failed check reproduces the
// failure.
bool replay_axiom_witness(const Model& m, AxiomId id, const Witness& w);

// ---- dimension machinery --------------------------------------------------

struct Spray {
  Event source;
  std::vector<Path> paths;
};

// All paths through x (finite), or `count` distinct sampled lines through x.
Spray spray(const Model& m, const Event& x, std::size_t count = 6,
            std::uint64_t seed = 0);

// Pass with a transversal path T (outside SPRAY[x]) meeting q, r and s.
Verdict dep3(const Model& m, const Path& q, const Path& r, const Path& s,
             const Event& x);

// Inductive dependence of t on the set s. Intermediate paths are drawn from
// s and `pool` (defaults: SPRAY[x] on finite models, sampled spray paths on
// line models). Unknown when the oracle budget runs out.
Verdict dep_path(const Model& m, const Path& t, const std::vector<Path>& s,
                 const Event& x, const Budget& budget,
                 std::vector<Path> pool = {});

// Pass when no subset of s is dependent; fail carries the dependent subset.
Verdict indep_set(const Model& m, const std::vector<Path>& s,
                  const Budget& budget);

Verdict three_spray_at(const Model& m, const Event& x, const Budget& budget);

// Axiom S for one configuration, by exhaustive search over maps fixing Q
// pointwise. Finite models only.
Verdict check_symmetry(const Model& m, const Path& q, const Path& r,
                       const Path& s, const Event& x, const Event& qa,
                       const Budget& budget);

// Every index-ordered pair of the prefix satisfies [p_i p_j qb].
bool is_bound(const Model& m, const Chain& prefix, const Event& qb);

}  // namespace schutz
