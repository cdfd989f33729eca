#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schutz/budget.hpp"
#include "schutz/core.hpp"
#include "schutz/verdict.hpp"

namespace schutz {

enum class CheckKind { axiom, theorem, lemma };
std::string to_string(CheckKind k);

struct CheckSpec {
  std::string id;
  CheckKind kind;
  std::string sampler;  // instance kind(s), for display
};

// Every axiom, thm1-thm11, thm13, thm14, lemma1-lemma3, in that order.
const std::vector<CheckSpec>& registry();
const CheckSpec* find_check(const std::string& id);

Verdict run_check(const Model& m, const std::string& id, const Budget& b);

// Re-evaluates a failure witness of check `id`; true when it still fails.
bool replay_check(const Model& m, const std::string& id, const Witness& w);

struct CheckResult {
  std::string id;
  CheckKind kind = CheckKind::axiom;
  Verdict verdict;
  double wall_ms = 0;  // text output only
};

struct Report {
  std::string model;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  std::size_t count(Status s) const;
};

struct SuiteOptions {
  Budget budget;
  std::chrono::milliseconds timeout{5000};  // per check
};

// nullopt selects every registered check. Unknown ids throw InputError.
Report run_suite(const Model& m,
                 const std::optional<std::vector<std::string>>& selection,
                 const SuiteOptions& opts = {});

enum class ReportFormat { json, text };

std::string render_report(const Report& r, ReportFormat f);
// Inverse of the json rendering; paths and events are resolved in `m`.
Report parse_report(const std::string& json, const Model& m);

// Events: "(t,x)" or a finite-model name. Paths: "line(v,x0)" or "{a,b}".
Event resolve_event(const Model& m, const std::string& id);
Path resolve_path(const Model& m, const std::string& id);

}  // namespace schutz
