#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "schutz/core.hpp"

namespace schutz {

enum class Status { pass, fail, unknown };

// How a verdict was reached. `sampled` and `evidence` results are not
// proofs; `vacuous` means no instance met the hypotheses.
enum class Basis { exhaustive, sampled, evidence, vacuous, construction, none };

std::string to_string(Status s);
std::string to_string(Basis b);

// Concrete objects that let a verdict be re-checked: events and paths under
// role names, plus free-form facts.
struct Witness {
  std::vector<std::pair<std::string, Event>> events;
  std::vector<std::pair<std::string, Path>> paths;
  std::vector<std::pair<std::string, std::string>> facts;

  Witness& event(std::string role, Event e);
  Witness& path(std::string role, Path p);
  Witness& fact(std::string key, std::string value);

  const Event& get_event(const std::string& role) const;
  const Path& get_path(const std::string& role) const;
  std::optional<std::string> get_fact(const std::string& key) const;
  bool has_event(const std::string& role) const;
  bool has_path(const std::string& role) const;
  bool empty() const {
    return events.empty() && paths.empty() && facts.empty();
  }
};

struct Verdict {
  Status status = Status::unknown;
  Basis basis = Basis::none;
  std::string reason;
  Witness witness;
  std::size_t samples = 0;

  static Verdict pass(Basis basis, std::size_t samples,
                      std::string reason = {});
  static Verdict pass_with(Basis basis, std::size_t samples, Witness w,
                           std::string reason = {});
  static Verdict fail(Witness w, std::string reason, std::size_t samples = 0,
                      Basis basis = Basis::exhaustive);
  static Verdict unknown(std::string reason, std::size_t samples = 0);

  bool passed() const { return status == Status::pass; }
  bool failed() const { return status == Status::fail; }
  bool undecided() const { return status == Status::unknown; }
};

// Either a constructed value or the verdict explaining why the model did
// not provide one (finite models may legitimately lack objects the theory
// guarantees).
template <class T>
class Result {
 public:
  Result(T value) : rep_(std::move(value)) {}  // NOLINT
  Result(Verdict v) : rep_(std::move(v)) {}    // NOLINT

  bool ok() const { return std::holds_alternative<T>(rep_); }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<T>(rep_); }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }
  const Verdict& verdict() const { return std::get<Verdict>(rep_); }

 private:
  std::variant<T, Verdict> rep_;
};

}  // namespace schutz
