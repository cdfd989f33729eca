#include "schutz/verdict.hpp"

#include "schutz/errors.hpp"

namespace schutz {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::exhaustive: return "exhaustive";
    case Basis::sampled: return "sampled";
    case Basis::evidence: return "evidence";
    case Basis::vacuous: return "vacuous";
    case Basis::construction: return "construction";
    case Basis::none: return "none";
  }
  return "?";
}

Witness& Witness::event(std::string role, Event e) {
  events.emplace_back(std::move(role), std::move(e));
  return *this;
}

Witness& Witness::path(std::string role, Path p) {
  paths.emplace_back(std::move(role), std::move(p));
  return *this;
}

Witness& Witness::fact(std::string key, std::string value) {
  facts.emplace_back(std::move(key), std::move(value));
  return *this;
}

const Event& Witness::get_event(const std::string& role) const {
  for (const auto& [k, e] : events) {
    if (k == role) return e;
  }
  throw InputError("witness has no event '" + role + "'");
}

const Path& Witness::get_path(const std::string& role) const {
  for (const auto& [k, p] : paths) {
    if (k == role) return p;
  }
  throw InputError("witness has no path '" + role + "'");
}

std::optional<std::string> Witness::get_fact(const std::string& key) const {
  for (const auto& [k, v] : facts) {
    if (k == key) return v;
  }
  return std::nullopt;
}

bool Witness::has_event(const std::string& role) const {
  for (const auto& [k, e] : events) {
    if (k == role) return true;
  }
  return false;
}

bool Witness::has_path(const std::string& role) const {
  for (const auto& [k, p] : paths) {
    if (k == role) return true;
  }
  return false;
}

Verdict Verdict::pass(Basis basis, std::size_t samples, std::string reason) {
  return Verdict{Status::pass, basis, std::move(reason), {}, samples};
}

Verdict Verdict::pass_with(Basis basis, std::size_t samples, Witness w,
                           std::string reason) {
  return Verdict{Status::pass, basis, std::move(reason), std::move(w),
                 samples};
}

Verdict Verdict::fail(Witness w, std::string reason, std::size_t samples,
                      Basis basis) {
  return Verdict{Status::fail, basis, std::move(reason), std::move(w),
                 samples};
}

Verdict Verdict::unknown(std::string reason, std::size_t samples) {
  return Verdict{Status::unknown, Basis::none, std::move(reason), {}, samples};
}

}  // namespace schutz
