#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "schutz/rational.hpp"

namespace schutz {

// Spacetime coordinates in 1+1 dimensions, time first.
struct Point {
  Rational t;
  Rational x;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

// An event is either a named element of a finite model or a
// coordinate-bearing point of an analytic model. The two never mix within
// one model.
class Event {
 public:
  Event() = default;
  explicit Event(std::string name) : name_(std::move(name)) {}
  Event(Rational t, Rational x) : coords_(Point{std::move(t), std::move(x)}) {}
  explicit Event(Point p) : coords_(std::move(p)) {}

  bool has_coords() const { return coords_.has_value(); }
  const Point& coords() const;
  const Rational& t() const { return coords().t; }
  const Rational& x() const { return coords().x; }
  const std::string& name() const { return name_; }

  // Textual identity: the name, or "(t,x)" with exact rational literals.
  std::string id() const;

  friend bool operator==(const Event& a, const Event& b);
  friend std::strong_ordering operator<=>(const Event& a, const Event& b);

 private:
  std::string name_;
  std::optional<Point> coords_;
};

// Parses "(t,x)" with rational components.
Event parse_event(std::string_view text);
// Parses a semicolon-separated list of "(t,x)" events.
std::vector<Event> parse_event_list(std::string_view text);

// Worldline x(t) = x0 + v*t.
struct Line {
  Rational v;
  Rational x0;

  Rational x_at(const Rational& t) const { return x0 + v * t; }
  bool contains(const Point& p) const { return x_at(p.t) == p.x; }

  friend bool operator==(const Line&, const Line&) = default;
  friend auto operator<=>(const Line&, const Line&) = default;
};

// Parses "v,x0".
Line parse_line(std::string_view text);

// A path of a finite model (identified by its index in the model, carrying
// its member names for display) or an analytic line.
class Path {
 public:
  static Path listed(std::size_t index, std::vector<std::string> members);
  static Path line(Line l);

  bool is_line() const { return std::holds_alternative<Line>(rep_); }
  const Line& as_line() const;
  std::size_t index() const;
  const std::vector<std::string>& members() const;

  std::string id() const;

  friend bool operator==(const Path& a, const Path& b);
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);

 private:
  struct Listed {
    std::size_t index;
    std::vector<std::string> members;
  };
  explicit Path(std::variant<Listed, Line> rep) : rep_(std::move(rep)) {}
  std::variant<Listed, Line> rep_;
};

// A betweenness triple stored in the orientation that is lexicographically
// smaller of (a,b,c) and (c,b,a).
struct Triple {
  Event a;
  Event b;
  Event c;

  static Triple canonical(const Event& a, const Event& b, const Event& c);
  Triple canonical() const { return canonical(a, b, c); }
  Triple reversed() const { return Triple{c, b, a}; }
  bool has_repeat() const { return a == b || b == c || a == c; }

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class ModelKind { finite, analytic };

// Events, paths and a betweenness oracle. Implementations are immutable
// after construction; every query is pure.
class Model {
 public:
  virtual ~Model() = default;

  virtual ModelKind kind() const = 0;
  virtual std::string descriptor() const = 0;

  virtual bool is_event(const Event& e) const = 0;
  virtual bool on_path(const Path& p, const Event& e) const = 0;
  virtual bool is_path(const Path& p) const = 0;

  // Raw relation. Callers should go through schutz::betw, which validates
  // event membership first.
  virtual bool betw_raw(const Event& a, const Event& b,
                        const Event& c) const = 0;

  // The first path containing both events, if any. Requires a != b.
  virtual std::optional<Path> path_through_raw(const Event& a,
                                               const Event& b) const = 0;

  // Every segment between distinct path-connected events is nonempty.
  virtual bool dense() const = 0;

  bool finite() const { return kind() == ModelKind::finite; }
};

// ---- primitive relations ------------------------------------------------

void require_event(const Model& m, const Event& e);

bool betw(const Model& m, const Event& a, const Event& b, const Event& c);
bool betw_nonstrict(const Model& m, const Event& a, const Event& b,
                    const Event& c);
// Every member of `s` lies strictly between a and b. Vacuous for empty s.
bool betw_set(const Model& m, const Event& a, std::span<const Event> s,
              const Event& b);

std::optional<Path> path_through(const Model& m, const Event& a,
                                 const Event& b);
bool path_connected(const Model& m, const Event& a, const Event& b);

// Three distinct events pairwise joined by three pairwise distinct paths.
bool is_kinematic_triangle(const Model& m, const Event& a, const Event& b,
                           const Event& c);

enum class BetwCase { eq_ab, eq_ac, eq_bc, abc, bca, cab };

std::string to_string(BetwCase c);

// For a, b, c on Q, the first of a=b, a=c, b=c, [abc], [bca], [cab] that
// holds. Throws InconsistencyError when none does (the model violates O5).
BetwCase some_betw_case(const Model& m, const Path& q, const Event& a,
                        const Event& b, const Event& c);

// True when a single path contains every event of `events` (at least two
// distinct events required for a meaningful answer).
std::optional<Path> common_path(const Model& m, std::span<const Event> events);

}  // namespace schutz
