#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schutz/core.hpp"
#include "schutz/sampler.hpp"

namespace schutz {

// A set of path parameters (time values). Endpoints are exact; either end
// may be open. `empty` overrides everything else.
struct ParamInterval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;
  bool empty = false;

  static ParamInterval closed(Rational lo, Rational hi);
  static ParamInterval none();

  bool contains(const Rational& t) const;
  bool single_point() const { return !empty && lo == hi; }
  std::string str() const;
};

// Explicit events, listed paths and canonical betweenness triples.
class FiniteModel final : public Model {
 public:
  FiniteModel(std::vector<std::string> events,
              std::vector<std::vector<std::string>> paths,
              const std::vector<std::vector<std::string>>& triples,
              std::string descriptor = "finite");

  ModelKind kind() const override { return ModelKind::finite; }
  std::string descriptor() const override { return descriptor_; }
  bool is_event(const Event& e) const override;
  bool on_path(const Path& p, const Event& e) const override;
  bool is_path(const Path& p) const override;
  bool betw_raw(const Event& a, const Event& b,
                const Event& c) const override;
  std::optional<Path> path_through_raw(const Event& a,
                                       const Event& b) const override;
  bool dense() const override { return dense_; }

  const std::vector<Event>& events() const { return events_; }
  const std::vector<Path>& paths() const { return paths_; }
  // Members of a listed path, sorted.
  std::vector<Event> members(const Path& p) const;
  std::vector<Path> paths_containing(const Event& e) const;
  const std::set<Triple>& triples() const { return triples_; }

 private:
  std::string descriptor_;
  std::vector<Event> events_;
  std::vector<Path> paths_;
  std::vector<std::set<std::string>> path_sets_;
  std::set<Triple> triples_;
  bool dense_ = true;
};

// Parses the JSON finite-model format and validates O1 and O3.
FiniteModel load_finite_model(std::string_view text,
                              std::string descriptor = "finite");
FiniteModel load_finite_model_file(const std::filesystem::path& file);

// 1+1 models whose paths are lines x = x0 + v t over exact rationals.
class LineModel : public Model {
 public:
  ModelKind kind() const override { return ModelKind::analytic; }
  bool is_event(const Event& e) const override { return e.has_coords(); }
  bool on_path(const Path& p, const Event& e) const override;
  bool is_path(const Path& p) const override;
  bool betw_raw(const Event& a, const Event& b,
                const Event& c) const override;
  std::optional<Path> path_through_raw(const Event& a,
                                       const Event& b) const override;
  bool dense() const override { return true; }

  virtual bool admissible_velocity(const Rational& v) const = 0;
  // Distinct events joined by an admissible line.
  virtual bool connectable(const Point& a, const Point& b) const = 0;
  // Parameters t of the events of `q` that no path joins to b (b off q).
  virtual ParamInterval unreach_interval(const Line& q,
                                         const Point& b) const = 0;

  static Event point_on(const Line& l, const Rational& t) {
    return Event(t, l.x_at(t));
  }

  const SamplerConfig& sampler() const { return cfg_; }
  Rational sample_coord(Rng& rng) const { return rng.rational(cfg_); }
  Event sample_event(Rng& rng) const;
  virtual Rational sample_velocity(Rng& rng) const = 0;
  Line sample_line(Rng& rng) const;
  Line sample_line_through(Rng& rng, const Event& x) const;

 private:
  SamplerConfig cfg_;
};

// Timelike lines (|v| < 1); lightlike pairs are not joined.
class Minkowski1p1 final : public LineModel {
 public:
  std::string descriptor() const override { return "builtin:minkowski11"; }
  bool admissible_velocity(const Rational& v) const override;
  bool connectable(const Point& a, const Point& b) const override;
  ParamInterval unreach_interval(const Line& q,
                                 const Point& b) const override;
  Rational sample_velocity(Rng& rng) const override;
};

// Every finite velocity; only simultaneous events are unjoinable.
class Galilean1p1 final : public LineModel {
 public:
  std::string descriptor() const override { return "builtin:galilean11"; }
  bool admissible_velocity(const Rational&) const override { return true; }
  bool connectable(const Point& a, const Point& b) const override;
  ParamInterval unreach_interval(const Line& q,
                                 const Point& b) const override;
  Rational sample_velocity(Rng& rng) const override;
};

// builtin:minkowski11, builtin:galilean11, or a finite-model file.
std::unique_ptr<Model> open_model(std::string_view spec);

const LineModel* as_line_model(const Model& m);
const FiniteModel* as_finite_model(const Model& m);

// (Δx)² < (Δt)².
bool timelike(const Event& a, const Event& b);

std::optional<Path> line_through(const LineModel& m, const Event& a,
                                 const Event& b);

// Unique common event of two distinct lines; none when parallel.
std::optional<Event> line_intersection(const Path& p, const Path& r);

}  // namespace schutz
