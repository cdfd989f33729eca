#include "schutz/models.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "schutz/errors.hpp"

namespace schutz {

// ---- ParamInterval --------------------------------------------------------

ParamInterval ParamInterval::closed(Rational lo, Rational hi) {
  return ParamInterval{std::move(lo), std::move(hi), true, true, false};
}

ParamInterval ParamInterval::none() {
  return ParamInterval{Rational(0), Rational(0), false, false, true};
}

bool ParamInterval::contains(const Rational& t) const {
  if (empty) return false;
  const bool above = lo_closed ? lo <= t : lo < t;
  const bool below = hi_closed ? t <= hi : t < hi;
  return above && below;
}

std::string ParamInterval::str() const {
  if (empty) return "{}";
  return std::string(lo_closed ? "[" : "(") + lo.str() + "," + hi.str() +
         (hi_closed ? "]" : ")");
}

// ---- FiniteModel ----------------------------------------------------------

FiniteModel::FiniteModel(std::vector<std::string> events,
                         std::vector<std::vector<std::string>> paths,
                         const std::vector<std::vector<std::string>>& triples,
                         std::string descriptor)
    : descriptor_(std::move(descriptor)) {
  std::set<std::string> names;
  for (auto& n : events) {
    if (n.empty()) throw ValidationError("event names must be nonempty");
    if (!names.insert(n).second) {
      throw ValidationError("duplicate event '" + n + "'");
    }
  }
  for (const auto& n : names) events_.emplace_back(n);

  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::set<std::string> members;
    for (const auto& n : paths[i]) {
      if (!names.contains(n)) {
        throw ValidationError("path " + std::to_string(i) +
                              " has unknown event '" + n + "'");
      }
      if (!members.insert(n).second) {
        throw ValidationError("path " + std::to_string(i) +
                              " repeats event '" + n + "'");
      }
    }
    paths_.push_back(Path::listed(
        i, std::vector<std::string>(members.begin(), members.end())));
    path_sets_.push_back(std::move(members));
  }

  for (const auto& t : triples) {
    std::string shown = "[";
    for (std::size_t i = 0; i < t.size(); ++i) shown += (i ? " " : "") + t[i];
    shown += "]";
    if (t.size() != 3) {
      throw ValidationError("betweenness entry " + shown +
                            " must have 3 members");
    }
    for (const auto& n : t) {
      if (!names.contains(n)) {
        throw ValidationError("triple " + shown + " has unknown event '" + n +
                              "'");
      }
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw ValidationError("triple " + shown + " repeats an event (O3)");
    }
    const bool copath = std::any_of(
        path_sets_.begin(), path_sets_.end(), [&](const auto& s) {
          return s.contains(t[0]) && s.contains(t[1]) && s.contains(t[2]);
        });
    if (!copath) {
      throw ValidationError("triple " + shown + " lies on no path (O1)");
    }
    triples_.insert(Triple::canonical(Event(t[0]), Event(t[1]), Event(t[2])));
  }

  for (const auto& a : events_) {
    for (const auto& b : events_) {
      if (!(a < b) || !path_through_raw(a, b)) continue;
      const bool filled =
          std::any_of(events_.begin(), events_.end(),
                      [&](const Event& x) { return betw_raw(a, x, b); });
      if (!filled) dense_ = false;
    }
  }
}

bool FiniteModel::is_event(const Event& e) const {
  return !e.has_coords() &&
         std::binary_search(events_.begin(), events_.end(), e);
}

bool FiniteModel::is_path(const Path& p) const {
  return !p.is_line() && p.index() < paths_.size();
}

bool FiniteModel::on_path(const Path& p, const Event& e) const {
  if (!is_path(p) || e.has_coords()) return false;
  return path_sets_[p.index()].contains(e.name());
}

bool FiniteModel::betw_raw(const Event& a, const Event& b,
                           const Event& c) const {
  return triples_.contains(Triple::canonical(a, b, c));
}

std::optional<Path> FiniteModel::path_through_raw(const Event& a,
                                                  const Event& b) const {
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    if (path_sets_[i].contains(a.name()) && path_sets_[i].contains(b.name())) {
      return paths_[i];
    }
  }
  return std::nullopt;
}

std::vector<Event> FiniteModel::members(const Path& p) const {
  if (!is_path(p)) throw InputError("unknown path " + p.id());
  std::vector<Event> out;
  for (const auto& n : path_sets_[p.index()]) out.emplace_back(n);
  return out;
}

std::vector<Path> FiniteModel::paths_containing(const Event& e) const {
  std::vector<Path> out;
  for (std::size_t i = 0; i < paths_.size(); ++i) {
    if (path_sets_[i].contains(e.name())) out.push_back(paths_[i]);
  }
  return out;
}

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw ParseError(what + " must contain strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<std::vector<std::string>> nested_list(const json& doc,
                                                  const std::string& key) {
  std::vector<std::vector<std::string>> out;
  if (!doc.contains(key)) return out;
  const auto& j = doc.at(key);
  if (!j.is_array()) throw ParseError("'" + key + "' must be an array");
  for (const auto& item : j) out.push_back(string_list(item, "'" + key + "'"));
  return out;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FiniteModel load_finite_model(std::string_view text, std::string descriptor) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model file must be a JSON object");
  if (!doc.contains("events")) throw ParseError("model file lacks 'events'");
  return FiniteModel(string_list(doc.at("events"), "'events'"),
                     nested_list(doc, "paths"),
                     nested_list(doc, "betweenness"), std::move(descriptor));
}

FiniteModel load_finite_model_file(const std::filesystem::path& file) {
  return load_finite_model(read_file(file),
                           "finite:" + file.filename().string());
}

// ---- LineModel ------------------------------------------------------------

bool LineModel::on_path(const Path& p, const Event& e) const {
  return p.is_line() && e.has_coords() && p.as_line().contains(e.coords());
}

bool LineModel::is_path(const Path& p) const {
  return p.is_line() && admissible_velocity(p.as_line().v);
}

bool LineModel::betw_raw(const Event& a, const Event& b,
                         const Event& c) const {
  if (!a.has_coords() || !b.has_coords() || !c.has_coords()) return false;
  if (a == b || b == c || a == c) return false;
  if (!((a.t() < b.t() && b.t() < c.t()) || (c.t() < b.t() && b.t() < a.t()))) {
    return false;
  }
  if (!connectable(a.coords(), c.coords())) return false;
  // b on the line through a and c, without dividing.
  return (b.x() - a.x()) * (c.t() - a.t()) == (c.x() - a.x()) * (b.t() - a.t());
}

std::optional<Path> LineModel::path_through_raw(const Event& a,
                                                const Event& b) const {
  if (!a.has_coords() || !b.has_coords() || a == b) return std::nullopt;
  if (!connectable(a.coords(), b.coords())) return std::nullopt;
  const Rational v = (b.x() - a.x()) / (b.t() - a.t());
  return Path::line(Line{v, a.x() - v * a.t()});
}

Event LineModel::sample_event(Rng& rng) const {
  Rational t = sample_coord(rng);
  Rational x = sample_coord(rng);
  return Event(std::move(t), std::move(x));
}

Line LineModel::sample_line(Rng& rng) const {
  Rational v = sample_velocity(rng);
  return Line{std::move(v), sample_coord(rng)};
}

Line LineModel::sample_line_through(Rng& rng, const Event& x) const {
  Rational v = sample_velocity(rng);
  Rational x0 = x.x() - v * x.t();
  return Line{std::move(v), std::move(x0)};
}

// ---- Minkowski1p1 ---------------------------------------------------------

bool Minkowski1p1::admissible_velocity(const Rational& v) const {
  return v.abs() < Rational(1);
}

bool Minkowski1p1::connectable(const Point& a, const Point& b) const {
  const Rational dt = b.t - a.t;
  const Rational dx = b.x - a.x;
  return dx * dx < dt * dt;
}

ParamInterval Minkowski1p1::unreach_interval(const Line& q,
                                             const Point& b) const {
  if (q.contains(b)) throw InputError("event lies on the path");
  // |x0 + v t - xb| >= |t - tb| holds between the two lightcone crossings.
  const Rational d = q.x0 - b.x;
  const Rational t1 = (d + b.t) / (Rational(1) - q.v);
  const Rational t2 = (b.t - d) / (Rational(1) + q.v);
  return ParamInterval::closed(min(t1, t2), max(t1, t2));
}

Rational Minkowski1p1::sample_velocity(Rng& rng) const {
  const std::int64_t q = rng.uniform(1, sampler().denom);
  return Rational(rng.uniform(-(q - 1), q - 1), q);
}

// ---- Galilean1p1 ----------------------------------------------------------

bool Galilean1p1::connectable(const Point& a, const Point& b) const {
  return a.t != b.t;
}

ParamInterval Galilean1p1::unreach_interval(const Line& q,
                                            const Point& b) const {
  if (q.contains(b)) throw InputError("event lies on the path");
  return ParamInterval::closed(b.t, b.t);
}

Rational Galilean1p1::sample_velocity(Rng& rng) const {
  return rng.rational(sampler());
}

// ---- free functions -------------------------------------------------------

std::unique_ptr<Model> open_model(std::string_view spec) {
  if (spec == "builtin:minkowski11") return std::make_unique<Minkowski1p1>();
  if (spec == "builtin:galilean11") return std::make_unique<Galilean1p1>();
  if (spec.starts_with("builtin:")) {
    throw InputError("unknown builtin model '" + std::string(spec) + "'");
  }
  return std::make_unique<FiniteModel>(
      load_finite_model_file(std::filesystem::path(spec)));
}

const LineModel* as_line_model(const Model& m) {
  return dynamic_cast<const LineModel*>(&m);
}

const FiniteModel* as_finite_model(const Model& m) {
  return dynamic_cast<const FiniteModel*>(&m);
}

bool timelike(const Event& a, const Event& b) {
  if (a == b) throw InputError("timelike needs distinct events");
  return Minkowski1p1().connectable(a.coords(), b.coords());
}

std::optional<Path> line_through(const LineModel& m, const Event& a,
                                 const Event& b) {
  if (a == b) throw InputError("line_through needs distinct events");
  return m.path_through_raw(a, b);
}

std::optional<Event> line_intersection(const Path& p, const Path& r) {
  const Line& lp = p.as_line();
  const Line& lr = r.as_line();
  if (lp == lr) throw InputError("identical lines meet everywhere");
  if (lp.v == lr.v) return std::nullopt;
  const Rational t = (lr.x0 - lp.x0) / (lp.v - lr.v);
  return LineModel::point_on(lp, t);
}

}  // namespace schutz
