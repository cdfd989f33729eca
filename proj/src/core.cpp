#include "schutz/core.hpp"

#include <algorithm>

#include "schutz/errors.hpp"

namespace schutz {

const Point& Event::coords() const {
  if (!coords_) throw InputError("event '" + name_ + "' has no coordinates");
  return *coords_;
}

std::string Event::id() const {
  if (coords_) return "(" + coords_->t.str() + "," + coords_->x.str() + ")";
  return name_;
}

bool operator==(const Event& a, const Event& b) {
  if (a.coords_ && b.coords_) return *a.coords_ == *b.coords_;
  if (a.coords_ || b.coords_) return false;
  return a.name_ == b.name_;
}

std::strong_ordering operator<=>(const Event& a, const Event& b) {
  if (a.coords_ && b.coords_) return *a.coords_ <=> *b.coords_;
  if (a.coords_.has_value() != b.coords_.has_value()) {
    // Named events sort before coordinate events; never mixed in practice.
    return a.coords_ ? std::strong_ordering::greater
                     : std::strong_ordering::less;
  }
  return a.name_ <=> b.name_;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Event parse_event(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') {
    throw ParseError("event must look like (t,x): '" + std::string(text) +
                     "'");
  }
  s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string_view::npos ||
      s.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("event must have exactly two components: '" +
                     std::string(text) + "'");
  }
  return Event(Rational::parse(s.substr(0, comma)),
               Rational::parse(s.substr(comma + 1)));
}

std::vector<Event> parse_event_list(std::string_view text) {
  std::vector<Event> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(parse_event(item));
    start = end + 1;
  }
  if (out.empty()) throw ParseError("empty event list");
  return out;
}

Line parse_line(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos ||
      text.find(',', comma + 1) != std::string_view::npos) {
    throw ParseError("path must look like v,x0: '" + std::string(text) + "'");
  }
  return Line{Rational::parse(text.substr(0, comma)),
              Rational::parse(text.substr(comma + 1))};
}

Path Path::listed(std::size_t index, std::vector<std::string> members) {
  return Path(Listed{index, std::move(members)});
}

Path Path::line(Line l) { return Path(std::move(l)); }

const Line& Path::as_line() const {
  if (const auto* l = std::get_if<Line>(&rep_)) return *l;
  throw InputError("path " + id() + " is not an analytic line");
}

std::size_t Path::index() const {
  if (const auto* p = std::get_if<Listed>(&rep_)) return p->index;
  throw InputError("path " + id() + " is not a listed path");
}

const std::vector<std::string>& Path::members() const {
  if (const auto* p = std::get_if<Listed>(&rep_)) return p->members;
  throw InputError("path " + id() + " is not a listed path");
}

std::string Path::id() const {
  if (const auto* l = std::get_if<Line>(&rep_)) {
    return "line(" + l->v.str() + "," + l->x0.str() + ")";
  }
  const auto& p = std::get<Listed>(rep_);
  std::string s = "{";
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    if (i) s += ",";
    s += p.members[i];
  }
  return s + "}";
}

bool operator==(const Path& a, const Path& b) {
  if (a.is_line() != b.is_line()) return false;
  if (a.is_line()) return a.as_line() == b.as_line();
  return a.index() == b.index();
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (a.is_line() != b.is_line()) {
    return a.is_line() ? std::strong_ordering::greater
                       : std::strong_ordering::less;
  }
  if (a.is_line()) return a.as_line() <=> b.as_line();
  return a.index() <=> b.index();
}

Triple Triple::canonical(const Event& a, const Event& b, const Event& c) {
  Triple fwd{a, b, c};
  Triple rev{c, b, a};
  return rev < fwd ? rev : fwd;
}

// ---- primitive relations ------------------------------------------------

void require_event(const Model& m, const Event& e) {
  if (!m.is_event(e)) {
    throw InputError("unknown event " + e.id() + " in " + m.descriptor());
  }
}

bool betw(const Model& m, const Event& a, const Event& b, const Event& c) {
  require_event(m, a);
  require_event(m, b);
  require_event(m, c);
  return m.betw_raw(a, b, c);
}

bool betw_nonstrict(const Model& m, const Event& a, const Event& b,
                    const Event& c) {
  return betw(m, a, b, c) || b == c;
}

bool betw_set(const Model& m, const Event& a, std::span<const Event> s,
              const Event& b) {
  return std::all_of(s.begin(), s.end(),
                     [&](const Event& x) { return betw(m, a, x, b); });
}

std::optional<Path> path_through(const Model& m, const Event& a,
                                 const Event& b) {
  require_event(m, a);
  require_event(m, b);
  if (a == b) throw InputError("path_through needs distinct events");
  return m.path_through_raw(a, b);
}

bool path_connected(const Model& m, const Event& a, const Event& b) {
  return a != b && path_through(m, a, b).has_value();
}

bool is_kinematic_triangle(const Model& m, const Event& a, const Event& b,
                           const Event& c) {
  require_event(m, a);
  require_event(m, b);
  require_event(m, c);
  if (a == b || b == c || a == c) return false;
  const auto ab = m.path_through_raw(a, b);
  const auto bc = m.path_through_raw(b, c);
  const auto ca = m.path_through_raw(c, a);
  if (!ab || !bc || !ca) return false;
  return *ab != *bc && *bc != *ca && *ab != *ca;
}

std::string to_string(BetwCase c) {
  switch (c) {
    case BetwCase::eq_ab: return "eq_ab";
    case BetwCase::eq_ac: return "eq_ac";
    case BetwCase::eq_bc: return "eq_bc";
    case BetwCase::abc: return "abc";
    case BetwCase::bca: return "bca";
    case BetwCase::cab: return "cab";
  }
  return "?";
}

BetwCase some_betw_case(const Model& m, const Path& q, const Event& a,
                        const Event& b, const Event& c) {
  for (const Event* e : {&a, &b, &c}) {
    require_event(m, *e);
    if (!m.on_path(q, *e)) {
      throw InputError("event " + e->id() + " is not on path " + q.id());
    }
  }
  if (a == b) return BetwCase::eq_ab;
  if (a == c) return BetwCase::eq_ac;
  if (b == c) return BetwCase::eq_bc;
  if (m.betw_raw(a, b, c)) return BetwCase::abc;
  if (m.betw_raw(b, c, a)) return BetwCase::bca;
  if (m.betw_raw(c, a, b)) return BetwCase::cab;
  throw InconsistencyError("no betweenness among " + a.id() + ", " + b.id() +
                           ", " + c.id() + " on " + q.id() + " (O5 fails)");
}

std::optional<Path> common_path(const Model& m,
                                std::span<const Event> events) {
  if (events.empty()) return std::nullopt;
  const Event& first = events.front();
  const Event* second = nullptr;
  for (const auto& e : events) {
    if (e != first) {
      second = &e;
      break;
    }
  }
  if (second == nullptr) return std::nullopt;
  auto p = m.path_through_raw(first, *second);
  if (!p) return std::nullopt;
  for (const auto& e : events) {
    if (!m.on_path(*p, e)) return std::nullopt;
  }
  return p;
}

}  // namespace schutz
