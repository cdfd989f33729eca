#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "schutz/chains.hpp"
#include "schutz/errors.hpp"
#include "schutz/harness.hpp"
#include "schutz/models.hpp"
#include "schutz/regions.hpp"
#include "schutz/unreachable.hpp"

namespace schutz {

namespace {

constexpr int kUsage = 64;
constexpr int kBadInput = 65;

struct Options {
  std::string model = "builtin:minkowski11";
  std::uint64_t seed = 0;
  std::size_t samples = 500;
  std::string format = "text";
  std::int64_t timeout_ms = 5000;
  std::vector<std::string> ids;
  std::string events;
  std::string path;
  std::string event;
  std::string facts;
};

// Errors raised while reading user-named files map to 65.
struct FileError : Error {
  using Error::Error;
};

std::unique_ptr<Model> load_model(const std::string& spec) {
  try {
    return open_model(spec);
  } catch (const ParseError& e) {
    throw FileError(e.what());
  } catch (const ValidationError& e) {
    throw FileError(e.what());
  } catch (const InputError& e) {
    if (spec.rfind("builtin:", 0) == 0) throw;
    throw FileError(e.what());
  }
}

int exit_for(const std::vector<Status>& st) {
  if (std::count(st.begin(), st.end(), Status::fail)) return 1;
  if (std::count(st.begin(), st.end(), Status::unknown)) return 2;
  return 0;
}

std::vector<Event> events_arg(const Model& m, const std::string& list) {
  std::vector<Event> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    out.push_back(resolve_event(m, item));
  }
  if (out.empty()) throw ParseError("empty event list");
  return out;
}

nlohmann::json ids_json(const std::vector<Event>& v) {
  auto j = nlohmann::json::array();
  for (const auto& e : v) j.push_back(e.id());
  return j;
}

int cmd_check(const Options& o, bool axioms, std::ostream& out) {
  const auto m = load_model(o.model);
  std::optional<std::vector<std::string>> sel;
  if (!o.ids.empty()) {
    sel = o.ids;
  } else {
    sel.emplace();
    for (const auto& s : registry()) {
      if ((s.kind == CheckKind::axiom) == axioms) sel->push_back(s.id);
    }
  }
  for (const auto& id : *sel) {
    const auto* spec = find_check(id);
    if (!spec || (spec->kind == CheckKind::axiom) != axioms) {
      throw InputError("unknown " + std::string(axioms ? "axiom" : "theorem") +
                       " id '" + id + "'");
    }
  }
  SuiteOptions so;
  so.budget.seed = o.seed;
  so.budget.samples = o.samples;
  so.timeout = std::chrono::milliseconds(o.timeout_ms);
  const Report r = run_suite(*m, sel, so);
  out << render_report(r, o.format == "json" ? ReportFormat::json : ReportFormat::text);
  std::vector<Status> st;
  for (const auto& c : r.checks) st.push_back(c.verdict.status);
  return exit_for(st);
}

int cmd_chain(const Options& o, std::ostream& out) {
  const auto m = load_model(o.model);
  const auto xs = events_arg(*m, o.events);
  Chain c;
  try {
    c = xs.size() == 2 ? brute_force_chain(*m, xs) : chain_from_set(*m, xs);
  } catch (const InconsistencyError& e) {
    if (o.format == "json") {
      out << nlohmann::json{{"error", e.what()}}.dump(2) << "\n";
    } else {
      out << "no chain: " << e.what() << "\n";
    }
    return 1;
  }
  if (o.format == "json") {
    nlohmann::json j{{"chain", ids_json(c.seq)}};
    if (c.path) j["path"] = c.path->id();
    out << j.dump(2) << "\n";
  } else {
    out << c.str() << "\n";
  }
  return 0;
}

int cmd_segment(const Options& o, std::ostream& out) {
  const auto m = load_model(o.model);
  const auto xs = events_arg(*m, o.events);
  if (xs.size() < 2) throw InputError("segment needs at least two events");
  const auto q = common_path(*m, xs);
  if (!q) throw InputError("events are not on one path");
  const Chain c = xs.size() == 2 ? brute_force_chain(*m, xs) : chain_from_set(*m, xs);
  const Segmentation seg = segmentation(*m, *q, c);
  Budget b;
  b.seed = o.seed;
  b.samples = o.samples;
  const Verdict cover = verify_segmentation(*m, seg, b);
  const SegmentCount count = segment_count(*m, seg);
  auto seg_str = [](const Event& a, const Event& e) {
    return "(" + a.id() + " " + e.id() + ")";
  };
  if (o.format == "json") {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : seg.segments) segs.push_back({s.a.id(), s.b.id()});
    nlohmann::json j{
        {"path", q->id()},
        {"chain", ids_json(c.seq)},
        {"segments", segs},
        {"p1", {seg.p1.a.id(), seg.p1.b.id()}},
        {"p2", {seg.p2.a.id(), seg.p2.b.id()}},
        {"cover", {{"verdict", to_string(cover.status)},
                   {"samples", cover.samples},
                   {"reason", cover.reason}}},
        {"count", {{"value", count.count},
                   {"verdict", to_string(count.verdict.status)},
                   {"reason", count.verdict.reason}}}};
    out << j.dump(2) << "\n";
  } else {
    out << "path " << q->id() << "\nchain " << c.str() << "\n";
    for (std::size_t i = 0; i < seg.segments.size(); ++i) {
      out << "S" << i + 1 << " " << seg_str(seg.segments[i].a, seg.segments[i].b) << "\n";
    }
    out << "P1 beyond " << seg.p1.b.id() << " from " << seg.p1.a.id() << "\n";
    out << "P2 beyond " << seg.p2.b.id() << " from " << seg.p2.a.id() << "\n";
    out << "cover " << to_string(cover.status) << " (" << cover.samples << " probes)";
    if (!cover.reason.empty()) out << " " << cover.reason;
    out << "\ncount " << count.count << " " << to_string(count.verdict.status);
    if (!count.verdict.reason.empty()) out << " " << count.verdict.reason;
    out << "\n";
  }
  return exit_for({cover.status, count.verdict.status});
}

int cmd_unreach(const Options& o, std::ostream& out) {
  const auto m = load_model(o.model);
  const Path q = as_line_model(*m) ? Path::line(parse_line(o.path))
                                   : resolve_path(*m, o.path);
  if (!m->is_path(q)) throw InputError(q.id() + " is not a path of the model");
  const Event b = resolve_event(*m, o.event);
  const UnreachSet u = unreach_from(*m, q, b);
  if (o.format == "json") {
    nlohmann::json j{{"path", q.id()}, {"event", b.id()}};
    if (u.interval) {
      const auto& iv = *u.interval;
      j["empty"] = iv.empty;
      if (!iv.empty) {
        j["lo"] = iv.lo.str();
        j["hi"] = iv.hi.str();
        j["lo_closed"] = iv.lo_closed;
        j["hi_closed"] = iv.hi_closed;
      }
      j["interval"] = iv.str();
    } else {
      j["members"] = ids_json(u.members);
    }
    out << j.dump(2) << "\n";
  } else {
    out << u.str() << "\n";
    if (u.interval && !u.interval->empty) {
      const Line& l = q.as_line();
      out << "from " << LineModel::point_on(l, u.interval->lo).id() << " to "
          << LineModel::point_on(l, u.interval->hi).id() << "\n";
    }
  }
  return 0;
}

int cmd_saturate(const Options& o, std::ostream& out) {
  std::ifstream in(o.facts);
  if (!in) throw FileError("cannot read '" + o.facts + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  FactBase fb;
  try {
    fb = saturate(load_fact_base(ss.str()));
  } catch (const ParseError& e) {
    throw FileError(e.what());
  }
  auto tstr = [](const Triple& t) {
    return "[" + t.a.id() + " " + t.b.id() + " " + t.c.id() + "]";
  };
  if (o.format == "json") {
    nlohmann::json facts = nlohmann::json::array();
    for (const auto& t : fb.triples) facts.push_back({t.a.id(), t.b.id(), t.c.id()});
    nlohmann::json j{{"consistent", fb.consistent()}, {"facts", facts}};
    if (fb.contradiction) {
      const auto& c = *fb.contradiction;
      j["contradiction"] = {{"rule", c.rule}, {"first", tstr(c.first)}};
      if (c.second) j["contradiction"]["second"] = tstr(*c.second);
    }
    out << j.dump(2) << "\n";
  } else if (fb.contradiction) {
    const auto& c = *fb.contradiction;
    out << "contradiction (" << c.rule << "): " << tstr(c.first);
    if (c.second) out << " vs " << tstr(*c.second);
    out << "\n";
  } else {
    for (const auto& t : fb.triples) out << tstr(t) << "\n";
  }
  return fb.consistent() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Executable checks for an axiom system of Minkowski spacetime"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--model", o.model, "builtin:minkowski11, builtin:galilean11 or a model file");
    s->add_option("--seed", o.seed, "master seed");
    s->add_option("--samples", o.samples, "instances per check")->check(CLI::PositiveNumber);
    s->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto* ax = app.add_subcommand("check-axioms", "run axiom checks");
  common(ax);
  ax->add_option("--axiom", o.ids, "axiom id (repeatable)");
  ax->add_option("--timeout-ms", o.timeout_ms, "per-check time limit");
  auto* th = app.add_subcommand("check-theorems", "run theorem and lemma checks");
  common(th);
  th->add_option("--theorem", o.ids, "theorem id (repeatable)");
  th->add_option("--timeout-ms", o.timeout_ms, "per-check time limit");
  auto* ch = app.add_subcommand("chain", "order a co-path event set");
  common(ch);
  ch->add_option("--events", o.events, "\"(t,x);(t,x);...\"")->required();
  auto* sg = app.add_subcommand("segment", "segment a path by a chain");
  common(sg);
  sg->add_option("--events", o.events, "\"(t,x);(t,x);...\"")->required();
  auto* un = app.add_subcommand("unreach", "unreachable subset of a path");
  common(un);
  un->add_option("--path", o.path, "\"v,x0\"")->required();
  un->add_option("--event", o.event, "\"(t,x)\"")->required();
  auto* sa = app.add_subcommand("saturate", "close a fact base");
  common(sa);
  sa->add_option("--facts", o.facts, "fact-base file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (ax->parsed()) return cmd_check(o, true, out);
    if (th->parsed()) return cmd_check(o, false, out);
    if (ch->parsed()) return cmd_chain(o, out);
    if (sg->parsed()) return cmd_segment(o, out);
    if (un->parsed()) return cmd_unreach(o, out);
    if (sa->parsed()) return cmd_saturate(o, out);
  } catch (const FileError& e) {
    err << "input file: " << e.what() << "\n";
    return kBadInput;
  } catch (const InconsistencyError& e) {
    err << "inconsistent model: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace schutz
