#include <doctest.h>

#include <sstream>

#include "cli.hpp"

using namespace schutz;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(FIXTURES_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("chain") {
  const Run r = run({"chain", "--events", "(4,2);(0,0);(2,1)"});
  CHECK(r.code == 0);
  CHECK(r.out == "[(0,0) (2,1) (4,2)]\n");
  const Run j = run({"chain", "--events", "(4,2);(0,0);(2,1)", "--format", "json"});
  CHECK(j.out.find("\"path\": \"line(1/2,0)\"") != std::string::npos);
  CHECK(run({"chain", "--events", "(0,0);(1,0);(0,1)"}).code == 64);
  CHECK(run({"chain", "--events", "(0,0);(1,0);(2,0);(3,0)", "--model",
             fixture("o4_broken.json")})
            .code == 64);
  CHECK(run({"chain", "--events", "a;b;c;d", "--model", fixture("o4_broken.json")}).code == 1);
}

TEST_CASE("unreach") {
  const Run r = run({"unreach", "--path", "0,0", "--event", "(0,1)"});
  CHECK(r.code == 0);
  CHECK(r.out == "t in [-1,1]\nfrom (-1,0) to (1,0)\n");
  const Run g = run({"unreach", "--model", "builtin:galilean11", "--path", "0,0", "--event",
                     "(0,1)"});
  CHECK(g.out.rfind("t in [0,0]", 0) == 0);
  CHECK(run({"unreach", "--path", "0,0", "--event", "(1,0)"}).code == 64);
}

TEST_CASE("segment") {
  const Run r = run({"segment", "--events", "(0,0);(3,0);(1,0);(2,0)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("S3 ((2,0) (3,0))") != std::string::npos);
  CHECK(r.out.find("count 3 pass") != std::string::npos);
}

TEST_CASE("saturate") {
  const Run ok = run({"saturate", "--facts", fixture("facts_chain.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out == "[a b c]\n[a b d]\n[a c d]\n[b c d]\n");
  const Run bad = run({"saturate", "--facts", fixture("facts_contradiction.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("contradiction (Thm1)") != std::string::npos);
  CHECK(run({"saturate", "--facts", fixture("nope.json")}).code == 65);
  CHECK(run({"saturate", "--facts", fixture("three_event.json")}).code == 65);
}

TEST_CASE("checks and exit codes") {
  CHECK(run({"check-axioms", "--axiom", "I1", "--samples", "20"}).code == 0);
  CHECK(run({"check-axioms", "--axiom", "I4", "--samples", "20"}).code == 1);
  CHECK(run({"check-axioms", "--axiom", "C"}).code == 2);
  CHECK(run({"check-axioms", "--axiom", "thm1"}).code == 64);
  CHECK(run({"check-theorems", "--theorem", "thm1", "--samples", "20"}).code == 0);
  CHECK(run({"check-axioms", "--model", fixture("missing.json")}).code == 65);
  CHECK(run({"check-axioms", "--model", fixture("facts_chain.json")}).code == 65);
  CHECK(run({"check-axioms", "--model", "builtin:nothing"}).code == 64);
  CHECK(run({"bogus"}).code == 64);
  CHECK(run({}).code == 64);
  CHECK(run({"check-axioms", "--format", "yaml"}).code == 64);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json output is reproducible") {
  const std::vector<std::string> args{"check-theorems", "--theorem", "thm3", "--theorem",
                                      "thm14", "--samples", "30", "--seed", "4",
                                      "--format", "json"};
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"seed\": 4") != std::string::npos);
}

}  // TEST_SUITE
