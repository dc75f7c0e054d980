#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "swonbt/cli.hpp"
#include "swonbt/error.hpp"

using namespace swonbt;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {
const std::string kScenarios = SWONBT_SCENARIO_DIR;
const std::string kGolden = SWONBT_GOLDEN_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "swonbt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "swonbt-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}
}  // namespace

TEST_CASE("check on the tiger scenario") {
  const std::vector<std::string> files{"--model", kScenarios + "/tiger.model", "--context", kScenarios + "/tiger.ctx",
                                       "--timeline", "w1_2", "--clock", "0"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args{"check"};
    args.insert(args.end(), files.begin(), files.end());
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
  };
  Run weak = with({"--formula", "[W] X a_t"});
  CHECK(weak.code == 0);
  CHECK(weak.out == "true\n");
  Run strong = with({"--formula", "[S] X a_t"});
  CHECK(strong.code == 1);
  CHECK(strong.out == "false\n");
  Run js = with({"--formula", "[S] X a_t", "--format", "json"});
  CHECK(js.code == 1);
  json j = json::parse(js.out);
  CHECK(j["command"] == "check");
  CHECK(j["result"] == false);
}

TEST_CASE("check errors") {
  Run unaccepted = run({"check", "--model", kScenarios + "/priority.model", "--context", kScenarios + "/priority.ctx",
                        "--timeline", "w1_4", "--clock", "0", "--formula", "p", "--format", "json"});
  CHECK(unaccepted.code == 2);
  CHECK(json::parse(unaccepted.out)["error"] == "TimelineNotAccepted");

  Run syntax = run({"check", "--model", kScenarios + "/tiger.model", "--timeline", "w1_1", "--formula", "p &"});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.find("error:") != std::string::npos);

  Run missing = run({"check", "--model", "/nonexistent.model", "--timeline", "w1_1", "--formula", "p"});
  CHECK(missing.code == 2);

  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("decide") {
  Run axiom6 = run({"decide", "--valid", "[S] p -> [W] p"});
  CHECK(axiom6.code == 0);
  CHECK(first_line(axiom6.out) == "VALID");

  Run sat = run({"decide", "--sat", "[W] p & ~p", "--format", "json"});
  CHECK(sat.code == 0);
  json j = json::parse(sat.out);
  CHECK(j["verdict"] == "SAT");
  CHECK(j["witness"].contains("model"));

  Run unsat = run({"decide", "--sat", "[S] p & ~p"});
  CHECK(unsat.code == 1);
  CHECK(first_line(unsat.out) == "UNSAT");
}

TEST_CASE("decide writes replayable counter-models") {
  const std::string prefix = scratch("counter").string();
  Run invalid = run({"decide", "--valid", "p -> [S] p", "--out", prefix});
  CHECK(invalid.code == 1);
  CHECK(first_line(invalid.out) == "INVALID");
  for (const char* ext : {".model", ".ctx", ".point"}) CHECK(fs::exists(prefix + ext));
  Run replay = run({"check", "--model", prefix + ".model", "--context", prefix + ".ctx", "--point", prefix + ".point",
                    "--formula", "p -> [S] p"});
  CHECK(replay.code == 1);
  CHECK(replay.out == "false\n");
}

TEST_CASE("text and JSON verdicts agree") {
  for (const char* f : {"p -> [S] p", "[S] p -> p", "<W> true", "Y false"}) {
    Run text = run({"decide", "--valid", f});
    Run js = run({"decide", "--valid", f, "--format", "json"});
    CHECK(text.code == js.code);
    CHECK(first_line(text.out) == json::parse(js.out)["verdict"]);
  }
}

TEST_CASE("rewrite") {
  CHECK(run({"rewrite", "X [S] p", "--to", "swxxyy"}).out == "[S] X p\n");
  CHECK(run({"rewrite", "[S] [S] p", "--to", "sw1"}).out == "[S] p\n");
  CHECK(run({"rewrite", "--formula", "p", "--to", "sw1"}).out == "p\n");
  CHECK(run({"rewrite", "p", "--to", "cnf"}).code == 2);
}

TEST_CASE("prove") {
  Run ok = run({"prove", kGolden + "/strong_distributes_over_and.proof"});
  CHECK(ok.code == 0);
  CHECK(ok.out.rfind("OK", 0) == 0);

  const fs::path empty = scratch("empty.proof");
  std::ofstream(empty) << "";
  CHECK(run({"prove", empty.string()}).code == 0);

  const fs::path broken = scratch("broken.proof");
  std::ofstream(broken) << "1. p -> p ; taut\n2. [S] (p -> q) ; genS 1\n";
  Run bad = run({"prove", broken.string(), "--format", "json"});
  CHECK(bad.code == 1);
  json j = json::parse(bad.out);
  CHECK(j["line"] == 2);
  CHECK(j["error"] == "RuleMismatch");
}

TEST_CASE("oracle") {
  Run sat = run({"oracle", "[W] p & ~p", "--depth", "1", "--leaves", "2", "--clocks", "1"});
  CHECK(sat.code == 0);
  CHECK(first_line(sat.out).rfind("SAT", 0) == 0);
  CHECK(run({"oracle", "[S] p & <S> ~p"}).code == 1);
}

TEST_CASE("point files") {
  PointSpec p = parse_point("at timeline w1_2 clock 3\n");
  CHECK(p.timeline == "w1_2");
  CHECK(p.clock == 3);
  CHECK(write_point(p) == "at timeline w1_2 clock 3");
  CHECK_THROWS_AS(parse_point("timeline w1_2 clock 3"), PointError);
  CHECK_THROWS_AS(parse_point("at timeline w1_2 clock -1"), PointError);
}
