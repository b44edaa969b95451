#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iwalab/cli.hpp"
#include "iwalab/json_io.hpp"

using namespace iwalab;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "iwalab_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST_CASE("classical values on the command line") {
  auto r = run({"lvalue", "--char", "quad:5", "--m", "-1"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["value"] == Json({{"num", "-2"}, {"den", "5"}}));
  auto b = run({"bernoulli", "--n", "12"});
  REQUIRE(b.code == kExitOk);
  CHECK(b.json()["value"] == Json({{"num", "-691"}, {"den", "2730"}}));
}

TEST_CASE("p-adic values on the command line") {
  auto r = run({"plvalue", "--p", "5", "--char", "teich:5^2", "--s", "-1", "--prec", "20"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.json()["rational"] == "1/3");
  auto odd = run({"plvalue", "--p", "5", "--char", "quad:3", "--s", "-1"});
  CHECK(odd.code == kExitDomain);
  CHECK(odd.json()["error"] == "OddCharacter");
  auto ramified = run({"plvalue", "--p", "5", "--char", "quad:5", "--s", "1/5*x", "--field", "eis:x^2-5"});
  CHECK(ramified.code == kExitOk);
}

TEST_CASE("usage errors exit 1 and print the grammar") {
  auto none = run({});
  CHECK(none.code == kExitUsage);
  CHECK(none.err.find("SUBCOMMAND") != std::string::npos);
  CHECK(run({"lvalue", "--char", "quad:5"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"plvalue", "--p", "6", "--char", "triv", "--s", "-1"}).code == kExitUsage);
  CHECK(run({"plvalue", "--p", "5", "--char", "triv", "--s", "-1", "--prec", "3"}).code == kExitUsage);
}

TEST_CASE("domain errors carry a named kind") {
  auto bad_char = run({"lvalue", "--char", "quad:", "--m", "-1"});
  CHECK(bad_char.code == kExitDomain);
  CHECK(bad_char.json()["error"] == "ParseError");
  auto pole = run({"plvalue", "--p", "5", "--char", "triv", "--s", "1"});
  CHECK(pole.code == kExitDomain);
  CHECK(pole.json()["error"] == "PoleAtOne");
  auto p2 = run({"plvalue", "--p", "2", "--char", "triv", "--s", "-1"});
  CHECK(p2.json()["error"] == "Assumption2Required");
}

TEST_CASE("outputs are byte-identical across runs") {
  std::vector<std::vector<std::string>> commands = {
      {"verify", "--suite", "lambda-oracle", "--count", "20", "--seed", "7"},
      {"iwaseries", "--p", "5", "--char", "quad:5", "--terms", "12"},
      {"eulerchar", "--p", "5", "--char", "quad:5", "--e", "-1", "--S", "2,5"},
  };
  for (const auto& cmd : commands) {
    auto a = run(cmd), b = run(cmd);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
  }
  auto seven = run({"verify", "--suite", "lambda-oracle", "--count", "20", "--seed", "7"}).json();
  CHECK(seven["seed"] == 7);
}

TEST_CASE("a verify run exits nonzero only on failure") {
  auto ok = run({"verify", "--suite", "section6"});
  CHECK(ok.code == kExitOk);
  CHECK(ok.json()["passed"] == true);
  auto path = scratch("bad_sec6.json");
  {
    std::ofstream out(path);
    out << R"({"p": 5, "q": 6, "P": [-5, 1], "chi_order": 4, "e": ["1"], "claims": {"h1_order@1": "25"}})";
  }
  auto bad = run({"verify", "--suite", "section6", "--data", path.string()});
  CHECK(bad.code == kExitVerifyFailed);
  CHECK(bad.json()["passed"] == false);
}

TEST_CASE("cache administration") {
  auto path = scratch("bern.jsonl");
  auto fresh = run({"--cache", path.string(), "cache", "stats"});
  REQUIRE(fresh.code == kExitOk);
  CHECK(fresh.json()["entries"] == 0);
  auto warm = run({"--cache", path.string(), "cache", "prewarm", "--max-n", "60"});
  REQUIRE(warm.code == kExitOk);
  CHECK(warm.json()["entries"] == 61);
  {
    std::ofstream out(path, std::ios::app);
    out << "not json\n";
  }
  auto corrupt = run({"--cache", path.string(), "cache", "stats"});
  CHECK(corrupt.code == kExitDomain);
  CHECK(corrupt.json()["error"] == "CacheCorrupt");
  CHECK(corrupt.json()["message"].get<std::string>().find(":62:") != std::string::npos);
}

TEST_CASE("large integers are emitted as strings") {
  CHECK(integer_json(Integer("123456789012345")).is_number());
  CHECK(integer_json(Integer("1234567890123456")).is_string());
  CHECK(integer_json(Integer("-1234567890123456")).is_string());
}
