#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "support.hpp"

using namespace bratspec;
using bratspec::testing::session;

namespace {

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

RunRequest request(Command c, int depth, OutputFormat f = OutputFormat::csv) {
  RunRequest r;
  r.command = c;
  r.depth = depth;
  r.format = f;
  r.nmax = 30;
  return r;
}

}  // namespace

TEST_CASE("Thue-Morse spectrum rows") {
  auto s = session("thue-morse", 1.0, "rational");
  auto rows = data_rows(run_command(s, request(Command::spectrum, 3)).text);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "label,generation,path,eigenvalue_exact,eigenvalue,multiplicity");
  CHECK(rows[1] == "zero,0,o,0,0,1");
  CHECK(rows[2] == "root,0,o,-4,-4,1");
  for (int i = 3; i <= 4; ++i) CHECK(rows[i].find(",-18,-18,1") != std::string::npos);
  for (int i = 5; i <= 8; ++i) CHECK(rows[i].find(",-74,-74,1") != std::string::npos);
}

TEST_CASE("output does not depend on the thread count") {
  auto s = session("penrose");
  RunRequest one = request(Command::spectrum, 6), many = one;
  many.threads = 6;
  CHECK(run_command(s, one).text == run_command(s, many).text);
  one.format = many.format = OutputFormat::json;
  CHECK(run_command(s, one).text == run_command(s, many).text);
}

TEST_CASE("repeated runs are byte-identical") {
  auto s = session("fibonacci");
  for (Command c : {Command::spectrum, Command::verify, Command::zeta, Command::weyl, Command::strip}) {
    auto r = request(c, 6);
    CHECK(run_command(s, r).text == run_command(s, r).text);
  }
}

TEST_CASE("JSON output round-trips") {
  for (const std::string name : {"fibonacci", "penrose", "thue-morse"}) {
    auto s = session(name);
    for (Command c : {Command::spectrum, Command::dense, Command::verify, Command::zeta, Command::weyl, Command::heat,
                      Command::ck_check, Command::complexity}) {
      if (c == Command::complexity && name == "penrose") continue;
      std::string text = run_command(s, request(c, 4, OutputFormat::json)).text;
      auto doc = nlohmann::json::parse(text);
      CHECK(doc.dump(2) + "\n" == text);
      CHECK(doc["command"] == command_name(c));
    }
  }
  std::string presets = presets_report(OutputFormat::json);
  CHECK(nlohmann::json::parse(presets).dump(2) + "\n" == presets);
}

TEST_CASE("verify output carries notes") {
  auto s = session("fibonacci");
  RunResult r = run_command(s, request(Command::verify, 4));
  CHECK(r.passed);
  CHECK(r.text.find("# NOTES") != std::string::npos);
  CHECK(r.text.find("sign") != std::string::npos);
  CHECK(r.text.find("# result: PASS") != std::string::npos);
}

TEST_CASE("depth validation") {
  auto s = session("fibonacci");
  for (Command c : {Command::spectrum, Command::dense, Command::verify, Command::zeta, Command::strip})
    CHECK_THROWS_AS(run_command(s, request(c, 0)), Error);
  RunRequest r = request(Command::complexity, 0);
  r.nmax = 0;
  CHECK_THROWS_AS(run_command(s, r), Error);
  auto p = session("penrose");
  CHECK_THROWS_AS(run_command(p, request(Command::complexity, 0)), Error);
}

TEST_CASE("command names") {
  for (Command c : {Command::presets, Command::spectrum, Command::dense, Command::verify, Command::zeta, Command::weyl,
                    Command::heat, Command::strip, Command::ck_check, Command::complexity})
    CHECK(parse_command(command_name(c)) == c);
  CHECK_FALSE(parse_command("plot"));
}

TEST_CASE("fallback is announced") {
  auto s = session("fibonacci", 1.5, "quadratic:5");
  std::string text = run_command(s, request(Command::zeta, 3)).text;
  CHECK(text.find("# note: quadratic:5") != std::string::npos);
}
