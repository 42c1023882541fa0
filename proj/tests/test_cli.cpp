#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(COXSHADOW_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "coxshadow-cli-test";

}  // namespace

TEST_CASE("info") {
  Run r = cli("info --system Gtilde2");
  CHECK(r.code == 0);
  CHECK(r.out.find("rank       3") != std::string::npos);
  CHECK(r.out.find("m12=6 m13=2 m23=3") != std::string::npos);
  Run a2 = cli("info -s A2");
  CHECK(a2.out.find("degree 1") != std::string::npos);
  CHECK(cli("info -s 'rank 2; m 1 2 = 1'").code == 2);
  CHECK(cli("info").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("frobnicate -s A2").code == 2);
}

TEST_CASE("verify exit codes") {
  std::filesystem::create_directories(tmp);
  auto report = tmp / "report.json";
  Run r = cli("verify --system 'rank 2; m 1 2 = inf' --radius 8 --suite all --report " + report.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["status"] == "pass");
  CHECK(cli("verify -s A2 --radius 6 --suite shadow --jobs 2").code == 0);
  CHECK(cli("verify -s A2 --suite nope").code == 2);
  // Hitting the ball cap is inconclusive, not a failure.
  CHECK(cli("verify -s 'triangle(3,3,4)' --radius 12 --suite automata --max-ball 100").code == 3);
}

TEST_CASE("shi parts") {
  std::filesystem::create_directories(tmp);
  auto out = tmp / "parts.json";
  Run r = cli("shi --system Gtilde2 --ball 12 --out " + out.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["parts"].size() == 49);
  Run csv = cli("shi -s Atilde2 --ball 6 --format csv");
  CHECK(csv.out.rfind("signature,minimum,length,size\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 17);
}

TEST_CASE("automaton and cones") {
  std::filesystem::create_directories(tmp);
  auto dot = tmp / "a2.dot";
  CHECK(cli("automaton --system A2 --kind minimal --dot " + dot.string()).code == 0);
  std::string text = slurp(dot);
  std::size_t states = 0;
  for (std::size_t p = text.find("[label=\"{"); p != std::string::npos; p = text.find("[label=\"{", p + 1)) ++states;
  CHECK(states == 6);
  Run summary = cli("automaton -s Gtilde2 --kind bh");
  CHECK(summary.out == "brink-howlett: 49 states\n");
  Run js = cli("automaton -s 'rank 2; m 1 2 = inf' --json -");
  auto j = nlohmann::json::parse(js.out);
  CHECK(j["states"] == 3);

  Run cones = cli("cones -s Gtilde2 --ball 10");
  auto c = nlohmann::json::parse(cones.out);
  CHECK(c["states"].size() == 41);
  Run gdot = cli("cones -s 'rank 2; m 1 2 = inf' --ball 4 --dot - --format csv");
  CHECK(gdot.out.find("label=\"s1\"];") != std::string::npos);
}

TEST_CASE("roots, growth, export") {
  Run roots = cli("roots -s Gtilde2");
  auto j = nlohmann::json::parse(roots.out);
  CHECK(j["roots"].size() == 12);
  CHECK(j["field"]["minimal_polynomial"] == "c^2 - 3");
  // canonical order: depth, then coordinates lexicographically
  CHECK(j["roots"][0]["coordinates"] == nlohmann::json({"0", "0", "1"}));
  CHECK(j["roots"][2]["coordinates"] == nlohmann::json({"1", "0", "0"}));
  Run csv = cli("roots -s A2 --format csv");
  CHECK(csv.out.rfind("index,depth,a1,a2\n", 0) == 0);

  Run g = cli("growth -s 'rank 2; m 1 2 = inf' -n 4");
  CHECK(g.out == "length,count\n0,1\n1,2\n2,2\n3,2\n4,2\n");

  Run e = cli("export -s A2 --ball 3");
  auto ej = nlohmann::json::parse(e.out);
  CHECK(ej["elements"].size() == 6);
  CHECK(ej["elements"][5]["length"] == 3);
  CHECK(ej["elements"][5]["inversions"].size() == 3);
}

TEST_CASE("render") {
  std::filesystem::create_directories(tmp);
  auto svg = tmp / "g2.svg";
  Run r = cli("render -s Gtilde2 --ball 6 --coloring cone --out " + svg.string());
  CHECK(r.code == 0);
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
  CHECK(cli("render -s A2 --ball 4").code == 2);
}

TEST_CASE("cache dir") {
  auto dir = tmp / "cache";
  std::filesystem::remove_all(dir);
  CHECK(cli("automaton -s Atilde2 --cache-dir " + dir.string()).code == 0);
  CHECK(std::distance(std::filesystem::directory_iterator(dir), {}) >= 1);
  Run info = cli("info -s Atilde2 --cache-dir " + dir.string());
  CHECK(info.out.find("small roots 6") != std::string::npos);
  std::filesystem::remove_all(tmp);
}
