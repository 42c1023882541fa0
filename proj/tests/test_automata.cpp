#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "coxshadow/analysis.hpp"
#include "coxshadow/automata.hpp"
#include "coxshadow/oracle.hpp"

using namespace coxshadow;

namespace {

struct Built {
  CoxeterGroup group;
  SmallRoots sigma;
  Dfa bh;
  explicit Built(const char* name)
      : group(parse_system(name)), sigma(small_roots(group)), bh(brink_howlett(group, sigma)) {}
};

// Nerode classes of a finite language given as a word set: two prefixes are
// equivalent iff they have the same set of continuations.
std::size_t nerode_classes(const std::set<Word>& lang) {
  std::set<std::set<Word>> classes;
  for (const auto& w : lang) {
    std::set<Word> tails;
    for (const auto& v : lang) {
      if (v.size() >= w.size() && std::equal(w.begin(), w.end(), v.begin()))
        tails.insert(Word(v.begin() + static_cast<long>(w.size()), v.end()));
    }
    classes.insert(tails);
  }
  return classes.size();
}

std::set<Word> reduced_words(const OracleBall& ob) {
  std::set<Word> out{{}};
  std::vector<std::pair<int, Word>> stack{{0, {}}};
  while (!stack.empty()) {
    auto [id, w] = stack.back();
    stack.pop_back();
    for (int s = 0; s < ob.rank(); ++s) {
      int y = ob.neighbour(id, s);
      if (y < 0 || ob.length(y) != ob.length(id) + 1) continue;
      Word ws = w;
      ws.push_back(s);
      out.insert(ws);
      stack.push_back({y, ws});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("brink-howlett state counts") {
  Built inf("rank 2; m 1 2 = inf");
  CHECK(inf.bh.size() == 3);
  CHECK(inf.bh.meta(0).empty());
  Built a2("A2");
  CHECK(a2.bh.size() == 6);
  CHECK(Built("B2").bh.size() == 8);
  CHECK(Built("Atilde2").bh.size() == 16);
  CHECK(Built("Gtilde2").bh.size() == 49);
}

TEST_CASE("A2 language") {
  Built a2("A2");
  std::set<Word> accepted;
  std::vector<Word> frontier{{}};
  for (int len = 0; len <= 5; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      if (!accepts(a2.bh, w)) continue;
      accepted.insert(w);
      for (int s = 0; s < 2; ++s) {
        Word ws = w;
        ws.push_back(s);
        next.push_back(ws);
      }
    }
    frontier = next;
  }
  std::set<Word> expect{{}, {0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}};
  CHECK(accepted == expect);
  CHECK(reduced_words(build_ball(a2.group.system(), 5)) == expect);
}

TEST_CASE("accepts") {
  for (const char* name : {"rank 2; m 1 2 = inf", "A2", "Gtilde2", "triangle(3,3,4)"}) {
    Built b(name);
    CHECK(accepts(b.bh, {}));
    for (int s = 0; s < b.group.rank(); ++s) CHECK_FALSE(accepts(b.bh, {s, s}));
  }
  Built inf("rank 2; m 1 2 = inf");
  CHECK(accepts(inf.bh, {0, 1, 0, 1, 0, 1, 0, 1, 0, 1}));
  CHECK_FALSE(run(inf.bh, {0, 1, 1}).has_value());
}

TEST_CASE("minimize") {
  Built inf("rank 2; m 1 2 = inf");
  CHECK(minimize(inf.bh).size() == 3);
  Built a2("A2");
  Dfa m = minimize(a2.bh);
  CHECK(m.size() == 6);
  CHECK(static_cast<std::size_t>(m.size()) == nerode_classes(reduced_words(build_ball(a2.group.system(), 4))));
  CHECK(m.kind() == "minimal");
  for (const char* name : {"B2", "Atilde2", "Btilde2", "Gtilde2", "triangle(3,3,4)", "H3"}) {
    CAPTURE(name);
    Built b(name);
    Dfa mn = minimize(b.bh);
    CHECK(mn.size() <= b.bh.size());
    CHECK(minimize(mn) == mn);
    CHECK(equivalent(mn, b.bh));
  }
  CHECK(minimize(Built("Btilde2").bh).size() == 24);
  CHECK(minimize(Built("Gtilde2").bh).size() == 41);
}

TEST_CASE("equivalence") {
  Built a2("A2"), inf("rank 2; m 1 2 = inf"), b2("B2");
  CHECK(equivalent(a2.bh, a2.bh));
  CHECK_FALSE(equivalent(a2.bh, inf.bh));
  CHECK_FALSE(equivalent(a2.bh, b2.bh));
}

TEST_CASE("word growth") {
  Built inf("rank 2; m 1 2 = inf");
  auto g = word_growth(inf.bh, 6);
  CHECK(g == std::vector<BigInt>{1, 2, 2, 2, 2, 2, 2});
  Built a2("A2");
  CHECK(word_growth(a2.bh, 6) == std::vector<BigInt>{1, 2, 2, 2, 0, 0, 0});
  CHECK(word_growth(a2.bh, 0) == std::vector<BigInt>{1});
  CHECK(growth_csv(word_growth(a2.bh, 3)) == "length,count\n0,1\n1,2\n2,2\n3,2\n");

  for (const char* name : {"triangle(3,3,4)", "Atilde2"}) {
    Built b(name);
    OracleBall ob = build_ball(b.group.system(), 7);
    std::vector<BigInt> counts(8, 0);
    for (const auto& w : reduced_words(ob)) counts[w.size()] += 1;
    CHECK(word_growth(b.bh, 7) == counts);
  }
}

TEST_CASE("brink-howlett states are signatures of the read element") {
  Built g("Gtilde2");
  ElementBall ball(g.group, 8);
  for (const auto& e : ball.elements()) {
    Word rev(e.word.rbegin(), e.word.rend());
    auto q = run(g.bh, rev);
    REQUIRE(q.has_value());
    std::vector<int> mine;
    for (const auto& r : g.group.inversion_roots(e))
      if (auto i = g.sigma.index_of(r)) mine.push_back(*i);
    std::sort(mine.begin(), mine.end());
    CHECK(g.bh.meta(*q) == mine);
  }
}

TEST_CASE("shortest words") {
  Built a2("A2");
  auto words = shortest_words(a2.bh);
  REQUIRE(words.size() == 6);
  CHECK(words[0].empty());
  CHECK(words[1] == Word{0});
  CHECK(words[2] == Word{1});
}

TEST_CASE("exports") {
  Built inf("rank 2; m 1 2 = inf");
  const std::string golden =
      "digraph \"brink-howlett\" {\n"
      "  rankdir=LR;\n"
      "  node [shape=circle];\n"
      "  init [shape=point];\n"
      "  init -> q0;\n"
      "  q0 [label=\"{}\"];\n"
      "  q1 [label=\"{1}\"];\n"
      "  q2 [label=\"{0}\"];\n"
      "  q0 -> q1 [label=\"s1\"];\n"
      "  q0 -> q2 [label=\"s2\"];\n"
      "  q1 -> q2 [label=\"s2\"];\n"
      "  q2 -> q1 [label=\"s1\"];\n"
      "}\n";
  CHECK(export_dot(inf.bh) == golden);
  CHECK(export_dot(inf.bh) == export_dot(inf.bh));
  for (const char* name : {"rank 2; m 1 2 = inf", "A2", "Gtilde2"}) {
    Built b(name);
    CHECK(import_json(export_json(b.bh)) == b.bh);
    Dfa m = minimize(b.bh);
    CHECK(import_json(export_json(m)) == m);
  }
  CHECK_THROWS_AS(import_json("{"), ParseError);
  CHECK_THROWS_AS(import_json("{\"states\": 1}"), ParseError);
}

TEST_CASE("cache") {
  auto dir = std::filesystem::temp_directory_path() / "coxshadow-test-cache";
  std::filesystem::remove_all(dir);
  CoxeterSystem sys = parse_system("Atilde2");
  AnalysisOptions opts;
  opts.cache_dir = dir;
  Analysis first(sys, opts);
  CHECK_FALSE(first.from_cache());
  Analysis second(sys, opts);
  CHECK(second.from_cache());
  CHECK(second.bh() == first.bh());
  CHECK(equivalent(second.minimal(), minimize(brink_howlett(second.group(), second.sigma()))));

  AutomatonCache cache(dir);
  CHECK(cache.path_for(sys, "minimal").filename().string() == system_hash(sys) + "-minimal.json");
  CHECK(system_hash(sys).size() == 16);
  CHECK(system_hash(sys) != system_hash(parse_system("Gtilde2")));
  CHECK_FALSE(cache.load(parse_system("Gtilde2"), "minimal").has_value());
  std::filesystem::remove_all(dir);
}

TEST_CASE("state cap") {
  CoxeterGroup g(parse_system("Gtilde2"));
  CHECK_THROWS_AS(brink_howlett(g, small_roots(g), 10), CapExceeded);
}
