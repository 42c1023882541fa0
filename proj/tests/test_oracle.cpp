#include <doctest.h>

#include "coxshadow/oracle.hpp"

using namespace coxshadow;

namespace {

CoxeterSystem sys(const char* text) { return parse_system(text); }

}  // namespace

TEST_CASE("ball sizes") {
  CHECK(build_ball(sys("Gtilde2"), 0).size() == 1);
  CHECK(build_ball(sys("rank 2; m 1 2 = inf"), 3).size() == 7);
  CHECK(build_ball(sys("A2"), 10).size() == 6);
  CHECK(build_ball(sys("B2"), 10).size() == 8);
  CHECK(build_ball(sys("H3"), 20).size() == 120);
  std::size_t prev = 0;
  for (int r = 0; r <= 6; ++r) {
    std::size_t n = build_ball(sys("triangle(3,3,4)"), r).size();
    CHECK(n > prev);
    prev = n;
  }
  CHECK_THROWS_AS(build_ball(sys("triangle(3,3,4)"), 20, 100), CapExceeded);
}

TEST_CASE("reducedness") {
  OracleBall a2 = build_ball(sys("A2"), 4);
  CHECK_FALSE(oracle_reduced(a2, {0, 0}));
  CHECK(oracle_reduced(a2, {0, 1, 0}));
  CHECK_FALSE(oracle_reduced(a2, {0, 1, 0, 1}));
  CHECK(oracle_reduced(a2, {}));
  OracleBall inf = build_ball(sys("rank 2; m 1 2 = inf"), 4);
  CHECK(oracle_reduced(inf, {0, 1, 0, 1}));
  CHECK_THROWS_AS(oracle_reduced(inf, {0, 1, 0, 1, 0}), InconclusiveError);
  CHECK(oracle_length(inf, inf.matrix(inf.find_word({1, 0, 1}))) == 3);
}

TEST_CASE("ball walls and inversions") {
  OracleBall ob = build_ball(sys("Atilde2"), 6);
  for (std::size_t id = 0; id < ob.size(); ++id)
    CHECK(ob.inversions(static_cast<int>(id)).count() == static_cast<std::size_t>(ob.length(static_cast<int>(id))));
  for (std::size_t w = 0; w < ob.wall_count(); ++w) {
    CHECK(ob.wall_of_reflection(ob.wall_reflection(static_cast<int>(w))) == static_cast<int>(w));
    CHECK(ob.inner2(ob.wall_root(static_cast<int>(w)), ob.wall_root(static_cast<int>(w))) == ob.field().from_int(2));
  }
}

TEST_CASE("cone partition") {
  OracleBall inf = build_ball(sys("rank 2; m 1 2 = inf"), 10);
  ConePartition cp = oracle_cone_partition(inf, 5);
  CHECK(cp.classes == 3);
  CHECK(cp.stable);
  OracleBall a2 = build_ball(sys("A2"), 6);
  ConePartition ca = oracle_cone_partition(a2, 3);
  CHECK(ca.classes == 6);
  CHECK(ca.stable);
  OracleBall at = build_ball(sys("Atilde2"), 15);
  ConePartition ct = oracle_cone_partition(at, 5);
  CHECK(ct.stable);
  CHECK(ct.classes == 16);
}

TEST_CASE("part minimum") {
  OracleBall inf = build_ball(sys("rank 2; m 1 2 = inf"), 8);
  CHECK(oracle_part_minimum(inf, {5}).minimum == 5);
  std::vector<int> part;
  for (const Word& w : std::vector<Word>{{0}, {0, 1}, {0, 1, 0}, {0, 1, 0, 1}}) part.push_back(inf.find_word(w));
  auto pm = oracle_part_minimum(inf, part);
  REQUIRE(pm.unique());
  CHECK(inf.word(*pm.minimum) == Word{0});
  auto bad = oracle_part_minimum(inf, {inf.find_word({0}), inf.find_word({1})});
  CHECK_FALSE(bad.unique());
  CHECK(bad.witnesses.first >= 0);
}

TEST_CASE("oracle small roots") {
  CHECK(oracle_small_roots(sys("rank 2; m 1 2 = inf"), 4).size() == 2);
  CHECK(oracle_small_roots(sys("A2"), 3).size() == 3);
  CHECK(oracle_small_roots(sys("Gtilde2"), 8).size() == 12);
}

TEST_CASE("wall intersection") {
  OracleBall a2 = build_ball(sys("A2"), 3);
  CHECK(oracle_walls_meet(a2, a2.edge_wall(0, 0), a2.edge_wall(0, 1)));
  OracleBall inf = build_ball(sys("rank 2; m 1 2 = inf"), 3);
  CHECK_FALSE(oracle_walls_meet(inf, inf.edge_wall(0, 0), inf.edge_wall(0, 1)));
}

TEST_CASE("bipodality") {
  Report commuting = verify_bipodality(sys("rank 2; m 1 2 = 2"), 6);
  CHECK(commuting.find("bipodality")->status == CheckStatus::Vacuous);
  CHECK(commuting.ok());
  Report a2 = verify_bipodality(sys("A2"), 6);
  CHECK(a2.find("bipodality")->status == CheckStatus::Vacuous);
  Report g2 = verify_bipodality(sys("Gtilde2"), 10);
  INFO(g2.to_text());
  CHECK(g2.find("bipodality")->status == CheckStatus::Pass);
}
