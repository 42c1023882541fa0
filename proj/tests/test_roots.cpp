#include <doctest.h>

#include <algorithm>

#include "coxshadow/oracle.hpp"
#include "coxshadow/roots.hpp"

using namespace coxshadow;

namespace {

CoxeterGroup group_of(const char* text) { return CoxeterGroup(parse_system(text)); }

// Positive roots of the finite type by closure under simple reflections.
std::size_t finite_positive_roots(const CoxeterGroup& g) {
  std::vector<RootVec> seen;
  std::vector<RootVec> todo;
  for (int s = 0; s < g.rank(); ++s) todo.push_back(g.simple_root(s));
  while (!todo.empty()) {
    RootVec r = todo.back();
    todo.pop_back();
    if (!g.is_positive(r) || std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
    seen.push_back(r);
    for (int s = 0; s < g.rank(); ++s) todo.push_back(g.reflect(s, r));
  }
  return seen.size();
}

}  // namespace

TEST_CASE("reflect") {
  auto inf = group_of("rank 3; m 1 2 = inf");
  const Field& f = inf.field();
  RootVec as = inf.simple_root(0), at = inf.simple_root(1), au = inf.simple_root(2);
  CHECK(inf.reflect(0, as) == inf.negate(as));
  CHECK(inf.reflect(0, au) == au);
  CHECK(inf.reflect(0, at) == RootVec{f.from_int(2), f.one(), f.zero()});
  RootVec x = inf.reflect(1, inf.reflect(0, at));
  CHECK(inf.reflect(0, inf.reflect(0, x)) == x);
  CHECK(inf.inner(inf.reflect(0, x), inf.reflect(0, at)) == inf.inner(x, at));
}

TEST_CASE("dominance") {
  auto inf = group_of("rank 2; m 1 2 = inf");
  RootVec as = inf.simple_root(0), at = inf.simple_root(1);
  RootVec sat = inf.reflect(0, at);
  CHECK_FALSE(dominates(inf, as, as));
  // s.a_t dominates a_s, not a_t: the walls of a_t and s.a_t lie on either side of id.
  CHECK(dominates(inf, sat, as));
  CHECK_FALSE(dominates(inf, sat, at));
  CHECK_FALSE(dominates(inf, as, sat));

  auto a2 = group_of("A2");
  CHECK_FALSE(dominates(a2, a2.reflect(0, a2.simple_root(1)), a2.simple_root(1)));
}

TEST_CASE("small root counts") {
  auto inf = group_of("rank 2; m 1 2 = inf");
  SmallRoots si = small_roots(inf);
  CHECK(si.size() == 2);
  CHECK(elementary_walls(inf, si).size() == 2);

  auto a2 = group_of("A2");
  CHECK(small_roots(a2).size() == 3);
  CHECK(small_roots(group_of("B2")).size() == 4);

  auto g2 = group_of("Gtilde2");
  SmallRoots sg = small_roots(g2);
  CHECK(sg.size() == 12);
  CHECK(elementary_walls(g2, sg).size() == 12);
}

TEST_CASE("affine small roots are twice the finite positive roots") {
  CHECK(small_roots(group_of("Atilde2")).size() == 2 * finite_positive_roots(group_of("A2")));
  CHECK(small_roots(group_of("Btilde2")).size() == 2 * finite_positive_roots(group_of("B2")));
  CHECK(small_roots(group_of("Gtilde2")).size() == 2 * finite_positive_roots(group_of("G2")));
}

TEST_CASE("small roots: basic invariants") {
  for (const char* name : {"rank 2; m 1 2 = inf", "A2", "H3", "Atilde2", "Gtilde2", "triangle(3,3,4)",
                           "rank 3; m 1 2 = 2; m 1 3 = inf; m 2 3 = 5"}) {
    CAPTURE(name);
    auto g = group_of(name);
    SmallRoots sigma = small_roots(g);
    for (int s = 0; s < g.rank(); ++s) CHECK(sigma.index_of(g.simple_root(s)).has_value());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      CHECK(g.inner(sigma[i], sigma[i]) == g.field().one());
      CHECK(g.is_positive(sigma[i]));
      for (std::size_t j = 0; j < sigma.size(); ++j) CHECK_FALSE(dominates(g, sigma[j], sigma[i]));
      if (i > 0) CHECK(sigma.depth(i - 1) <= sigma.depth(i));
    }
  }
}

TEST_CASE("small roots agree with the oracle") {
  for (const char* name : {"rank 2; m 1 2 = inf", "A2", "Atilde2", "Gtilde2", "triangle(3,3,4)"}) {
    CAPTURE(name);
    auto g = group_of(name);
    SmallRoots sigma = small_roots(g);
    int depth = 1;
    for (std::size_t i = 0; i < sigma.size(); ++i) depth = std::max(depth, sigma.depth(i));
    auto theirs = oracle_small_roots(g.system(), depth + 1);
    CHECK(theirs.size() == sigma.size());
    for (const auto& r : theirs) CHECK(sigma.index_of(r).has_value());
  }
}

TEST_CASE("dominance agrees with the oracle up to depth 4") {
  for (const char* name : {"rank 2; m 1 2 = inf", "Atilde2", "triangle(3,3,4)"}) {
    CAPTURE(name);
    auto g = group_of(name);
    OracleBall ob = build_ball(g.system(), 14);
    auto depths = oracle_wall_depths(ob);
    std::vector<int> walls;
    for (std::size_t w = 0; w < ob.wall_count(); ++w)
      if (depths[w] <= 4) walls.push_back(static_cast<int>(w));
    for (int b : walls)
      for (int a : walls)
        CHECK(dominates(g, ob.wall_root(b), ob.wall_root(a)) == oracle_dominates(ob, b, a));
  }
}

TEST_CASE("reflection table") {
  auto inf = group_of("rank 2; m 1 2 = inf");
  SmallRoots si = small_roots(inf);
  int as = *si.index_of(inf.simple_root(0)), at = *si.index_of(inf.simple_root(1));
  CHECK(si.table()[as][0].kind == Transition::Kind::NegativeSimple);
  CHECK(si.table()[at][0].kind == Transition::Kind::NotSmall);

  auto a2 = group_of("A2");
  SmallRoots sa = small_roots(a2);
  int bt = *sa.index_of(a2.simple_root(1));
  auto tr = sa.table()[bt][0];
  REQUIRE(tr.kind == Transition::Kind::SmallRoot);
  CHECK(sa[tr.target] == a2.reflect(0, a2.simple_root(1)));

  for (const char* name : {"Gtilde2", "triangle(3,3,4)", "H3"}) {
    auto g = group_of(name);
    SmallRoots sg = small_roots(g);
    for (std::size_t a = 0; a < sg.size(); ++a) {
      for (int s = 0; s < g.rank(); ++s) {
        const Transition& t = sg.table()[a][s];
        CHECK((t.kind == Transition::Kind::NegativeSimple) == (sg[a] == g.simple_root(s)));
        if (t.kind == Transition::Kind::SmallRoot) {
          CHECK(sg[t.target] == g.reflect(s, sg[a]));
          CHECK(sg.table()[t.target][s].kind == Transition::Kind::SmallRoot);
          CHECK(sg.table()[t.target][s].target == static_cast<int>(a));
        }
      }
    }
    CHECK(reflection_table(g, sg.roots()) == sg.table());
  }
}

TEST_CASE("small root cap") {
  CHECK_THROWS_AS(small_roots(group_of("Gtilde2"), 5), CapExceeded);
}
