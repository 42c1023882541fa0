#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "coxshadow/group.hpp"
#include "coxshadow/oracle.hpp"

using namespace coxshadow;

namespace {

CoxeterGroup dihedral(const char* m) { return CoxeterGroup(parse_system(std::string("rank 2; m 1 2 = ") + m)); }

Word w(std::initializer_list<int> letters) { return Word(letters); }

}  // namespace

TEST_CASE("parse presets and text") {
  auto inf = parse_system("rank 2; m 1 2 = inf");
  CHECK(inf.rank() == 2);
  CHECK(inf.infinite_bond(0, 1));

  auto g2 = parse_system("Gtilde2");
  CHECK(g2.rank() == 3);
  CHECK(g2.bond(0, 1) == 6);
  CHECK(g2.bond(1, 2) == 3);
  CHECK(g2.bond(0, 2) == 2);

  auto t = parse_system("triangle(3,3,4)");
  CHECK(t.bond(0, 1) == 3);
  CHECK(t.bond(1, 2) == 3);
  CHECK(t.bond(0, 2) == 4);

  auto multi = parse_system("rank 3\nm 1 2 = 5\n");
  CHECK(multi.bond(0, 1) == 5);
  CHECK(multi.bond(1, 2) == 2);
  CHECK(parse_system(multi.canonical_text()) == multi);
}

TEST_CASE("parse rejects bad input") {
  CHECK_THROWS_AS(parse_system("rank 2; m 1 2 = 1"), ParseError);
  CHECK_THROWS_AS(parse_system("rank 2; m 1 3 = 3"), ParseError);
  CHECK_THROWS_AS(parse_system("rank two"), ParseError);
  CHECK_THROWS_AS(parse_system(""), ParseError);
  CHECK_THROWS_AS(parse_system("Xtilde9"), ParseError);
  CHECK_THROWS_AS(CoxeterSystem(2, {{1, 3}, {4, 1}}), ParseError);
}

TEST_CASE("words") {
  CHECK(format_word({}) == "e");
  CHECK(format_word(w({0, 1, 0})) == "s1 s2 s1");
  CHECK(parse_word("s1 s2 s1", 2) == w({0, 1, 0}));
  CHECK(parse_word("e", 2).empty());
  CHECK_THROWS(parse_word("s3", 2));
}

TEST_CASE("field degrees") {
  CHECK(Field(2).degree() == 1);
  CHECK(Field(3).degree() == 1);
  CHECK(Field(4).degree() == 2);
  CHECK(Field(5).degree() == 2);
  CHECK(Field(6).degree() == 2);
  CHECK(Field(12).degree() == 4);
  CHECK(Field(15).degree() == 4);
  CHECK(Field(6).minimal_polynomial_string() == "c^2 - 3");
  CHECK(Field::conductor_for(parse_system("triangle(3,3,4)")) == 12);
  CHECK(Field::conductor_for(parse_system("rank 2; m 1 2 = inf")) == 2);
  CHECK(Field::conductor_for(parse_system("rank 3; m 1 2 = 4; m 2 3 = 6")) == 12);
}

TEST_CASE("field values") {
  Field f(12);
  const double pi = 3.14159265358979323846;
  for (int m : {2, 3, 4, 6, 12}) {
    CHECK(f.to_double(f.two_cos_pi_over(m)) == doctest::Approx(2 * std::cos(pi / m)).epsilon(1e-12));
  }
  FieldElem half = f.from_rational(1, 2);
  CHECK(f.mul(half, f.from_int(2)) == f.one());
  FieldElem c = f.generator();
  CHECK(f.sign(c) == 1);
  CHECK(f.sign(f.neg(c)) == -1);
  CHECK(f.sign(f.zero()) == 0);
  // 2cos(pi/4) squared is 2.
  FieldElem r2 = f.two_cos_pi_over(4);
  CHECK(f.mul(r2, r2) == f.from_int(2));
  // A near miss that floating point alone would misjudge.
  FieldElem x = f.sub(f.mul(f.from_int(1'000'000'007), r2), f.from_int(1'414'213'572));
  CHECK(f.sign(x) == (1'000'000'007.0L * std::sqrt(2.0L) > 1'414'213'572.0L ? 1 : -1));
}

TEST_CASE("field arithmetic laws on random inputs") {
  std::mt19937 rng(424242);
  for (int N : {5, 6, 12, 15}) {
    Field f(N);
    auto draw = [&] {
      FieldElem e = f.zero();
      FieldElem p = f.one();
      for (int k = 0; k < f.degree(); ++k) {
        long long num = static_cast<long long>(rng() % 41) - 20;
        long long den = 1 + static_cast<long long>(rng() % 6);
        e = f.add(e, f.mul(f.from_rational(num, den), p));
        p = f.mul(p, f.generator());
      }
      return e;
    };
    for (int i = 0; i < 200; ++i) {
      FieldElem a = draw(), b = draw(), c = draw();
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.sign(a) * f.sign(b) == f.sign(f.mul(a, b)));
      double d = f.to_double(a);
      if (std::fabs(d) > 1e-9) CHECK(f.sign(a) == (d > 0 ? 1 : -1));
    }
  }
}

TEST_CASE("bilinear form entries") {
  auto g = CoxeterGroup(parse_system("rank 3; m 1 2 = 3; m 1 3 = inf"));
  const Field& f = g.field();
  Matrix b = g.bilinear_form();
  CHECK(b(0, 0) == f.one());
  CHECK(b(0, 1) == f.from_rational(-1, 2));
  CHECK(b(1, 2) == f.zero());
  CHECK(b(0, 2) == f.from_int(-1));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(b(i, j) == b(j, i));
}

TEST_CASE("multiply and length") {
  auto a2 = dihedral("3");
  Elt id = a2.identity();
  CHECK(id.len == 0);
  Elt s = a2.multiply(id, 0);
  CHECK(s.len == 1);
  CHECK(a2.multiply(s, 0) == id);
  Elt st = a2.from_word(w({0, 1}));
  Elt sts = a2.multiply(st, 0);
  CHECK(sts.len == 3);
  Elt stst = a2.from_word(w({0, 1, 0, 1}));
  CHECK(stst.len == 2);
  CHECK(stst == a2.from_word(w({1, 0})));
  CHECK(sts == a2.from_word(w({1, 0, 1})));
  CHECK(sts.word == w({0, 1, 0}));  // ShortLex name

  auto inf = dihedral("inf");
  CHECK(inf.from_word(w({0, 1, 0})).len == 3);
  CHECK(inf.from_word(w({0, 1, 0, 1, 0, 1, 0, 1})).len == 8);
}

TEST_CASE("descent and inversion walls") {
  auto inf = dihedral("inf");
  const Field& f = inf.field();
  CHECK(inf.descent_walls(inf.identity()).empty());
  Elt s = inf.generator(0);
  auto dw = inf.descent_walls(s);
  REQUIRE(dw.size() == 1);
  CHECK(dw[0].first == 0);
  CHECK(dw[0].second.root == inf.simple_root(0));

  Elt st = inf.from_word(w({0, 1}));
  dw = inf.descent_walls(st);
  REQUIRE(dw.size() == 1);
  CHECK(dw[0].first == 1);
  RootVec expect{f.from_int(2), f.one()};  // s.a_t = a_t + 2 a_s
  CHECK(dw[0].second.root == expect);
  CHECK(inf.separates(dw[0].second, st, inf.multiply(st, 1)));
  CHECK(inf.product(dw[0].second.refl, st) == inf.multiply(st, 1));

  auto a2 = dihedral("3");
  auto walls = a2.inversion_walls(a2.from_word(w({0, 1})));
  REQUIRE(walls.size() == 2);
  std::vector<RootVec> roots{walls[0].root, walls[1].root};
  RootVec sat = a2.reflect(0, a2.simple_root(1));
  CHECK(std::count(roots.begin(), roots.end(), a2.simple_root(0)) == 1);
  CHECK(std::count(roots.begin(), roots.end(), sat) == 1);
  for (const auto& wall : walls) {
    CHECK(a2.inner(wall.root, wall.root) == a2.field().one());
    CHECK(a2.product(wall.refl, wall.refl) == a2.identity());
    CHECK(a2.act(wall.refl, wall.root) == a2.negate(wall.root));
  }
}

TEST_CASE("separation") {
  auto a2 = dihedral("3");
  Elt id = a2.identity(), s = a2.generator(0), t = a2.generator(1);
  RootVec as = a2.simple_root(0);
  CHECK(a2.separates(as, id, s));
  CHECK_FALSE(a2.separates(as, id, t));
  CHECK(a2.separates(as, t, a2.from_word(w({0, 1}))));
  CHECK_FALSE(a2.separates(as, t, a2.from_word(w({1, 0}))));
}

TEST_CASE("weak order and joins") {
  auto a2 = dihedral("3");
  Elt id = a2.identity(), s = a2.generator(0), t = a2.generator(1);
  Elt st = a2.from_word(w({0, 1}));
  CHECK(a2.weak_leq(id, st));
  CHECK(a2.weak_leq(s, st));
  CHECK_FALSE(a2.weak_leq(t, st));
  CHECK(a2.weak_leq(st, st));

  auto j = a2.join(s, t, 4);
  REQUIRE(j.found());
  CHECK(*j.element == a2.from_word(w({0, 1, 0})));
  CHECK(a2.join(st, st, 3).element == st);

  auto inf = dihedral("inf");
  auto none = inf.join(inf.generator(0), inf.generator(1), 8);
  CHECK_FALSE(none.found());
  CHECK(none.radius == 8);
  CHECK_THROWS(inf.join(inf.from_word(w({0, 1, 0})), inf.generator(1), 2));
}

TEST_CASE("lengths, inversions and weak order against the oracle ball") {
  for (const char* name : {"rank 2; m 1 2 = inf", "A2", "Atilde2", "triangle(3,3,4)", "rank 3; m 1 3 = inf; m 2 3 = 5"}) {
    CAPTURE(name);
    CoxeterGroup g(parse_system(name));
    const int R = 6;
    OracleBall ob = build_ball(g.system(), R);
    ElementBall ball(g, R);
    REQUIRE(ball.size() == ob.size());
    for (std::size_t o = 0; o < ob.size(); ++o) {
      Elt e = g.from_word(ob.word(static_cast<int>(o)));
      CHECK(e.len == ob.length(static_cast<int>(o)));
      CHECK(g.inversion_walls(e).size() == static_cast<std::size_t>(e.len));
      CHECK(e.mat == ob.matrix(static_cast<int>(o)));
    }
    // weak order = geodesic through p
    std::vector<int> small;
    for (std::size_t o = 0; o < ob.size() && small.size() < 60; ++o) small.push_back(static_cast<int>(o));
    for (int p : small) {
      for (int q : small) {
        Elt ep = g.from_word(ob.word(p)), eq = g.from_word(ob.word(q));
        CHECK(g.weak_leq(ep, eq) == ob.below(p, q));
      }
    }
  }
}

TEST_CASE("joins are least upper bounds in the ball") {
  CoxeterGroup g(parse_system("Atilde2"));
  const int R = 7;
  ElementBall ball(g, R);
  std::vector<int> ids;
  for (std::size_t id = 0; id < ball.size() && ball.at(static_cast<int>(id)).len <= 3; ++id)
    ids.push_back(static_cast<int>(id));
  for (int a : ids) {
    for (int b : ids) {
      const Elt& u = ball.at(a);
      const Elt& v = ball.at(b);
      auto j = g.join(u, v, R);
      int bounds = 0;
      for (const auto& x : ball.elements()) {
        if (!g.weak_leq(u, x) || !g.weak_leq(v, x)) continue;
        ++bounds;
        REQUIRE(j.found());
        CHECK(g.weak_leq(*j.element, x));
      }
      CHECK(j.found() == (bounds > 0));
    }
  }
}

TEST_CASE("every edge crosses exactly one wall") {
  CoxeterGroup g(parse_system("triangle(3,3,4)"));
  ElementBall ball(g, 5);
  for (std::size_t id = 0; id < ball.size(); ++id) {
    for (int s = 0; s < g.rank(); ++s) {
      int y = ball.right(static_cast<int>(id), s);
      if (y < 0) continue;
      CHECK(ball.distance(static_cast<int>(id), y) == 1);
    }
  }
}
