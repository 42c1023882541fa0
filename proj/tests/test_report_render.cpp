#include <doctest.h>

#include <regex>
#include <set>

#include <json.hpp>

#include "coxshadow/oracle.hpp"
#include "coxshadow/render.hpp"
#include "coxshadow/verify.hpp"

using namespace coxshadow;

TEST_CASE("report status and exit codes") {
  Report r("t");
  CHECK(r.overall() == CheckStatus::Pass);
  CHECK(r.exit_code() == 0);
  r.add(make_check("a", 3, 0, {}));
  r.add(make_check("b", 0, 0, {}));
  CHECK(r.find("b")->status == CheckStatus::Vacuous);
  CHECK(r.ok());
  r.add(make_check("c", 3, 0, {}, 1));
  CHECK(r.overall() == CheckStatus::Inconclusive);
  CHECK(r.exit_code() == 3);
  std::vector<std::string> many(20, "w");
  r.add(make_check("d", 30, 20, many));
  CHECK(r.overall() == CheckStatus::Fail);
  CHECK(r.exit_code() == 4);
  CHECK(r.find("d")->witnesses.size() == 10);
  CHECK(r.find("missing") == nullptr);

  Report outer("outer");
  outer.merge(r);
  CHECK(outer.find("t.a") != nullptr);
  auto j = nlohmann::json::parse(outer.to_json());
  CHECK(j["checks"].size() == 4);
  CHECK(to_string(CheckStatus::Inconclusive) == "inconclusive");
}

TEST_CASE("suite names") {
  CHECK(parse_suite("all") == Suite::All);
  CHECK(parse_suite("bipodality") == Suite::Bipodality);
  CHECK_THROWS_AS(parse_suite("nope"), std::invalid_argument);
}

TEST_CASE("affine detection") {
  CHECK(is_affine_rank3(CoxeterGroup(parse_system("Gtilde2"))));
  CHECK(is_affine_rank3(CoxeterGroup(parse_system("Atilde2"))));
  CHECK(is_affine_rank3(CoxeterGroup(parse_system("Btilde2"))));
  CHECK_FALSE(is_affine_rank3(CoxeterGroup(parse_system("A3"))));
  CHECK_FALSE(is_affine_rank3(CoxeterGroup(parse_system("A2"))));
  CHECK_FALSE(is_affine_rank3(CoxeterGroup(parse_system("triangle(3,3,4)"))));
  CHECK_FALSE(is_affine_rank3(CoxeterGroup(parse_system("rank 3; m 1 2 = inf"))));
}

TEST_CASE("render") {
  for (auto [name, coloring] : {std::pair{"Gtilde2", Coloring::Shi}, std::pair{"Atilde2", Coloring::Cone},
                                std::pair{"Gtilde2", Coloring::Cone}}) {
    CAPTURE(name);
    Analysis a(parse_system(name));
    const int R = 8;
    Rendering img = render_parts(a, R, coloring);
    OracleBall ob = build_ball(a.group().system(), R);
    CHECK(img.alcoves == ob.size());
    // distinct fills in the picture
    std::set<std::string> fills;
    std::regex fill_re("fill=\"(#[0-9a-f]{6})\"");
    for (auto it = std::sregex_iterator(img.svg.begin(), img.svg.end(), fill_re); it != std::sregex_iterator(); ++it)
      fills.insert((*it)[1]);
    CHECK(fills.size() == img.parts);
    // oracle part count inside the window
    std::size_t expect = 0;
    if (coloring == Coloring::Shi) {
      auto walls_roots = oracle_small_roots(a.group().system(), 8);
      std::vector<int> walls;
      for (const auto& r : walls_roots)
        for (std::size_t w = 0; w < ob.wall_count(); ++w)
          if (ob.wall_root(static_cast<int>(w)) == r) walls.push_back(static_cast<int>(w));
      auto cls = oracle_wall_partition(ob, walls);
      expect = std::set<int>(cls.begin(), cls.end()).size();
    } else {
      OracleBall wide = build_ball(a.group().system(), R + 12);
      ConePartition cp = oracle_cone_partition(wide, 12);
      std::set<int> cls;
      for (std::size_t o = 0; o < wide.size(); ++o)
        if (wide.length(static_cast<int>(o)) <= R) cls.insert(cp.class_of[o]);
      expect = cls.size();
    }
    CHECK(img.parts == expect);
    CHECK(render_parts(a, R, coloring).svg == img.svg);
  }
  Analysis a2(parse_system("A2"));
  CHECK_THROWS_AS(render_parts(a2, 4, Coloring::Shi), UnsupportedError);
}

TEST_CASE("verify on the infinite dihedral group") {
  Analysis a(parse_system("rank 2; m 1 2 = inf"));
  VerifyOptions opts;
  opts.radius = 8;
  Report r = verify(a, Suite::All, opts);
  INFO(r.to_text());
  CHECK(r.ok());
  opts.jobs = 4;
  Report p = verify(a, Suite::All, opts);
  CHECK(p.to_json() == r.to_json());
}
