#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nuchern/atlas.hpp"

using namespace nuchern;

TEST_CASE("chart labels, 2|1") {
  ChartAtlas a = build_atlas(2, 1);
  CHECK(a.nchart() == 4);
  CHECK(a.label_text(1) == "A1 = (1, z1^(1), z2^(1) | e1^(1))");
  CHECK(a.label_text(2) == "A2 = (z1^(2), 1, z2^(2) | e1^(2))");
  CHECK(a.label_text(3) == "A3 = (z1^(3), z2^(3), 1 | e1^(3))");
  CHECK(a.label_text(4) == "A4 = (z1^(4), z2^(4), nu(e1^(4)) | 1nu)");
}

TEST_CASE("chart labels, 1|1 and atlas sizes") {
  ChartAtlas a = build_atlas(1, 1);
  CHECK(a.nchart() == 3);
  CHECK(a.label_text(1) == "A1 = (1, z1^(1) | e1^(1))");
  CHECK(a.label_text(2) == "A2 = (z1^(2), 1 | e1^(2))");
  CHECK(a.label_text(3) == "A3 = (z1^(3), nu(e1^(3)) | 1nu)");
  CHECK(build_atlas(3, 2).nchart() == 6);
  CHECK_THROWS_AS(build_atlas(0, 1), Error);
}

TEST_CASE("entry_M_prime") {
  ChartAtlas a = build_atlas(2, 1);
  CHECK(entry_M_prime(a, 2, 1) == GrassmannElement::variable(a.chart(1).z[0]));
  CHECK(entry_M_prime(a, 4, 3) == GrassmannElement::variable(a.chart(3).nue[0]));
  for (int i = 1; i <= 4; ++i) CHECK(entry_M_prime(a, i, i) == GrassmannElement(1));
}

TEST_CASE("transition maps, hand-derived images") {
  ChartAtlas a = build_atlas(2, 1);
  const Chart& c1 = a.chart(1);
  const Chart& c2 = a.chart(2);
  const Chart& c4 = a.chart(4);
  auto V = [](int id) { return GrassmannElement::variable(id); };
  auto R = [](int id) { return RationalFunction::variable(id); };

  SUBCASE("(1,2): divide through by z1 of chart 2") {
    TransitionMap t = transition(a, 1, 2);
    CHECK(t.images.at(c1.z[0]) == GrassmannElement::from_coeff(R(c2.z[0]).inverse()));
    CHECK(t.images.at(c1.z[1]) == GrassmannElement::from_coeff(R(c2.z[1]) / R(c2.z[0])));
    CHECK(t.images.at(c1.e[0]) == V(c2.e[0]) * R(c2.z[0]).inverse());
  }

  SUBCASE("(4,1): divide through by nu(e1) of chart 1") {
    TransitionMap t = transition(a, 4, 1);
    CHECK(t.images.at(c4.z[0]) == GrassmannElement::from_coeff(R(c1.nue[0]).inverse()));
    CHECK(t.images.at(c4.z[1]) == GrassmannElement::from_coeff(R(c1.z[0]) / R(c1.nue[0])));
    CHECK(t.images.at(c4.nue[0]) == GrassmannElement::from_coeff(R(c1.z[1]) / R(c1.nue[0])));
  }

  SUBCASE("(i,i) is the identity") {
    TransitionMap t = transition(a, 3, 3);
    for (const auto& [id, img] : t.images) CHECK(img == GrassmannElement::variable(id));
  }

  SUBCASE("(1,2) then (2,1) round trips e1") {
    TransitionMap t12 = transition(a, 1, 2);
    TransitionMap t21 = transition(a, 2, 1);
    CHECK(substitute(t12.images.at(c1.e[0]), t21.images) == V(c1.e[0]));
  }
}

TEST_CASE("gluing suite, 2|1 and 1|1") {
  for (auto [m, n] : {std::pair{2, 1}, std::pair{1, 1}}) {
    ChartAtlas a = build_atlas(m, n);
    Report rep = verify_gluing(a);
    INFO(rep.to_text());
    CHECK(rep.overall());
  }
}

TEST_CASE("line cocycle values") {
  ChartAtlas a = build_atlas(2, 1);
  auto V = [](int id) { return GrassmannElement::variable(id); };
  auto R = [](int id) { return RationalFunction::variable(id); };
  GrassmannElement nu0 = GrassmannElement::nu0_unit();
  CHECK(line_cocycle(a, 2, 1) == GrassmannElement::from_coeff(R(a.chart(1).z[0]).inverse()));
  CHECK(line_cocycle(a, 4, 3) == nu0 * GrassmannElement::from_coeff(R(a.chart(3).nue[0]).inverse()));
  CHECK(line_cocycle(a, 1, 4) == nu0 * GrassmannElement::from_coeff(R(a.chart(4).z[0]).inverse()));

  SUBCASE("hand-composed triple (2,4,1)") {
    GrassmannElement h41 = line_cocycle(a, 4, 1);
    GrassmannElement h21 = line_cocycle(a, 2, 1);
    GrassmannElement h24_in_1 = apply_map(transition(a, 4, 1), line_cocycle(a, 2, 4));
    CHECK(h41 * ge_invert(h21) * h24_in_1 == GrassmannElement(1));
    (void)V;
  }
}

TEST_CASE("cocycle verification and body reduction, 2|1") {
  ChartAtlas a = build_atlas(2, 1);
  Report rep = verify_line_cocycle(a, 25, 42);
  INFO(rep.to_text());
  CHECK(rep.overall());
  Report body = body_transition_check(a);
  INFO(body.to_text());
  CHECK(body.overall());
}
