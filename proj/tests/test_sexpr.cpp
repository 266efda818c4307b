#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nuchern/sexpr.hpp"

using namespace nuchern;

namespace {

struct Fixture {
  Registry reg;
  int z1, z2, e1, e2;
  Fixture() {
    z1 = reg.register_symbol("sx_z1", SymKind::EvenCoord);
    z2 = reg.register_symbol("sx_z2", SymKind::EvenCoord);
    e1 = reg.register_symbol("sx_e1", SymKind::OddCoord);
    e2 = reg.register_symbol("sx_e2", SymKind::OddCoord);
  }
  GrassmannElement v(int id) const { return GrassmannElement::variable(id); }
};

GrassmannElement rand_ge(std::mt19937_64& rng, const Fixture& f) {
  std::uniform_int_distribution<int> cd(-3, 3), pick(0, 4);
  GrassmannElement x;
  for (int t = 0; t < 3; ++t) {
    RationalFunction c = RationalFunction::constant(GaussianRational(cd(rng), cd(rng)));
    if (pick(rng) < 2)
      c = c / (RationalFunction::variable(f.z1) + RationalFunction(cd(rng) + 5));
    if (pick(rng) < 2) c = c * RationalFunction::variable(f.z2);
    if (c.is_zero()) continue;
    GrassmannElement term = GrassmannElement::from_coeff(c);
    switch (pick(rng)) {
      case 0: break;
      case 1: term = term * f.v(f.e1); break;
      case 2: term = term * f.v(f.e1) * f.v(f.e2); break;
      default: term = term * GrassmannElement::nu0_unit(); break;
    }
    x = x + term;
  }
  return x;
}

}  // namespace

TEST_CASE("grassmann s-expression round trip") {
  Fixture f;
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    GrassmannElement x = rand_ge(rng, f);
    CHECK(parse_grassmann(sexpr_of(x), f.reg) == x);
  }
}

TEST_CASE("form round trip") {
  Fixture f;
  std::mt19937_64 rng(33);
  for (int t = 0; t < 50; ++t) {
    Form w = wedge(d_ge(rand_ge(rng, f)), Form::from_ge(rand_ge(rng, f)));
    CHECK(parse_form(sexpr_of(w), f.reg) == w);
  }
}

TEST_CASE("matrix text round trip") {
  Fixture f;
  std::mt19937_64 rng(35);
  SuperMatrix<GrassmannElement> m(2, 1, 2, 1, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = rand_ge(rng, f);
  std::string text = matrix_text(m);
  CHECK(parse_matrix_grassmann(text, f.reg, 2, 1, 2, 1) == m);
}

TEST_CASE("parse errors") {
  Fixture f;
  CHECK_THROWS_AS(parse_grassmann("(+ 1", f.reg), Error);
  CHECK_THROWS_AS(parse_grassmann("sx_unknown", f.reg), Error);
  CHECK_THROWS_AS(parse_grassmann("(d sx_z1)", f.reg), Error);  // differential rejected
  CHECK(parse_grassmann("(* 2 sx_z1)", f.reg) == GrassmannElement(2) * f.v(f.z1));
  CHECK(parse_form("(d sx_z1)", f.reg) == Form::generator(f.z1));
}
