#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nuchern/ratfun.hpp"
#include "nuchern/symbols.hpp"

using namespace nuchern;

TEST_CASE("gaussian rational field ops") {
  GaussianRational i = GaussianRational::i();
  CHECK(i * i == GaussianRational(-1));
  GaussianRational a(Rat(3) / 4, Rat(-2));
  CHECK(a * a.inverse() == GaussianRational(1));
  CHECK(a + (-a) == GaussianRational(0));
  CHECK((a / a) == GaussianRational(1));
  CHECK_THROWS_AS(GaussianRational(0).inverse(), Error);
}

TEST_CASE("snap half integer") {
  double res = 0.0;
  CHECK(snap_half_integer(-0.4999999999, &res) == Rat(-1) / 2);
  CHECK(res < 1e-9);
  CHECK(snap_half_integer(1.0000000002, &res) == Rat(1));
  CHECK(snap_half_integer(0.2, &res) == Rat(0));
  CHECK(res == doctest::Approx(0.2));
}

TEST_CASE("registry parity and duplicate names") {
  Registry reg;
  int z1 = reg.register_symbol("alg_z1", SymKind::EvenCoord, 1);
  int e1 = reg.register_symbol("alg_e1", SymKind::OddCoord, 1);
  CHECK(sym_parity(z1) == 0);
  CHECK(sym_parity(e1) == 1);
  CHECK_THROWS_AS(reg.register_symbol("alg_z1", SymKind::EvenCoord), Error);
  auto [e2, ne2] = reg.register_pair("alg_e2", SymKind::OddCoord, 1, 2);
  CHECK(Symtab::info(e2).partner == ne2);
  CHECK(Symtab::info(ne2).partner == e2);
  CHECK(sym_parity(ne2) == 0);
}

namespace {

Polynomial rand_poly(std::mt19937_64& rng, const std::vector<int>& vars) {
  std::uniform_int_distribution<int> cd(-4, 4), ed(0, 2), nt(1, 4);
  Polynomial p;
  int terms = nt(rng);
  for (int t = 0; t < terms; ++t) {
    Polynomial mono = Polynomial::constant(GaussianRational(cd(rng), cd(rng)));
    for (int v : vars) {
      int e = ed(rng);
      if (e > 0) mono = mono * Polynomial::variable(v).pow(e);
    }
    p = p + mono;
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic and gcd reduction") {
  Registry reg;
  int x = reg.register_symbol("alg_x", SymKind::EvenCoord);
  int y = reg.register_symbol("alg_y", SymKind::EvenCoord);
  Polynomial X = Polynomial::variable(x), Y = Polynomial::variable(y);

  CHECK((X + Y) * (X - Y) == X * X - Y * Y);
  CHECK((X + Y).pow(2) == X * X + X * Y * Polynomial(2) + Y * Y);

  SUBCASE("divide_exact and gcd") {
    auto q = divide_exact(X * X - Y * Y, X - Y);
    REQUIRE(q.has_value());
    CHECK(*q == X + Y);
    Polynomial g = poly_gcd((X * X - Y * Y) * (X + Y), (X + Y) * (X + Y));
    CHECK(divide_exact((X + Y) * (X + Y), g).has_value());
  }

  SUBCASE("randomized ring laws") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
      Polynomial a = rand_poly(rng, {x, y});
      Polynomial b = rand_poly(rng, {x, y});
      Polynomial c = rand_poly(rng, {x, y});
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("rational function canonical form") {
  Registry reg;
  int x = reg.register_symbol("alg_rx", SymKind::EvenCoord);
  int y = reg.register_symbol("alg_ry", SymKind::EvenCoord);
  RationalFunction X = RationalFunction::variable(x), Y = RationalFunction::variable(y);

  RationalFunction r = (X * X - Y * Y) / (X - Y);
  CHECK(r == X + Y);
  CHECK(r - X - Y == RationalFunction(0));

  CHECK(X / X == RationalFunction(1));
  CHECK((RationalFunction(1) / X) * X == RationalFunction(1));
  CHECK_THROWS_AS(X / RationalFunction(0), Error);

  SUBCASE("field laws randomized") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
      Polynomial pa = rand_poly(rng, {x, y});
      Polynomial pb = rand_poly(rng, {x, y});
      if (pb.is_zero() || pa.is_zero()) continue;
      RationalFunction a = RationalFunction::from_poly(pa) / RationalFunction::from_poly(pb);
      CHECK(a * a.inverse() == RationalFunction(1));
      CHECK(a - a == RationalFunction(0));
    }
  }

  SUBCASE("derivative quotient rule") {
    RationalFunction f = X / (X + Y);
    RationalFunction df = f.derivative(x);
    CHECK(df == Y / ((X + Y) * (X + Y)));
  }

  SUBCASE("uniform net degree") {
    RationalFunction f = (X * X * Y + X * X) / Y;
    CHECK(f.uniform_net_degree_in(x) == 2);
    CHECK_FALSE(f.uniform_net_degree_in(y).has_value());
  }

  SUBCASE("complex evaluation and poles") {
    std::map<int, std::complex<double>> pt{{x, {2.0, 0.0}}, {y, {1.0, 0.0}}};
    RationalFunction f = X / Y;
    CHECK(std::abs(f.eval_complex(pt) - std::complex<double>(2.0, 0.0)) < 1e-14);
    pt[y] = 0.0;
    CHECK_THROWS_AS(f.eval_complex(pt), Error);
  }
}
