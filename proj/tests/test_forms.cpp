#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nuchern/form.hpp"

using namespace nuchern;

namespace {

struct Fixture {
  Registry reg;
  int z1, z2, e1, e2;
  Fixture() {
    z1 = reg.register_symbol("fm_z1", SymKind::EvenCoord);
    z2 = reg.register_symbol("fm_z2", SymKind::EvenCoord);
    e1 = reg.register_symbol("fm_e1", SymKind::OddCoord);
    e2 = reg.register_symbol("fm_e2", SymKind::OddCoord);
  }
  GrassmannElement v(int id) const { return GrassmannElement::variable(id); }
};

GrassmannElement rand_ge(std::mt19937_64& rng, const Fixture& f) {
  std::uniform_int_distribution<int> cd(-3, 3), pick(0, 4);
  GrassmannElement x;
  for (int t = 0; t < 3; ++t) {
    RationalFunction c(cd(rng));
    if (pick(rng) < 2) c = c * RationalFunction::variable(f.z1);
    if (pick(rng) == 0) c = c * RationalFunction::variable(f.z2);
    if (c.is_zero()) continue;
    GrassmannElement term = GrassmannElement::from_coeff(c);
    switch (pick(rng)) {
      case 0: break;
      case 1: term = term * f.v(f.e1); break;
      case 2: term = term * f.v(f.e2); break;
      case 3: term = term * f.v(f.e1) * f.v(f.e2); break;
      default: term = term * GrassmannElement::nu0_unit(); break;
    }
    x = x + term;
  }
  return x;
}

}  // namespace

TEST_CASE("wedge sign rules") {
  Fixture f;
  Form dz1 = Form::generator(f.z1), dz2 = Form::generator(f.z2);
  Form de1 = Form::generator(f.e1), de2 = Form::generator(f.e2);
  CHECK(wedge(dz1, dz2) == -wedge(dz2, dz1));
  CHECK(wedge(dz1, dz1).is_zero());
  CHECK(wedge(dz1, de1) == -wedge(de1, dz1));
  CHECK(wedge(de1, de2) == wedge(de2, de1));
  CHECK_FALSE(wedge(de1, de1).is_zero());  // parity-1 generators square freely
}

TEST_CASE("exterior derivative") {
  Fixture f;
  GrassmannElement z1 = f.v(f.z1), z2 = f.v(f.z2), e1 = f.v(f.e1), e2 = f.v(f.e2);
  CHECK(d_ge(z1 * z2) == z2 * Form::generator(f.z1) + z1 * Form::generator(f.z2));
  /* d(e1 e2) = (de1) e2 + e1 (de2): pushing coefficients left of the
     generators gives -e2*de1 + e1*de2 */
  CHECK(d_ge(e1 * e2) == -e2 * Form::generator(f.e1) + e1 * Form::generator(f.e2));
  CHECK(exterior_d(d_ge(z1 * e1)).is_zero());

  SUBCASE("d^2 = 0 randomized") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
      GrassmannElement x = rand_ge(rng, f);
      CHECK(exterior_d(d_ge(x)).is_zero());
    }
  }

  SUBCASE("d is an even derivation on degree-0 forms") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
      GrassmannElement a = rand_ge(rng, f);
      GrassmannElement b = rand_ge(rng, f);
      CHECK(d_ge(a * b) == wedge(d_ge(a), Form::from_ge(b)) + wedge(Form::from_ge(a), d_ge(b)));
    }
  }
}

TEST_CASE("dlog") {
  Fixture f;
  GrassmannElement z1 = f.v(f.z1);
  CHECK(dlog(z1) == GrassmannElement::from_coeff(RationalFunction::variable(f.z1).inverse()) *
                        Form::generator(f.z1));
  CHECK(dlog(GrassmannElement(5)).is_zero());
  CHECK_THROWS_AS(dlog(f.v(f.e1)), Error);
  SUBCASE("dlog(ab) = dlog(a) + dlog(b) for invertible even elements") {
    std::mt19937_64 rng(25);
    std::uniform_int_distribution<int> cd(-2, 2);
    for (int t = 0; t < 50; ++t) {
      GrassmannElement a = GrassmannElement(cd(rng) + 4) + f.v(f.e1) * f.v(f.e2) * RationalFunction(cd(rng));
      GrassmannElement b = GrassmannElement(cd(rng) + 4) * f.v(f.z1) +
                           f.v(f.e1) * f.v(f.e2) * RationalFunction(cd(rng));
      CHECK(dlog(a * b) == dlog(a) + dlog(b));
    }
  }
}

TEST_CASE("truncation soundness") {
  Fixture f;
  Form de1 = Form::generator(f.e1);
  Form x = Form::one() + de1;
  auto power = [&](const Form& base, int n) {
    Form acc = Form::one();
    for (int i = 0; i < n; ++i) acc = wedge(acc, base);
    return acc;
  };
  Form low, high;
  {
    TruncationGuard g(4);
    low = power(x, 8);
    CHECK(low.overflow);
  }
  {
    TruncationGuard g(6);
    high = power(x, 8);
  }
  /* degree <= 4 part must agree between the two runs */
  for (const auto& [k, c] : low.t) {
    REQUIRE(k.degree() <= 4);
    CHECK(high.t.count(k));
    CHECK(high.t.at(k) == c);
  }
  for (const auto& [k, c] : high.t)
    if (k.degree() <= 4) CHECK(low.t.count(k));
}

TEST_CASE("pullback is functorial on forms") {
  Fixture f;
  Substitution s;
  s[f.z1] = f.v(f.z2) * f.v(f.z2);
  s[f.e1] = f.v(f.e2) * RationalFunction::variable(f.z2);
  GrassmannElement x = f.v(f.z1) * f.v(f.e1);
  /* pullback commutes with d */
  CHECK(pullback(d_ge(x), s) == d_ge(substitute(x, s)));
  /* and with wedge */
  Form a = d_ge(f.v(f.z1)), b = d_ge(f.v(f.e1));
  CHECK(pullback(wedge(a, b), s) == wedge(pullback(a, s), pullback(b, s)));
}

TEST_CASE("partition family") {
  Registry reg;
  SUBCASE("two members") {
    PartitionFamily p = make_partition(reg, 2, "fm_rho");
    CHECK(p.rho(1) == GrassmannElement(1) - p.rho(0));
    CHECK(p.drho(1) == -p.drho(0));
  }
  SUBCASE("four members sum to one") {
    PartitionFamily p = make_partition(reg, 4, "fm_rho4_");
    GrassmannElement sum;
    Form dsum;
    for (int k = 0; k < 4; ++k) {
      sum = sum + p.rho(k);
      dsum = dsum + p.drho(k);
    }
    CHECK(sum == GrassmannElement(1));
    CHECK(dsum.is_zero());
  }
}
