#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nuchern/numeric.hpp"

using namespace nuchern;

namespace {

struct Fixture {
  Registry reg;
  int z1, e1, e2;
  Fixture() {
    z1 = reg.register_symbol("nm_z1", SymKind::EvenCoord);
    e1 = reg.register_symbol("nm_e1", SymKind::OddCoord);
    e2 = reg.register_symbol("nm_e2", SymKind::OddCoord);
  }
};

}  // namespace

TEST_CASE("eval_numeric") {
  Fixture f;
  GrassmannElement inv_z = GrassmannElement::from_coeff(RationalFunction::variable(f.z1).inverse());
  std::map<int, Cx> pt{{f.z1, Cx(0.0, 2.0)}};
  CHECK(ng_distance(eval_numeric(inv_z, pt), NumericGrassmann(Cx(0.0, -0.5))) < 1e-14);

  GrassmannElement e1 = GrassmannElement::variable(f.e1);
  CHECK(ng_distance(eval_numeric(e1, pt), NumericGrassmann::generator(f.e1)) == 0.0);

  std::map<int, Cx> origin{{f.z1, Cx(0.0, 0.0)}};
  CHECK_THROWS_AS(eval_numeric(inv_z, origin), Error);
}

TEST_CASE("branch-windowed exp and log") {
  CHECK(std::abs(ng_exp(NumericGrassmann(Cx(0.0, M_PI))).body0() - Cx(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(ng_log(NumericGrassmann(Cx(-1.0, 0.0)), Window::ZeroTwoPi).body0() -
                 Cx(0.0, M_PI)) < 1e-14);
  CHECK_THROWS_AS(ng_log(NumericGrassmann(Cx(2.0, 0.0)), Window::ZeroTwoPi), Error);
  CHECK_THROWS_AS(ng_log(NumericGrassmann(Cx(-2.0, 0.0)), Window::MinusPiPi), Error);
  CHECK_THROWS_AS(ng_log(NumericGrassmann(), Window::ZeroTwoPi), Error);
  /* window ranges */
  double a = std::imag(ng_log(NumericGrassmann(Cx(1.0, -1e-6)), Window::ZeroTwoPi).body0());
  CHECK(a > 6.0);
  double b = std::imag(ng_log(NumericGrassmann(Cx(1.0, -1e-6)), Window::MinusPiPi).body0());
  CHECK(b < 0.0);
}

TEST_CASE("exp/log roundtrip with nilpotent and nu0 parts") {
  Fixture f;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  auto rc = [&]() { return Cx(re(rng), re(rng)); };
  int done = 0;
  while (done < 100) {
    NumericGrassmann x(Cx(re(rng) + 1.5, re(rng)));  // body away from the cut
    x = x + NumericGrassmann::generator(f.e1) * NumericGrassmann::generator(f.e2) * rc();
    if (done % 2 == 0) x = x + NumericGrassmann::nu0_unit() * NumericGrassmann(rc() * 0.2);
    NumericGrassmann lg;
    try {
      lg = ng_log(x, Window::MinusPiPi);
    } catch (const Error&) {
      continue;
    }
    CHECK(ng_distance(ng_exp(lg), x) < 1e-12);
    CHECK(ng_distance(x * ng_invert(x), NumericGrassmann(Cx(1.0))) < 1e-12);
    ++done;
  }
}
