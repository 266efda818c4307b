#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "nuchern/poly.hpp"
#include "nuchern/symbols.hpp"

namespace nuchern {

/* Reduced fraction of multivariate polynomials over Q(i) in parity-0 symbols.
   Canonical form: gcd removed, denominator's leading coefficient scaled to 1,
   so operator== is decidable structural equality. */
class RationalFunction {
 public:
  Polynomial num, den;

  RationalFunction() : num(0), den(1) {}
  RationalFunction(long v) : num(v), den(1) {}  // NOLINT: implicit by design
  RationalFunction(Polynomial n, Polynomial d) : num(std::move(n)), den(std::move(d)) {
    reduce();
  }
  static RationalFunction constant(const GaussianRational& c) {
    RationalFunction r;
    r.num = Polynomial::constant(c);
    return r;
  }
  static RationalFunction variable(int id) {
    RationalFunction r;
    r.num = Polynomial::variable(id);
    return r;
  }
  static RationalFunction from_poly(Polynomial p) {
    RationalFunction r;
    r.num = std::move(p);
    return r;
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return num.is_one() && den.is_one(); }
  bool is_constant() const { return num.is_constant() && den.is_constant(); }
  GaussianRational constant_value() const {
    return num.constant_value() / den.constant_value();
  }

  void reduce() {
    if (den.is_zero()) fail(Err::NonInvertibleBody, "zero denominator");
    if (num.is_zero()) {
      den = Polynomial(1);
      return;
    }
    if (den.is_one()) return;
    Polynomial g = poly_gcd(num, den);
    if (!g.is_one()) {
      num = *divide_exact(num, g);
      den = *divide_exact(den, g);
    }
    GaussianRational lc = den.leading_coefficient();
    if (!lc.is_one()) {
      GaussianRational inv = lc.inverse();
      num = num * inv;
      den = den * inv;
    }
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den.is_one() && b.den.is_one()) return from_poly(a.num + b.num);
    return RationalFunction(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    if (a.den.is_one() && b.den.is_one()) return from_poly(a.num - b.num);
    return RationalFunction(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num = -r.num;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.den.is_one() && b.den.is_one()) return from_poly(a.num * b.num);
    return RationalFunction(a.num * b.num, a.den * b.den);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) fail(Err::NonInvertibleBody, "division by zero rational function");
    return RationalFunction(a.num * b.den, a.den * b.num);
  }
  RationalFunction inverse() const { return RationalFunction(1) / *this; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  RationalFunction derivative(int var) const {
    return RationalFunction(num.derivative(var) * den - num * den.derivative(var), den * den);
  }

  /* Net exponent of `var` (numerator minus denominator) when `var` appears
     with a uniform exponent in each; nullopt if non-uniform. */
  std::optional<int> uniform_net_degree_in(int var) const {
    auto a = num.uniform_degree_in(var);
    auto b = den.uniform_degree_in(var);
    if (!a || !b) return std::nullopt;
    return *a - *b;
  }

  std::vector<int> variables() const {
    std::vector<int> vs = num.variables();
    for (int v : den.variables())
      if (!std::binary_search(vs.begin(), vs.end(), v))
        vs.insert(std::upper_bound(vs.begin(), vs.end(), v), v);
    return vs;
  }

  std::complex<double> eval_complex(const std::map<int, std::complex<double>>& point) const {
    std::complex<double> d = den.eval_complex(point);
    if (std::abs(d) < 1e-13) fail(Err::PoleAtPoint, "denominator vanishes at sample point");
    return num.eval_complex(point) / d;
  }

  std::string str() const {
    auto nm = +[](int id) { return sym_name(id); };
    if (den.is_one()) return num.str(nm);
    return "(" + num.str(nm) + ")/(" + den.str(nm) + ")";
  }
};

}  // namespace nuchern
