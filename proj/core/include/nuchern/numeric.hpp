#pragma once

#include <cmath>
#include <complex>
#include <map>

#include "nuchern/grassmann.hpp"

namespace nuchern {

using Cx = std::complex<double>;

/* Same monomial structure as GrassmannElement, with complex coefficients. */
class NumericGrassmann {
 public:
  std::map<GKey, Cx> t;

  NumericGrassmann() = default;
  NumericGrassmann(Cx v) {  // NOLINT: implicit by design
    if (v != 0.0) t[GKey{}] = v;
  }
  static NumericGrassmann generator(int id) {
    NumericGrassmann x;
    x.t[GKey{{id}, 0}] = 1.0;
    return x;
  }
  static NumericGrassmann nu0_unit() {
    NumericGrassmann x;
    x.t[GKey{{}, 1}] = 1.0;
    return x;
  }

  bool is_zero() const { return t.empty(); }

  void add_term(const GKey& k, Cx v) {
    if (v == 0.0) return;
    auto it = t.find(k);
    if (it == t.end()) {
      t[k] = v;
    } else {
      it->second += v;
      if (it->second == 0.0) t.erase(it);
    }
  }

  friend NumericGrassmann operator+(const NumericGrassmann& a, const NumericGrassmann& b) {
    NumericGrassmann r = a;
    for (const auto& [k, v] : b.t) r.add_term(k, v);
    return r;
  }
  friend NumericGrassmann operator-(const NumericGrassmann& a, const NumericGrassmann& b) {
    NumericGrassmann r = a;
    for (const auto& [k, v] : b.t) r.add_term(k, -v);
    return r;
  }
  NumericGrassmann operator-() const {
    NumericGrassmann r;
    for (const auto& [k, v] : t) r.t[k] = -v;
    return r;
  }
  friend NumericGrassmann operator*(const NumericGrassmann& a, const NumericGrassmann& b) {
    NumericGrassmann r;
    for (const auto& [ka, va] : a.t)
      for (const auto& [kb, vb] : b.t) {
        auto merged = merge_odd(ka.odd, kb.odd);
        if (!merged) continue;
        Cx v = va * vb;
        if (merged->second < 0) v = -v;
        r.add_term(GKey{std::move(merged->first), (ka.nu0 + kb.nu0) % 2}, v);
      }
    return r;
  }
  friend NumericGrassmann operator*(const NumericGrassmann& a, Cx s) {
    NumericGrassmann r;
    if (s == 0.0) return r;
    for (const auto& [k, v] : a.t) r.t[k] = v * s;
    return r;
  }

  Cx body0() const {
    auto it = t.find(GKey{});
    return it == t.end() ? Cx(0.0) : it->second;
  }

  std::pair<NumericGrassmann, NumericGrassmann> nu0_split() const {
    NumericGrassmann a, b;
    for (const auto& [k, v] : t) (k.nu0 == 0 ? a : b).t[GKey{k.odd, 0}] = v;
    return {a, b};
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [k, v] : t) m = std::max(m, std::abs(v));
    return m;
  }
};

inline double ng_distance(const NumericGrassmann& a, const NumericGrassmann& b) {
  return (a - b).max_abs();
}

inline NumericGrassmann eval_numeric(const GrassmannElement& x, const std::map<int, Cx>& point) {
  NumericGrassmann r;
  for (const auto& [k, c] : x.t) r.add_term(k, c.eval_complex(point));
  return r;
}

/* ---------------- branch-resolved exp/log ---------------- */

enum class Window { ZeroTwoPi, MinusPiPi };

/* Argument of v inside the window; the excluded ray (and 0) raise BranchCut. */
inline double arg_in_window(Cx v, Window w) {
  if (v == 0.0) fail(Err::ZeroBody, "log of zero");
  double a = std::arg(v);  // (-pi, pi]
  if (w == Window::MinusPiPi) {
    if (std::imag(v) == 0.0 && std::real(v) < 0.0)
      fail(Err::BranchCut, "argument on the negative real ray");
    return a;
  }
  if (std::imag(v) == 0.0 && std::real(v) > 0.0)
    fail(Err::BranchCut, "argument on the positive real ray");
  return a <= 0.0 ? a + 2.0 * M_PI : a;
}

inline Cx log_branch(Cx v, Window w) {
  return Cx(std::log(std::abs(v)), arg_in_window(v, w));
}

inline NumericGrassmann ng_invert(const NumericGrassmann& x);

/* exp/log on nu0-free values: body function times terminating nilpotent series. */
inline NumericGrassmann ng_exp_pure(const NumericGrassmann& x) {
  Cx b = x.body0();
  NumericGrassmann n = x;
  n.t.erase(GKey{});
  NumericGrassmann acc(std::exp(b)), power(std::exp(b));
  for (int k = 1; !power.is_zero(); ++k) {
    power = power * n * Cx(1.0 / k, 0.0);
    acc = acc + power;
  }
  return acc;
}

inline NumericGrassmann ng_log_pure(const NumericGrassmann& x, Window w) {
  Cx b = x.body0();
  if (b == 0.0) fail(Err::ZeroBody, "log of element with zero body");
  NumericGrassmann n = x;
  n.t.erase(GKey{});
  NumericGrassmann u = n * (1.0 / b);  // nilpotent
  NumericGrassmann acc(log_branch(b, w));
  NumericGrassmann power(1.0);
  int sign = 1;
  for (int k = 1;; ++k) {
    power = power * u;
    if (power.is_zero()) break;
    acc = acc + power * Cx(sign * 1.0 / k, 0.0);
    sign = -sign;
  }
  return acc;
}

inline NumericGrassmann ng_invert(const NumericGrassmann& x) {
  auto split_invert = [](const NumericGrassmann& y) {
    Cx b = y.body0();
    if (b == 0.0) fail(Err::NonInvertibleBody, "numeric element has zero body");
    NumericGrassmann n = y;
    n.t.erase(GKey{});
    NumericGrassmann m = n * (1.0 / b);
    NumericGrassmann acc(1.0), power(1.0);
    int sign = 1;
    for (;;) {
      power = power * m;
      if (power.is_zero()) break;
      sign = -sign;
      acc = (sign < 0) ? acc - power : acc + power;
    }
    return acc * (1.0 / b);
  };
  auto [a, b] = x.nu0_split();
  if (b.is_zero()) return split_invert(a);
  NumericGrassmann p = split_invert(a + b);
  NumericGrassmann m = split_invert(a - b);
  return (p + m) * Cx(0.5, 0.0) + NumericGrassmann::nu0_unit() * ((p - m) * Cx(0.5, 0.0));
}

/* exp and log including nu0 components, via the central idempotent split. */
inline NumericGrassmann ng_exp(const NumericGrassmann& x) {
  auto [a, b] = x.nu0_split();
  if (b.is_zero()) return ng_exp_pure(a);
  NumericGrassmann p = ng_exp_pure(a + b);
  NumericGrassmann m = ng_exp_pure(a - b);
  return (p + m) * Cx(0.5, 0.0) + NumericGrassmann::nu0_unit() * ((p - m) * Cx(0.5, 0.0));
}

inline NumericGrassmann ng_log(const NumericGrassmann& x, Window w) {
  auto [a, b] = x.nu0_split();
  if (b.is_zero()) return ng_log_pure(a, w);
  NumericGrassmann p = ng_log_pure(a + b, w);
  NumericGrassmann m = ng_log_pure(a - b, w);
  return (p + m) * Cx(0.5, 0.0) + NumericGrassmann::nu0_unit() * ((p - m) * Cx(0.5, 0.0));
}

}  // namespace nuchern
