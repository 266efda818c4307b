#pragma once

#include <algorithm>
#include <climits>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuchern/rational.hpp"

namespace nuchern {

/* Sparse monomial: (variable id, exponent > 0) pairs sorted by variable id. */
using Monomial = std::vector<std::pair<int, int>>;

inline int mono_deg(const Monomial& m) {
  int d = 0;
  for (const auto& p : m) d += p.second;
  return d;
}

inline int mono_deg_in(const Monomial& m, int var) {
  for (const auto& p : m)
    if (p.first == var) return p.second;
  return 0;
}

/* Graded lexicographic order with lower-id variables ranked higher.
   This is a genuine monomial order (compatible with multiplication), which
   exact division and canonical leading terms rely on. */
inline bool mono_less(const Monomial& a, const Monomial& b) {
  int da = mono_deg(a), db = mono_deg(b);
  if (da != db) return da < db;
  size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    int va = ia < a.size() ? a[ia].first : INT_MAX;
    int vb = ib < b.size() ? b[ib].first : INT_MAX;
    if (va == vb) {
      if (a[ia].second != b[ib].second) return a[ia].second < b[ib].second;
      ++ia, ++ib;
    } else if (va < vb) {
      return false;  // a carries the earlier variable: a is larger
    } else {
      return true;
    }
  }
  return false;
}

struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_less(a, b); }
};

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    int va = ia < a.size() ? a[ia].first : INT_MAX;
    int vb = ib < b.size() ? b[ib].first : INT_MAX;
    if (va == vb) {
      r.emplace_back(va, a[ia].second + b[ib].second);
      ++ia, ++ib;
    } else if (va < vb) {
      r.push_back(a[ia++]);
    } else {
      r.push_back(b[ib++]);
    }
  }
  return r;
}

inline std::optional<Monomial> mono_div(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t ia = 0;
  for (const auto& [v, e] : b) {
    while (ia < a.size() && a[ia].first < v) r.push_back(a[ia++]);
    if (ia >= a.size() || a[ia].first != v || a[ia].second < e) return std::nullopt;
    if (a[ia].second > e) r.emplace_back(v, a[ia].second - e);
    ++ia;
  }
  while (ia < a.size()) r.push_back(a[ia++]);
  return r;
}

class Polynomial {
 public:
  std::map<Monomial, GaussianRational, MonoLess> t;

  Polynomial() = default;
  Polynomial(long v) {  // NOLINT: implicit by design
    if (v != 0) t[Monomial{}] = GaussianRational(v);
  }
  static Polynomial constant(const GaussianRational& c) {
    Polynomial p;
    if (!c.is_zero()) p.t[Monomial{}] = c;
    return p;
  }
  static Polynomial variable(int id, int exp = 1) {
    Polynomial p;
    if (exp == 0) return constant(1);
    p.t[Monomial{{id, exp}}] = GaussianRational(1);
    return p;
  }
  static Polynomial term(const GaussianRational& c, const Monomial& m) {
    Polynomial p;
    if (!c.is_zero()) p.t[m] = c;
    return p;
  }

  bool is_zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.empty()); }
  GaussianRational constant_value() const {
    if (t.empty()) return GaussianRational(0);
    auto it = t.find(Monomial{});
    return it == t.end() ? GaussianRational(0) : it->second;
  }
  bool is_one() const { return is_constant() && constant_value().is_one(); }

  void add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto it = t.find(m);
    if (it == t.end()) {
      t[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) t.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.t) r.add_term(m, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial r = a;
    for (const auto& [m, c] : b.t) r.add_term(m, -c);
    return r;
  }
  Polynomial operator-() const {
    Polynomial r;
    for (const auto& [m, c] : t) r.t[m] = -c;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.t)
      for (const auto& [mb, cb] : b.t) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const GaussianRational& c) {
    Polynomial r;
    if (c.is_zero()) return r;
    for (const auto& [m, cc] : a.t) r.t[m] = cc * c;
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.t.size() != b.t.size()) return false;
    auto ia = a.t.begin();
    auto ib = b.t.begin();
    for (; ia != a.t.end(); ++ia, ++ib)
      if (ia->first != ib->first || !(ia->second == ib->second)) return false;
    return true;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial pow(int e) const {
    Polynomial r = constant(1);
    Polynomial base = *this;
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
  }

  int degree() const { return t.empty() ? -1 : mono_deg(t.rbegin()->first); }
  int degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : t) d = std::max(d, mono_deg_in(m, var));
    return d;
  }
  /* Exponent of `var` if it is the same in every term; nullopt otherwise. */
  std::optional<int> uniform_degree_in(int var) const {
    if (t.empty()) return 0;
    int d = mono_deg_in(t.begin()->first, var);
    for (const auto& [m, c] : t)
      if (mono_deg_in(m, var) != d) return std::nullopt;
    return d;
  }

  const Monomial& leading_monomial() const { return t.rbegin()->first; }
  const GaussianRational& leading_coefficient() const { return t.rbegin()->second; }

  std::vector<int> variables() const {
    std::vector<int> vs;
    for (const auto& [m, c] : t)
      for (const auto& [v, e] : m)
        if (!std::binary_search(vs.begin(), vs.end(), v))
          vs.insert(std::upper_bound(vs.begin(), vs.end(), v), v);
    return vs;
  }

  Polynomial derivative(int var) const {
    Polynomial r;
    for (const auto& [m, c] : t) {
      int e = mono_deg_in(m, var);
      if (e == 0) continue;
      Monomial mm;
      for (const auto& [v, ex] : m) {
        if (v == var) {
          if (ex > 1) mm.emplace_back(v, ex - 1);
        } else {
          mm.emplace_back(v, ex);
        }
      }
      r.add_term(mm, c * GaussianRational(Rat(e)));
    }
    return r;
  }

  std::complex<double> eval_complex(const std::map<int, std::complex<double>>& point) const {
    std::complex<double> acc = 0.0;
    for (const auto& [m, c] : t) {
      std::complex<double> v = c.to_complex();
      for (const auto& [var, e] : m) {
        auto it = point.find(var);
        if (it == point.end()) fail(Err::PoleAtPoint, "no value assigned to " + sym_name_safe(var));
        for (int i = 0; i < e; ++i) v *= it->second;
      }
      acc += v;
    }
    return acc;
  }

  std::string str(std::string (*name)(int)) const;

 private:
  static std::string sym_name_safe(int var) { return "symbol#" + std::to_string(var); }
};

/* -------- exact division and gcd (primitive PRS) -------- */

inline std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return std::nullopt;
  Polynomial q, r = a;
  while (!r.is_zero()) {
    auto m = mono_div(r.leading_monomial(), b.leading_monomial());
    if (!m) return std::nullopt;
    GaussianRational c = r.leading_coefficient() / b.leading_coefficient();
    Polynomial tq = Polynomial::term(c, *m);
    q = q + tq;
    r = r - tq * b;
  }
  return q;
}

/* Coefficients of `p` viewed as univariate in `var`; index = exponent. */
inline std::vector<Polynomial> coeffs_in(const Polynomial& p, int var) {
  std::vector<Polynomial> cs(static_cast<size_t>(p.degree_in(var)) + 1);
  for (const auto& [m, c] : p.t) {
    int e = mono_deg_in(m, var);
    Monomial mm;
    for (const auto& [v, ex] : m)
      if (v != var) mm.emplace_back(v, ex);
    cs[static_cast<size_t>(e)].add_term(mm, c);
  }
  return cs;
}

inline Polynomial from_coeffs_in(const std::vector<Polynomial>& cs, int var) {
  Polynomial p;
  for (size_t e = 0; e < cs.size(); ++e)
    p = p + cs[e] * Polynomial::variable(var, static_cast<int>(e));
  return p;
}

Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);

inline Polynomial monic_normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  GaussianRational lc = p.leading_coefficient();
  return p * lc.inverse();
}

inline Polynomial content_in(const Polynomial& p, int var) {
  Polynomial g;
  for (const auto& c : coeffs_in(p, var)) g = poly_gcd(g, c);
  return g;
}

inline Polynomial primitive_in(const Polynomial& p, int var) {
  if (p.is_zero()) return p;
  auto q = divide_exact(p, content_in(p, var));
  return *q;
}

/* Sparse pseudo-remainder of a by b in variable var (deg_var a >= deg_var b > 0). */
inline Polynomial pseudo_rem(Polynomial a, const Polynomial& b, int var) {
  int db = b.degree_in(var);
  auto bc = coeffs_in(b, var);
  Polynomial lb = bc.back();
  while (!a.is_zero() && a.degree_in(var) >= db) {
    int da = a.degree_in(var);
    auto ac = coeffs_in(a, var);
    Polynomial la = ac.back();
    a = a * lb - b * (la * Polynomial::variable(var, da - db));
  }
  return a;
}

inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return monic_normalize(b);
  if (b.is_zero()) return monic_normalize(a);
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  auto va = a.variables();
  auto vb = b.variables();
  int x = std::max(va.back(), vb.back());
  int dxa = a.degree_in(x), dxb = b.degree_in(x);
  if (dxa == 0) return poly_gcd(a, content_in(b, x));
  if (dxb == 0) return poly_gcd(content_in(a, x), b);

  Polynomial ca = content_in(a, x), cb = content_in(b, x);
  Polynomial g0 = poly_gcd(ca, cb);
  Polynomial A = *divide_exact(a, ca), B = *divide_exact(b, cb);
  if (A.degree_in(x) < B.degree_in(x)) std::swap(A, B);
  for (;;) {
    if (B.is_zero()) return monic_normalize(g0 * primitive_in(A, x));
    if (B.degree_in(x) == 0) return monic_normalize(g0);
    Polynomial R = pseudo_rem(A, B, x);
    A = B;
    B = R.is_zero() ? R : primitive_in(R, x);
  }
}

inline std::string Polynomial::str(std::string (*name)(int)) const {
  if (t.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    if (!first) s += " + ";
    first = false;
    s += it->second.str();
    for (const auto& [v, e] : it->first) {
      s += "*" + name(v);
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace nuchern
