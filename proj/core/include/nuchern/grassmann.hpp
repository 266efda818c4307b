#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nuchern/ratfun.hpp"

namespace nuchern {

/* A basis element: strictly sorted odd generator ids times nu0^{0or1}. */
struct GKey {
  std::vector<int> odd;
  int nu0 = 0;

  friend bool operator<(const GKey& a, const GKey& b) {
    if (a.nu0 != b.nu0) return a.nu0 < b.nu0;
    return a.odd < b.odd;
  }
  friend bool operator==(const GKey& a, const GKey& b) { return a.nu0 == b.nu0 && a.odd == b.odd; }
};

/* Merge two strictly sorted odd monomials; returns the sign of the shuffle or
   nullopt when a generator repeats (odd generators square to zero). */
inline std::optional<std::pair<std::vector<int>, int>> merge_odd(const std::vector<int>& a,
                                                                 const std::vector<int>& b) {
  std::vector<int> r;
  r.reserve(a.size() + b.size());
  int sign = 1;
  size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    if (a[ia] == b[ib]) return std::nullopt;
    if (a[ia] < b[ib]) {
      r.push_back(a[ia++]);
    } else {
      /* b[ib] hops over the remaining a-generators */
      if ((a.size() - ia) % 2 == 1) sign = -sign;
      r.push_back(b[ib++]);
    }
  }
  while (ia < a.size()) r.push_back(a[ia++]);
  while (ib < b.size()) r.push_back(b[ib++]);
  return std::make_pair(std::move(r), sign);
}

class GrassmannElement {
 public:
  std::map<GKey, RationalFunction> t;

  GrassmannElement() = default;
  GrassmannElement(long v) {  // NOLINT: implicit by design
    if (v != 0) t[GKey{}] = RationalFunction(v);
  }
  static GrassmannElement from_coeff(const RationalFunction& c) {
    GrassmannElement x;
    if (!c.is_zero()) x.t[GKey{}] = c;
    return x;
  }
  static GrassmannElement scalar(const GaussianRational& c) {
    return from_coeff(RationalFunction::constant(c));
  }
  static GrassmannElement variable(int id) {
    GrassmannElement x;
    if (sym_parity(id) == 0) {
      x.t[GKey{}] = RationalFunction::variable(id);
    } else {
      x.t[GKey{{id}, 0}] = RationalFunction(1);
    }
    return x;
  }
  static GrassmannElement nu0_unit() {
    GrassmannElement x;
    x.t[GKey{{}, 1}] = RationalFunction(1);
    return x;
  }

  bool is_zero() const { return t.empty(); }
  bool is_one() const { return t.size() == 1 && t.begin()->first == GKey{} && t.begin()->second.is_one(); }

  /* 0, 1, or -1 for parity-mixed (nu0 is even). */
  int parity() const {
    int p = -2;
    for (const auto& [k, c] : t) {
      int tp = static_cast<int>(k.odd.size()) % 2;
      if (p == -2)
        p = tp;
      else if (p != tp)
        return -1;
    }
    return p == -2 ? 0 : p;
  }

  void add_term(const GKey& k, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = t.find(k);
    if (it == t.end()) {
      t[k] = c;
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) t.erase(it);
    }
  }

  friend GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b) {
    GrassmannElement r = a;
    for (const auto& [k, c] : b.t) r.add_term(k, c);
    return r;
  }
  friend GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b) {
    GrassmannElement r = a;
    for (const auto& [k, c] : b.t) r.add_term(k, -c);
    return r;
  }
  GrassmannElement operator-() const {
    GrassmannElement r;
    for (const auto& [k, c] : t) r.t[k] = -c;
    return r;
  }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    GrassmannElement r;
    for (const auto& [ka, ca] : a.t)
      for (const auto& [kb, cb] : b.t) {
        auto merged = merge_odd(ka.odd, kb.odd);
        if (!merged) continue;
        RationalFunction c = ca * cb;
        if (merged->second < 0) c = -c;
        r.add_term(GKey{std::move(merged->first), (ka.nu0 + kb.nu0) % 2}, c);
      }
    return r;
  }
  friend GrassmannElement operator*(const GrassmannElement& a, const RationalFunction& c) {
    GrassmannElement r;
    for (const auto& [k, cc] : a.t) r.add_term(k, cc * c);
    return r;
  }
  friend bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
    return a.t == b.t;
  }
  friend bool operator!=(const GrassmannElement& a, const GrassmannElement& b) {
    return !(a == b);
  }

  /* Coefficient of the empty odd monomial; both nu0-components retained. */
  GrassmannElement body() const {
    GrassmannElement r;
    for (const auto& [k, c] : t)
      if (k.odd.empty()) r.t[k] = c;
    return r;
  }

  /* nu0-free and nu0-proportional components, as nu0-free elements. */
  std::pair<GrassmannElement, GrassmannElement> nu0_split() const {
    GrassmannElement a, b;
    for (const auto& [k, c] : t) {
      GKey kk{k.odd, 0};
      (k.nu0 == 0 ? a : b).t[kk] = c;
    }
    return {a, b};
  }

  std::string str() const;
};

inline GrassmannElement operator*(const RationalFunction& c, const GrassmannElement& a) {
  return a * c;
}

/* Inverse of a nu0-free element: coefficient inverse of the body times the
   terminating geometric series on the nilpotent remainder. */
inline GrassmannElement invert_nu0_free(const GrassmannElement& x) {
  RationalFunction b;
  auto it = x.t.find(GKey{});
  if (it != x.t.end()) b = it->second;
  if (b.is_zero()) fail(Err::NonInvertibleBody, "element has zero body");
  GrassmannElement n = x;
  n.t.erase(GKey{});
  RationalFunction binv = b.inverse();
  GrassmannElement m = n * binv;  // nilpotent
  GrassmannElement acc(1), power(1);
  int sign = 1;
  for (;;) {
    power = power * m;
    if (power.is_zero()) break;
    sign = -sign;
    acc = (sign < 0) ? acc - power : acc + power;
  }
  return acc * binv;
}

inline GrassmannElement ge_invert(const GrassmannElement& x) {
  auto [a, b] = x.nu0_split();
  if (b.is_zero()) return invert_nu0_free(a);
  /* Split along the central idempotents (1 +- nu0)/2. */
  GrassmannElement p = invert_nu0_free(a + b);
  GrassmannElement m = invert_nu0_free(a - b);
  RationalFunction half = RationalFunction(1) / RationalFunction(2);
  GrassmannElement even = (p + m) * half;
  GrassmannElement oddc = (p - m) * half;
  return even + GrassmannElement::nu0_unit() * oddc;
}

/* ---------------- nu_apply ---------------- */

struct NuContext {
  enum class Mode { Free, Chart } mode = Mode::Free;
  int free_nu1 = -1;    // free mode: the registered nu(1) generator
  int chart_e1 = -1;    // chart mode: anchor odd coordinate of the odd unit
  int chart_nue1 = -1;  // chart mode: its partner
};

namespace detail {

/* Lowest eligible parity-0 variable of `c` for the empty-monomial rule:
   uniform odd net degree; nu(e)-partners first, then (free mode) coordinates. */
inline int pullable_variable(const RationalFunction& c, const NuContext& ctx) {
  int best = -1;
  for (int v : c.variables()) {
    const SymbolInfo& si = Symtab::info(v);
    if (si.kind != SymKind::NuEven) continue;
    auto d = c.uniform_net_degree_in(v);
    if (d && (*d % 2 != 0)) {
      best = v;
      break;  // variables() is ascending, so this is the lowest id
    }
  }
  if (best >= 0) return best;
  if (ctx.mode == NuContext::Mode::Free) {
    for (int v : c.variables()) {
      const SymbolInfo& si = Symtab::info(v);
      if (si.kind != SymKind::EvenCoord || si.partner < 0) continue;
      auto d = c.uniform_net_degree_in(v);
      if (d && (*d % 2 != 0)) return v;
    }
  }
  return -1;
}

}  // namespace detail

/* The odd involution, extended term-wise by even-linearity:
   nu(c*g) = c*nu(g) for a single generator g; a purely even term is factored
   through the lowest uniformly odd-degree partner variable when possible and
   otherwise multiplied by the unit image (the anchor odd unit in chart mode,
   the nu(1) generator in free mode). */
inline GrassmannElement nu_apply(const GrassmannElement& x, const NuContext& ctx) {
  GrassmannElement r;
  for (const auto& [k, c] : x.t) {
    if (k.odd.size() >= 2)
      fail(Err::UndefinedNu, "nu of a product of " + std::to_string(k.odd.size()) +
                                 " odd generators is undefined");
    if (k.odd.size() == 1) {
      int g = k.odd[0];
      const SymbolInfo& si = Symtab::info(g);
      if (si.kind == SymKind::OddCoord) {
        if (si.partner < 0) fail(Err::UndefinedNu, "no partner registered for " + si.name);
        r.add_term(GKey{{}, k.nu0}, c * RationalFunction::variable(si.partner));
      } else if (si.kind == SymKind::NuOdd) {
        r.add_term(GKey{{}, k.nu0}, c * RationalFunction::variable(si.partner));
      } else if (si.kind == SymKind::NuOne) {
        r.add_term(GKey{{}, k.nu0}, c);
      } else {
        fail(Err::UndefinedNu, "nu undefined on generator " + si.name);
      }
      continue;
    }
    /* purely even term: factor through a uniformly odd-degree partner
       variable when one is visible; otherwise multiply by the unit image,
       which in chart mode is the anchor odd unit e_a/nu(e_a). */
    int v = detail::pullable_variable(c, ctx);
    if (v >= 0) {
      const SymbolInfo& si = Symtab::info(v);
      RationalFunction cc = c / RationalFunction::variable(v);
      r.add_term(GKey{{si.partner}, k.nu0}, cc);
      continue;
    }
    if (ctx.mode == NuContext::Mode::Chart) {
      if (ctx.chart_e1 < 0 || ctx.chart_nue1 < 0)
        fail(Err::UndefinedNu, "chart nu context lacks an odd unit");
      r.add_term(GKey{{ctx.chart_e1}, k.nu0},
                 c / RationalFunction::variable(ctx.chart_nue1));
      continue;
    }
    if (ctx.free_nu1 < 0) fail(Err::UndefinedNu, "no nu(1) generator available");
    r.add_term(GKey{{ctx.free_nu1}, k.nu0}, c);
  }
  return r;
}

/* ---------------- substitute ---------------- */

using Substitution = std::map<int, GrassmannElement>;

inline GrassmannElement subst_image(const Substitution& sigma, int id) {
  auto it = sigma.find(id);
  return it == sigma.end() ? GrassmannElement::variable(id) : it->second;
}

inline GrassmannElement eval_poly_grassmann(const Polynomial& p, const Substitution& sigma) {
  GrassmannElement acc;
  for (const auto& [m, c] : p.t) {
    GrassmannElement v = GrassmannElement::scalar(c);
    for (const auto& [var, e] : m) {
      GrassmannElement img = subst_image(sigma, var);
      for (int i = 0; i < e; ++i) v = v * img;
    }
    acc = acc + v;
  }
  return acc;
}

inline GrassmannElement substitute(const GrassmannElement& x, const Substitution& sigma) {
  for (const auto& [id, img] : sigma) {
    int p = img.parity();
    if (p == -1 || (!img.is_zero() && p != sym_parity(id)))
      fail(Err::ParityMismatch,
           "image of " + sym_name(id) + " is not parity-homogeneous of matching parity");
  }
  GrassmannElement r;
  for (const auto& [k, c] : x.t) {
    GrassmannElement numv = eval_poly_grassmann(c.num, sigma);
    GrassmannElement denv = eval_poly_grassmann(c.den, sigma);
    GrassmannElement term = numv * ge_invert(denv);
    for (int g : k.odd) term = term * subst_image(sigma, g);
    if (k.nu0) term = term * GrassmannElement::nu0_unit();
    r = r + term;
  }
  return r;
}

inline std::string GrassmannElement::str() const {
  if (t.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, c] : t) {
    if (!first) s += " + ";
    first = false;
    s += "(" + c.str() + ")";
    if (k.nu0) s += "*nu0";
    for (int g : k.odd) s += "*" + sym_name(g);
  }
  return s;
}

}  // namespace nuchern
