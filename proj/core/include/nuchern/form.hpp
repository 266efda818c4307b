#pragma once

#include <map>
#include <utility>
#include <vector>

#include "nuchern/grassmann.hpp"

namespace nuchern {

/* Total form-degree bound; terms above it are dropped and flagged. */
struct Truncation {
  static int& limit() {
    static int v = 6;
    return v;
  }
};

struct TruncationGuard {
  int saved;
  explicit TruncationGuard(int v) : saved(Truncation::limit()) { Truncation::limit() = v; }
  ~TruncationGuard() { Truncation::limit() = saved; }
};

/* Differential monomial: generator symbol ids, canonically sorted ascending.
   Each generator dw has degree 1 and parity p(w); two generators commute
   exactly when both are parity-1, otherwise they anticommute. Parity-1
   generators may repeat ((de)^2 != 0); parity-0 repeats vanish. */
struct DKey {
  std::vector<int> gens;

  friend bool operator<(const DKey& a, const DKey& b) {
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
    return a.gens < b.gens;
  }
  friend bool operator==(const DKey& a, const DKey& b) { return a.gens == b.gens; }

  int degree() const { return static_cast<int>(gens.size()); }
  int parity() const {
    int p = 0;
    for (int g : gens) p ^= sym_parity(g);
    return p;
  }
};

/* Sorts `gens` ascending; returns the swap sign, or 0 if a parity-0 generator
   repeats. Adjacent swap sign: +1 iff both generators are parity-1, else -1. */
inline int dkey_normalize(std::vector<int>& gens) {
  int sign = 1;
  for (size_t i = 1; i < gens.size(); ++i) {
    size_t j = i;
    while (j > 0 && gens[j - 1] > gens[j]) {
      if (!(sym_parity(gens[j - 1]) == 1 && sym_parity(gens[j]) == 1)) sign = -sign;
      std::swap(gens[j - 1], gens[j]);
      --j;
    }
  }
  for (size_t i = 1; i < gens.size(); ++i)
    if (gens[i] == gens[i - 1] && sym_parity(gens[i]) == 0) return 0;
  return sign;
}

class Form {
 public:
  std::map<DKey, GrassmannElement> t;
  bool overflow = false;

  Form() = default;
  static Form from_ge(const GrassmannElement& c) {
    Form f;
    if (!c.is_zero()) f.t[DKey{}] = c;
    return f;
  }
  static Form one() { return from_ge(GrassmannElement(1)); }
  static Form generator(int id) {
    Form f;
    f.t[DKey{{id}}] = GrassmannElement(1);
    return f;
  }

  bool is_zero() const { return t.empty(); }

  void add_term(const DKey& k, const GrassmannElement& c) {
    if (c.is_zero()) return;
    auto it = t.find(k);
    if (it == t.end()) {
      t[k] = c;
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) t.erase(it);
    }
  }

  friend Form operator+(const Form& a, const Form& b) {
    Form r = a;
    r.overflow = a.overflow || b.overflow;
    for (const auto& [k, c] : b.t) r.add_term(k, c);
    return r;
  }
  friend Form operator-(const Form& a, const Form& b) {
    Form r = a;
    r.overflow = a.overflow || b.overflow;
    for (const auto& [k, c] : b.t) r.add_term(k, -c);
    return r;
  }
  Form operator-() const {
    Form r;
    r.overflow = overflow;
    for (const auto& [k, c] : t) r.t[k] = -c;
    return r;
  }
  friend bool operator==(const Form& a, const Form& b) { return a.t == b.t; }
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  /* Left multiplication by a coefficient (coefficients live left of the
     differential monomial, so no sign arises). */
  friend Form operator*(const GrassmannElement& c, const Form& f) {
    Form r;
    r.overflow = f.overflow;
    for (const auto& [k, fc] : f.t) r.add_term(k, c * fc);
    return r;
  }

  std::string str() const {
    if (t.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : t) {
      if (!first) s += " + ";
      first = false;
      s += "(" + c.str() + ")";
      for (int g : k.gens) s += "*d" + sym_name(g);
    }
    return s;
  }
};

/* Splits a GrassmannElement into its parity-0 and parity-1 parts. */
inline std::pair<GrassmannElement, GrassmannElement> parity_split(const GrassmannElement& c) {
  GrassmannElement even, odd;
  for (const auto& [k, v] : c.t) (k.odd.size() % 2 == 0 ? even : odd).t[k] = v;
  return {even, odd};
}

inline Form wedge(const Form& a, const Form& b) {
  Form r;
  r.overflow = a.overflow || b.overflow;
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) {
      int deg = ka.degree() + kb.degree();
      if (deg > Truncation::limit()) {
        r.overflow = true;
        continue;
      }
      /* move cb (coefficient of the right factor) across ka: each parity-1
         part of cb picks up (-1)^{p(ka)} */
      auto [cbe, cbo] = parity_split(cb);
      GrassmannElement coeff = ca * cbe;
      if (!cbo.is_zero()) {
        GrassmannElement oddpart = ca * cbo;
        if (ka.parity() == 1) oddpart = -oddpart;
        coeff = coeff + oddpart;
      }
      if (coeff.is_zero()) continue;
      std::vector<int> gens = ka.gens;
      gens.insert(gens.end(), kb.gens.begin(), kb.gens.end());
      int sign = dkey_normalize(gens);
      if (sign == 0) continue;
      if (sign < 0) coeff = -coeff;
      r.add_term(DKey{std::move(gens)}, coeff);
    }
  return r;
}

/* d of a GrassmannElement, as a 1-form. On coefficients it is the total
   differential over parity-0 variables; on a sorted odd monomial e_{l1}..e_{lr}
   it contributes sum_t (-1)^{r-t} (monomial without l_t) * de_{l_t}. */
inline Form d_ge(const GrassmannElement& x) {
  Form r;
  for (const auto& [k, c] : x.t) {
    GrassmannElement mono;  // the odd monomial together with nu0
    mono.t[k] = RationalFunction(1);
    for (int v : c.variables()) {
      if (Symtab::info(v).kind == SymKind::Constant) continue;
      RationalFunction dc = c.derivative(v);
      if (dc.is_zero()) continue;
      r.add_term(DKey{{v}}, mono * dc);
    }
    int rr = static_cast<int>(k.odd.size());
    for (int tpos = 0; tpos < rr; ++tpos) {
      std::vector<int> rest;
      for (int i = 0; i < rr; ++i)
        if (i != tpos) rest.push_back(k.odd[i]);
      GrassmannElement coeff;
      coeff.t[GKey{std::move(rest), k.nu0}] = c;
      if ((rr - 1 - tpos) % 2 == 1) coeff = -coeff;
      r.add_term(DKey{{k.odd[static_cast<size_t>(tpos)]}}, coeff);
    }
  }
  return r;
}

inline Form exterior_d(const Form& f) {
  Form r;
  r.overflow = f.overflow;
  for (const auto& [k, c] : f.t) {
    Form dk = d_ge(c);
    Form mono;
    mono.t[k] = GrassmannElement(1);
    r = r + wedge(dk, mono);
  }
  return r;
}

inline Form dlog(const GrassmannElement& h) {
  if (h.parity() == 1) fail(Err::NonInvertibleBody, "dlog of an odd element");
  return ge_invert(h) * d_ge(h);
}

/* Pullback along a substitution: coefficients substitute, each generator dw
   maps to d(image of w). */
inline Form pullback(const Form& f, const Substitution& sigma) {
  Form r;
  r.overflow = f.overflow;
  for (const auto& [k, c] : f.t) {
    Form acc = Form::from_ge(substitute(c, sigma));
    for (int g : k.gens) acc = wedge(acc, d_ge(subst_image(sigma, g)));
    r = r + acc;
  }
  return r;
}

/* Formal partition of unity: rho_1..rho_{N-1} are free scalars and
   rho_N = 1 - sum rho, so sum rho = 1 and sum drho = 0 identically. */
struct PartitionFamily {
  int n = 0;
  std::vector<int> rho_ids;  // n-1 ids

  GrassmannElement rho(int k) const {  // 0-based
    if (k < 0 || k >= n) fail(Err::IndexOutOfRange, "partition index");
    if (k < n - 1) return GrassmannElement::variable(rho_ids[static_cast<size_t>(k)]);
    GrassmannElement r(1);
    for (int id : rho_ids) r = r - GrassmannElement::variable(id);
    return r;
  }
  Form drho(int k) const {
    if (k < 0 || k >= n) fail(Err::IndexOutOfRange, "partition index");
    if (k < n - 1) return Form::generator(rho_ids[static_cast<size_t>(k)]);
    Form r;
    for (int id : rho_ids) r = r - Form::generator(id);
    return r;
  }
};

inline PartitionFamily make_partition(Registry& reg, int n, const std::string& prefix = "rho") {
  if (n < 2) fail(Err::BadCount, "partition family needs at least 2 members");
  PartitionFamily p;
  p.n = n;
  for (int k = 0; k + 1 < n; ++k)
    p.rho_ids.push_back(reg.register_symbol(prefix + std::to_string(k + 1), SymKind::Scalar));
  return p;
}

}  // namespace nuchern
