#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "nuchern/numeric.hpp"
#include "nuchern/report.hpp"
#include "nuchern/sexpr.hpp"

namespace nuchern {

/* One chart of a nu-projective space. Charts 1..m+1 are standard; charts
   m+2..m+n+1 are nonstandard (their label carries the 1nu token and the
   lowest odd coordinate is promoted, as nu(e1), into the spare even slot).
   Every chart owns m even coordinates, n odd coordinates and their n even
   partners; nu(z_k) and nu(1) are composites (z_k*nu(1) and e1/nu(e1)), not
   free generators, which is exactly what makes the gluing morphisms of the
   pasting equation roundtrip. */
struct Chart {
  int index = 0;
  bool standard = true;
  std::vector<int> z;    // m even coordinate ids
  std::vector<int> e;    // n odd coordinate ids
  std::vector<int> nue;  // n partner ids
  /* Index of the pair anchoring the odd unit.  Every chart must express the
     same global unit; in a nonstandard chart whose 1nu token sits past the
     first odd slot, that is the first-slot pair e2/nu(e2), not e1/nu(e1). */
  int anchor = 0;

  NuContext nuctx() const {
    NuContext c;
    c.mode = NuContext::Mode::Chart;
    c.chart_e1 = e[static_cast<size_t>(anchor)];
    c.chart_nue1 = nue[static_cast<size_t>(anchor)];
    return c;
  }
  /* The chart's odd unit nu(1) = e_a / nu(e_a) at the anchor pair. */
  GrassmannElement nu_one() const {
    return GrassmannElement::variable(e[static_cast<size_t>(anchor)]) *
           RationalFunction::variable(nue[static_cast<size_t>(anchor)]).inverse();
  }
  /* The chart's nu(z_k) = z_k * nu(1). */
  GrassmannElement nu_z(int k) const {
    return GrassmannElement::variable(z[static_cast<size_t>(k)]) * nu_one();
  }
  std::vector<int> parity0_symbols() const {
    std::vector<int> v = z;
    v.insert(v.end(), nue.begin(), nue.end());
    return v;
  }
};

struct LabelEntry {
  enum Tag { Expr, OneNu } tag = Expr;
  GrassmannElement v;
  std::string display;
};

struct ChartAtlas {
  int m = 0, n = 0;
  std::shared_ptr<Registry> reg = std::make_shared<Registry>();
  std::vector<Chart> charts;  // index 0 is chart 1

  int nchart() const { return m + n + 1; }
  const Chart& chart(int i) const {
    if (i < 1 || i > nchart()) fail(Err::IndexOutOfRange, "chart index " + std::to_string(i));
    return charts[static_cast<size_t>(i - 1)];
  }
  /* Index parity: 0 for standard charts, 1 for nonstandard. */
  int pidx(int i) const { return i <= m + 1 ? 0 : 1; }

  std::vector<LabelEntry> label(int i) const;
  std::string label_text(int i) const;
};

inline std::string coord_display(int id) {
  const SymbolInfo& s = Symtab::info(id);
  std::string sup = "^(" + std::to_string(s.chart) + ")";
  switch (s.kind) {
    case SymKind::EvenCoord: return "z" + std::to_string(s.index) + sup;
    case SymKind::OddCoord: return "e" + std::to_string(s.index) + sup;
    case SymKind::NuEven: return "nu(e" + std::to_string(s.index) + sup + ")";
    case SymKind::NuOdd: return "nu(z" + std::to_string(s.index) + sup + ")";
    default: return s.name;
  }
}

inline ChartAtlas build_atlas(int m, int n) {
  if (m < 1 || n < 1) fail(Err::BadDimensions, "atlas needs m >= 1 and n >= 1");
  ChartAtlas a;
  a.m = m;
  a.n = n;
  for (int i = 1; i <= m + n + 1; ++i) {
    Chart c;
    c.index = i;
    c.standard = i <= m + 1;
    if (i > m + 2) c.anchor = 1;  // 1nu token past the first odd slot
    std::string sup = "@" + std::to_string(i);
    for (int k = 1; k <= m; ++k)
      c.z.push_back(a.reg->register_symbol("z" + std::to_string(k) + sup, SymKind::EvenCoord, i, k));
    for (int l = 1; l <= n; ++l) {
      auto [e, ne] = a.reg->register_pair("e" + std::to_string(l) + sup, SymKind::OddCoord, i, l);
      c.e.push_back(e);
      c.nue.push_back(ne);
    }
    a.charts.push_back(std::move(c));
  }
  return a;
}

/* Label row of chart i: slots 1..m+1 even (divider) then m+2..m+n+1 odd. */
inline std::vector<LabelEntry> ChartAtlas::label(int i) const {
  const Chart& c = chart(i);
  std::vector<LabelEntry> row(static_cast<size_t>(m + n + 1));
  auto expr = [&](int id) {
    LabelEntry e;
    e.v = GrassmannElement::variable(id);
    e.display = coord_display(id);
    return e;
  };
  if (c.standard) {
    int zk = 0;
    for (int s = 1; s <= m + 1; ++s) {
      if (s == i) {
        row[static_cast<size_t>(s - 1)] = LabelEntry{LabelEntry::Expr, GrassmannElement(1), "1"};
      } else {
        row[static_cast<size_t>(s - 1)] = expr(c.z[static_cast<size_t>(zk++)]);
      }
    }
    for (int l = 1; l <= n; ++l) row[static_cast<size_t>(m + l)] = expr(c.e[static_cast<size_t>(l - 1)]);
  } else {
    for (int k = 1; k <= m; ++k) row[static_cast<size_t>(k - 1)] = expr(c.z[static_cast<size_t>(k - 1)]);
    row[static_cast<size_t>(m)] = expr(c.nue[0]);
    int el = 1;  // e2.. fill the odd slots other than slot i
    for (int s = m + 2; s <= m + n + 1; ++s) {
      if (s == i) {
        LabelEntry t;
        t.tag = LabelEntry::OneNu;
        t.display = "1nu";
        row[static_cast<size_t>(s - 1)] = t;
      } else {
        row[static_cast<size_t>(s - 1)] = expr(c.e[static_cast<size_t>(el++)]);
      }
    }
  }
  return row;
}

inline std::string ChartAtlas::label_text(int i) const {
  auto row = label(i);
  std::string s = "A" + std::to_string(i) + " = (";
  for (int t = 0; t < m + n + 1; ++t) {
    if (t == m + 1) s += "| ";
    s += row[static_cast<size_t>(t)].display;
    if (t != m && t + 1 < m + n + 1) s += ", ";
    if (t == m) s += " ";
  }
  return s + ")";
}

/* M'_j(A_i): the j-th label entry of chart i, with nu applied when slot j is
   odd, so the result is always parity-0. M'_i(A_i) = 1 by convention. */
inline GrassmannElement entry_M_prime(const ChartAtlas& a, int j, int i) {
  if (j < 1 || j > a.nchart()) fail(Err::IndexOutOfRange, "slot index " + std::to_string(j));
  if (j == i) return GrassmannElement(1);
  auto row = a.label(i);
  const LabelEntry& ent = row[static_cast<size_t>(j - 1)];
  if (ent.tag == LabelEntry::OneNu)
    fail(Err::UnresolvableNu, "1nu entry outside its own chart slot");
  if (a.pidx(j) == 0) return ent.v;
  return nu_apply(ent.v, a.chart(i).nuctx());
}

/* Transition map i -> j: images of every chart-i symbol as expressions in
   chart-j symbols, extracted slot-wise from the pasting equation
   D_i((M'_i(A_j))^{-1} A_j) = D_i A_i, with the 1nu contraction
   w * 1nu = nu(w) and partner symbols filled in nu-equivariantly. */
struct TransitionMap {
  int src = 0, dst = 0;
  Substitution images;
};

inline TransitionMap transition(const ChartAtlas& a, int i, int j) {
  TransitionMap t;
  t.src = i;
  t.dst = j;
  const Chart& ci = a.chart(i);
  const Chart& cj = a.chart(j);
  if (i == j) {
    for (int id : ci.z) t.images[id] = GrassmannElement::variable(id);
    for (int id : ci.e) t.images[id] = GrassmannElement::variable(id);
    for (int id : ci.nue) t.images[id] = GrassmannElement::variable(id);
    return t;
  }
  GrassmannElement Zi = ge_invert(entry_M_prime(a, i, j));
  NuContext nj = cj.nuctx();
  auto rowi = a.label(i);
  auto rowj = a.label(j);
  for (int s = 1; s <= a.m + a.n + 1; ++s) {
    if (s == i) continue;  // D_i drops this slot
    const LabelEntry& wi = rowi[static_cast<size_t>(s - 1)];
    const LabelEntry& wj = rowj[static_cast<size_t>(s - 1)];
    GrassmannElement val = (wj.tag == LabelEntry::OneNu) ? nu_apply(Zi, nj) : Zi * wj.v;
    /* wi is a single chart-i coordinate (or nu(e1) in the promoted slot) */
    if (wi.tag == LabelEntry::OneNu) fail(Err::UnresolvableNu, "unexpected 1nu in source label");
    if (wi.v.t.size() != 1) fail(Err::UnresolvableNu, "source label entry is not a coordinate");
    const GKey& key = wi.v.t.begin()->first;
    int id;
    if (key.odd.empty()) {
      /* parity-0 entry: a z or the promoted nu(e1) */
      const Polynomial& num = wi.v.t.begin()->second.num;
      id = num.leading_monomial()[0].first;
    } else {
      id = key.odd[0];
    }
    t.images[id] = val;
    const SymbolInfo& si = Symtab::info(id);
    if (si.kind == SymKind::NuEven) {
      /* recover the odd coordinate under the promoted partner */
      t.images[si.partner] = nu_apply(val, nj);
    }
  }
  /* remaining partners, nu-equivariantly */
  for (size_t l = 0; l < ci.e.size(); ++l) {
    if (!t.images.count(ci.nue[l])) t.images[ci.nue[l]] = nu_apply(t.images.at(ci.e[l]), nj);
  }
  return t;
}

inline GrassmannElement apply_map(const TransitionMap& t, const GrassmannElement& x) {
  return substitute(x, t.images);
}

/* h_ij = nu0^{p(i)+p(j)} (M'_i(A_j))^{-1}, expressed in chart-j symbols. */
inline GrassmannElement line_cocycle(const ChartAtlas& a, int i, int j) {
  GrassmannElement h = ge_invert(entry_M_prime(a, i, j));
  if ((a.pidx(i) + a.pidx(j)) % 2 == 1) h = h * GrassmannElement::nu0_unit();
  return h;
}

/* Normal form in the chart algebras: nu is even-linear, so every odd
   coordinate satisfies e_l = nu(e_l) * e_a / nu(e_a) against its chart's
   anchor pair, and non-anchor odd generators rewrite onto the anchor one.
   Raw slot-wise transition images between two nonstandard charts name the
   same element through different pairs; equality is decided here. */
inline GrassmannElement chart_normal_form(const ChartAtlas& a, const GrassmannElement& x) {
  Substitution s;
  for (const Chart& c : a.charts) {
    size_t anc = static_cast<size_t>(c.anchor);
    for (size_t l = 0; l < c.e.size(); ++l) {
      if (l == anc) continue;
      s[c.e[l]] = GrassmannElement::variable(c.e[anc]) *
                  (RationalFunction::variable(c.nue[l]) /
                   RationalFunction::variable(c.nue[anc]));
    }
  }
  return substitute(x, s);
}

/* ---------------- verification ---------------- */

inline Report verify_gluing(const ChartAtlas& a) {
  Report rep;
  rep.command = "verify-gluing";
  int N = a.nchart();
  /* pairs: g*_{ji} o g*_{ij} = id on every chart-i symbol, plus
     nu-equivariance and nu(1) -> nu(1) */
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      if (i == j) continue;
      TransitionMap tij = transition(a, i, j);
      TransitionMap tji = transition(a, j, i);
      bool ok = true;
      std::string bad;
      const Chart& ci = a.chart(i);
      for (const auto& [id, img] : tij.images) {
        GrassmannElement round = substitute(img, tji.images);
        if (chart_normal_form(a, round) != chart_normal_form(a, GrassmannElement::variable(id))) {
          ok = false;
          bad = sym_name(id);
          break;
        }
      }
      /* equivariance on the composites nu(1) and nu(z_k) */
      if (ok) {
        GrassmannElement nu1img = substitute(ci.nu_one(), tij.images);
        if (chart_normal_form(a, nu1img) != chart_normal_form(a, a.chart(j).nu_one())) {
          ok = false;
          bad = "nu(1)";
        }
      }
      if (ok)
        for (int k = 0; k < a.m; ++k) {
          GrassmannElement lhs = substitute(ci.nu_z(k), tij.images);
          GrassmannElement rhs = nu_apply(tij.images.at(ci.z[static_cast<size_t>(k)]),
                                          a.chart(j).nuctx());
          if (chart_normal_form(a, lhs) != chart_normal_form(a, rhs)) {
            ok = false;
            bad = "nu(z" + std::to_string(k + 1) + ")";
            break;
          }
        }
      rep.add("pair (" + std::to_string(i) + "," + std::to_string(j) + ") roundtrip", ok, bad);
    }
  /* triples: g*_{jk} o g*_{ij} = g*_{ik} */
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k) {
        if (i == j || j == k || i == k) continue;
        TransitionMap tij = transition(a, i, j);
        TransitionMap tjk = transition(a, j, k);
        TransitionMap tik = transition(a, i, k);
        bool ok = true;
        std::string bad;
        for (const auto& [id, img] : tij.images) {
          GrassmannElement comp = substitute(img, tjk.images);
          if (chart_normal_form(a, comp) != chart_normal_form(a, tik.images.at(id))) {
            ok = false;
            bad = sym_name(id);
            break;
          }
        }
        rep.add("triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ") cocycle",
                ok, bad);
      }
  return rep;
}

/* Random nonzero complex value in an annulus, avoiding both branch rays. */
inline Cx random_point_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(0.4, 2.5);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  for (;;) {
    double th = angle(rng);
    if (std::abs(std::sin(th)) < 1e-3) continue;  // keep clear of the real axis
    return std::polar(radius(rng), th);
  }
}

inline std::map<int, Cx> random_chart_point(const Chart& c, std::mt19937_64& rng) {
  std::map<int, Cx> p;
  for (int id : c.parity0_symbols()) p[id] = random_point_value(rng);
  return p;
}

/* Values of the source chart's parity-0 symbols induced through a transition
   map from values on the target chart. */
inline std::map<int, Cx> induced_point(const ChartAtlas& a, const TransitionMap& t,
                                       const std::map<int, Cx>& dst_point) {
  std::map<int, Cx> p;
  for (int id : a.chart(t.src).parity0_symbols()) {
    NumericGrassmann v = eval_numeric(t.images.at(id), dst_point);
    p[id] = v.body0();
  }
  return p;
}

inline Report verify_line_cocycle(const ChartAtlas& a, int samples = 100, uint64_t seed = 42) {
  Report rep;
  rep.command = "verify-cocycle";
  int N = a.nchart();
  std::mt19937_64 rng(seed);
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j)
      for (int k = 1; k <= N; ++k) {
        if (i == j || j == k || i == k) continue;
        GrassmannElement hjk = line_cocycle(a, j, k);
        GrassmannElement hik = line_cocycle(a, i, k);
        GrassmannElement hij = line_cocycle(a, i, j);
        TransitionMap tjk = transition(a, j, k);
        GrassmannElement prod = hjk * ge_invert(hik) * apply_map(tjk, hij);
        bool exact = prod.is_one();
        rep.add("triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ") product = 1",
                exact, exact ? "" : prod.str());
        /* numeric cross-check */
        double worst = 0.0;
        for (int s = 0; s < samples; ++s) {
          auto pk = random_chart_point(a.chart(k), rng);
          try {
            NumericGrassmann v = eval_numeric(prod, pk);
            worst = std::max(worst, ng_distance(v, NumericGrassmann(Cx(1.0))));
          } catch (const Error&) {
            --s;  // resample a degenerate point
          }
        }
        rep.add("triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(k) + ") numeric residual",
                worst <= 1e-12, "max " + std::to_string(worst));
      }
  return rep;
}

/* Body-level cross-check against the classical CP^m chart change. */
inline Report body_transition_check(const ChartAtlas& a) {
  Report rep;
  rep.command = "body-transition";
  for (int i = 1; i <= a.m + 1; ++i)
    for (int j = 1; j <= a.m + 1; ++j) {
      if (i == j) continue;
      TransitionMap t = transition(a, i, j);
      /* homogeneous coordinates of chart j: slot j = 1, others its z's */
      std::vector<RationalFunction> H(static_cast<size_t>(a.m + 1));
      {
        int zk = 0;
        for (int s = 1; s <= a.m + 1; ++s)
          H[static_cast<size_t>(s - 1)] =
              (s == j) ? RationalFunction(1)
                       : RationalFunction::variable(a.chart(j).z[static_cast<size_t>(zk++)]);
      }
      bool ok = true;
      std::string bad;
      int zk = 0;
      for (int s = 1; s <= a.m + 1; ++s) {
        if (s == i) continue;
        RationalFunction expect = H[static_cast<size_t>(s - 1)] / H[static_cast<size_t>(i - 1)];
        const GrassmannElement& img = t.images.at(a.chart(i).z[static_cast<size_t>(zk++)]);
        GrassmannElement bodyv = img.body();
        if (bodyv != GrassmannElement::from_coeff(expect)) {
          ok = false;
          bad = "slot " + std::to_string(s);
          break;
        }
      }
      rep.add("body (" + std::to_string(i) + "," + std::to_string(j) + ") = CP^m change", ok, bad);
    }
  return rep;
}

}  // namespace nuchern
