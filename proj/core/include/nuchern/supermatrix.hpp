#pragma once

#include <vector>

#include "nuchern/form.hpp"
#include "nuchern/numeric.hpp"

namespace nuchern {

/* Entry-ring operations used by the supermatrix template. */
template <class R>
struct RingOps;

template <>
struct RingOps<GrassmannElement> {
  static GrassmannElement zero() { return GrassmannElement(); }
  static GrassmannElement one() { return GrassmannElement(1); }
  static GrassmannElement mul(const GrassmannElement& a, const GrassmannElement& b) {
    return a * b;
  }
  static GrassmannElement invert(const GrassmannElement& a) { return ge_invert(a); }
};

template <>
struct RingOps<NumericGrassmann> {
  static NumericGrassmann zero() { return NumericGrassmann(); }
  static NumericGrassmann one() { return NumericGrassmann(Cx(1.0)); }
  static NumericGrassmann mul(const NumericGrassmann& a, const NumericGrassmann& b) {
    return a * b;
  }
  static NumericGrassmann invert(const NumericGrassmann& a) { return ng_invert(a); }
};

template <>
struct RingOps<Form> {
  static Form zero() { return Form(); }
  static Form one() { return Form::one(); }
  static Form mul(const Form& a, const Form& b) { return wedge(a, b); }
  /* Invertible iff the degree-0 part has invertible body; geometric series on
     the higher-degree (nilpotent under truncation) remainder. */
  static Form invert(const Form& f) {
    GrassmannElement b;
    auto it = f.t.find(DKey{});
    if (it != f.t.end()) b = it->second;
    GrassmannElement binv = ge_invert(b);  // throws NonInvertibleBody when absent
    Form n = f;
    n.t.erase(DKey{});
    Form m = binv * n;
    Form acc = one(), power = one();
    int sign = 1;
    for (;;) {
      power = wedge(power, m);
      if (power.is_zero()) break;
      sign = -sign;
      acc = (sign < 0) ? acc - power : acc + power;
    }
    return binv * acc;
  }
};

/* Block supermatrix over ring R: even rows/cols first, odd rows/cols after the
   divider. Dimensions (rk|rl) x (ck|cl); declared parity tags the layout. */
template <class R>
struct SuperMatrix {
  int rk = 0, rl = 0, ck = 0, cl = 0;
  int parity = 0;
  std::vector<R> e;

  SuperMatrix() = default;
  SuperMatrix(int rk_, int rl_, int ck_, int cl_, int par = 0)
      : rk(rk_), rl(rl_), ck(ck_), cl(cl_), parity(par) {
    e.assign(static_cast<size_t>((rk + rl) * (ck + cl)), RingOps<R>::zero());
  }
  static SuperMatrix identity(int k, int l) {
    SuperMatrix m(k, l, k, l, 0);
    for (int i = 0; i < k + l; ++i) m.at(i, i) = RingOps<R>::one();
    return m;
  }

  int rows() const { return rk + rl; }
  int cols() const { return ck + cl; }
  bool square() const { return rk == ck && rl == cl; }
  R& at(int i, int j) { return e[static_cast<size_t>(i * cols() + j)]; }
  const R& at(int i, int j) const { return e[static_cast<size_t>(i * cols() + j)]; }

  friend SuperMatrix operator+(const SuperMatrix& a, const SuperMatrix& b) {
    SuperMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] + b.e[i];
    return r;
  }
  friend SuperMatrix operator-(const SuperMatrix& a, const SuperMatrix& b) {
    SuperMatrix r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = r.e[i] - b.e[i];
    return r;
  }
  SuperMatrix operator-() const {
    SuperMatrix r = *this;
    for (auto& x : r.e) x = RingOps<R>::zero() - x;
    return r;
  }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.rk == b.rk && a.rl == b.rl && a.ck == b.ck && a.cl == b.cl && a.e == b.e;
  }
};

template <class R>
SuperMatrix<R> sm_mul(const SuperMatrix<R>& x, const SuperMatrix<R>& y) {
  if (x.ck != y.rk || x.cl != y.rl)
    fail(Err::DimensionMismatch, "supermatrix product shape mismatch");
  SuperMatrix<R> r(x.rk, x.rl, y.ck, y.cl, (x.parity + y.parity) % 2);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < y.cols(); ++j) {
      R acc = RingOps<R>::zero();
      for (int k = 0; k < x.cols(); ++k)
        acc = acc + RingOps<R>::mul(x.at(i, k), y.at(k, j));
      r.at(i, j) = acc;
    }
  return r;
}

template <class R>
SuperMatrix<R> sm_scale(const R& c, const SuperMatrix<R>& x) {
  SuperMatrix<R> r = x;
  for (auto& v : r.e) v = RingOps<R>::mul(c, v);
  return r;
}

/* ---- generic square matrices with commuting (even) entries ---- */

template <class R>
R mat_det(int n, const std::vector<R>& m) {
  if (n == 0) return RingOps<R>::one();
  if (n == 1) return m[0];
  R acc = RingOps<R>::zero();
  for (int j = 0; j < n; ++j) {
    std::vector<R> sub;
    sub.reserve(static_cast<size_t>((n - 1) * (n - 1)));
    for (int i = 1; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (k != j) sub.push_back(m[static_cast<size_t>(i * n + k)]);
    R term = RingOps<R>::mul(m[static_cast<size_t>(j)], mat_det(n - 1, sub));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

template <class R>
std::vector<R> mat_inv(int n, const std::vector<R>& m) {
  R det = mat_det(n, m);
  R dinv = RingOps<R>::invert(det);
  std::vector<R> r(static_cast<size_t>(n * n), RingOps<R>::zero());
  if (n == 0) return r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<R> sub;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != j && b != i) sub.push_back(m[static_cast<size_t>(a * n + b)]);
      R cof = mat_det(n - 1, sub);
      if ((i + j) % 2 == 1) cof = RingOps<R>::zero() - cof;
      r[static_cast<size_t>(i * n + j)] = RingOps<R>::mul(cof, dinv);
    }
  return r;
}

namespace detail {

template <class R>
std::vector<R> block(const SuperMatrix<R>& x, int r0, int r1, int c0, int c1) {
  std::vector<R> b;
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) b.push_back(x.at(i, j));
  return b;
}

/* rows x cols generic product. */
template <class R>
std::vector<R> gmul(int n, int k, int m, const std::vector<R>& a, const std::vector<R>& b) {
  std::vector<R> r(static_cast<size_t>(n * m), RingOps<R>::zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      R acc = RingOps<R>::zero();
      for (int t = 0; t < k; ++t)
        acc = acc + RingOps<R>::mul(a[static_cast<size_t>(i * k + t)],
                                    b[static_cast<size_t>(t * m + j)]);
      r[static_cast<size_t>(i * m + j)] = acc;
    }
  return r;
}

template <class R>
std::vector<R> gsub(const std::vector<R>& a, const std::vector<R>& b) {
  std::vector<R> r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - b[i];
  return r;
}

}  // namespace detail

/* Schur-complement inverse of a square even supermatrix. */
template <class R>
SuperMatrix<R> sm_inverse(const SuperMatrix<R>& x) {
  if (!x.square()) fail(Err::NonInvertibleBlock, "inverse of non-square supermatrix");
  int k = x.rk, l = x.rl;
  using detail::block;
  using detail::gmul;
  using detail::gsub;
  auto A = block(x, 0, k, 0, k);
  auto B = block(x, 0, k, k, k + l);
  auto C = block(x, k, k + l, 0, k);
  auto D = block(x, k, k + l, k, k + l);
  std::vector<R> Ai;
  try {
    Ai = mat_inv(k, A);
  } catch (const Error&) {
    fail(Err::NonInvertibleBlock, "A-block not invertible");
  }
  /* S = D - C A^{-1} B */
  auto S = gsub(D, gmul(l, k, l, gmul(l, k, k, C, Ai), B));
  std::vector<R> Si;
  try {
    Si = mat_inv(l, S);
  } catch (const Error&) {
    fail(Err::NonInvertibleBlock, "Schur complement not invertible");
  }
  auto AiB = gmul(k, k, l, Ai, B);
  auto CAi = gmul(l, k, k, C, Ai);
  /* TL = A^{-1} + A^{-1} B S^{-1} C A^{-1} */
  auto TL = Ai;
  auto corr = gmul(k, l, k, gmul(k, l, l, AiB, Si), CAi);
  for (size_t i = 0; i < TL.size(); ++i) TL[i] = TL[i] + corr[i];
  auto TR = gmul(k, l, l, AiB, Si);
  for (auto& v : TR) v = RingOps<R>::zero() - v;
  auto BL = gmul(l, l, k, Si, CAi);
  for (auto& v : BL) v = RingOps<R>::zero() - v;
  SuperMatrix<R> r(k, l, k, l, 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r.at(i, j) = TL[static_cast<size_t>(i * k + j)];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) r.at(i, k + j) = TR[static_cast<size_t>(i * l + j)];
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < k; ++j) r.at(k + i, j) = BL[static_cast<size_t>(i * k + j)];
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) r.at(k + i, k + j) = Si[static_cast<size_t>(i * l + j)];
  return r;
}

/* Ber(X) = det(A - B D^{-1} C) det(D)^{-1}. */
template <class R>
R berezinian(const SuperMatrix<R>& x) {
  if (!x.square()) fail(Err::NonInvertibleBlock, "Berezinian of non-square supermatrix");
  int k = x.rk, l = x.rl;
  using detail::block;
  using detail::gmul;
  using detail::gsub;
  auto A = block(x, 0, k, 0, k);
  auto B = block(x, 0, k, k, k + l);
  auto C = block(x, k, k + l, 0, k);
  auto D = block(x, k, k + l, k, k + l);
  std::vector<R> Di;
  try {
    Di = mat_inv(l, D);
  } catch (const Error&) {
    fail(Err::NonInvertibleBlock, "D-block not invertible");
  }
  auto schur = gsub(A, gmul(k, l, k, gmul(k, l, l, B, Di), C));
  return RingOps<R>::mul(mat_det(k, schur), RingOps<R>::invert(mat_det(l, D)));
}

/* A-block variant, used as a cross-check: Ber = det(A) det(D - C A^{-1} B)^{-1}. */
template <class R>
R berezinian_a_block(const SuperMatrix<R>& x) {
  int k = x.rk, l = x.rl;
  using detail::block;
  using detail::gmul;
  using detail::gsub;
  auto A = block(x, 0, k, 0, k);
  auto B = block(x, 0, k, k, k + l);
  auto C = block(x, k, k + l, 0, k);
  auto D = block(x, k, k + l, k, k + l);
  auto Ai = mat_inv(k, A);
  auto schur = gsub(D, gmul(l, k, l, gmul(l, k, k, C, Ai), B));
  return RingOps<R>::mul(mat_det(k, A), RingOps<R>::invert(mat_det(l, schur)));
}

template <class R>
R supertrace(const SuperMatrix<R>& x) {
  if (!x.square()) fail(Err::DimensionMismatch, "supertrace of non-square supermatrix");
  R acc = RingOps<R>::zero();
  for (int i = 0; i < x.rk; ++i) acc = acc + x.at(i, i);
  for (int i = 0; i < x.rl; ++i) acc = acc - x.at(x.rk + i, x.rk + i);
  return acc;
}

}  // namespace nuchern
