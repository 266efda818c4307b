#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>
#include <utility>

#include "nuchern/error.hpp"

namespace nuchern {

using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r) { return r.str(); }

inline double rat_double(const Rat& r) { return r.template convert_to<double>(); }

/* Exact element of Q(i): the scalar field under every polynomial in the library. */
struct GaussianRational {
  Rat re, im;

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}  // NOLINT: implicit by design
  GaussianRational(Rat r) : re(std::move(r)) {}
  GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return GaussianRational(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re + b.re, a.im + b.im);
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re - b.re, a.im - b.im);
  }
  GaussianRational operator-() const { return GaussianRational(-re, -im); }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return GaussianRational(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }

  GaussianRational inverse() const {
    if (is_zero()) fail(Err::NonInvertibleBody, "division by zero Gaussian rational");
    Rat n = re * re + im * im;
    return GaussianRational(re / n, -im / n);
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }

  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  std::complex<double> to_complex() const { return {rat_double(re), rat_double(im)}; }

  std::string str() const {
    if (im == 0) return rat_str(re);
    if (re == 0) return rat_str(im) + "*i";
    return "(" + rat_str(re) + (im > 0 ? "+" : "") + rat_str(im) + "*i)";
  }
};

/* Snap a double to the nearest multiple of 1/2; reports the residual. */
inline Rat snap_half_integer(double x, double* residual) {
  double doubled = x * 2.0;
  long long n = std::llround(doubled);
  if (residual) *residual = std::abs(doubled - static_cast<double>(n)) / 2.0;
  return Rat(n) / 2;
}

}  // namespace nuchern
