#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace bergtoep {

// Exact Gaussian rational a + bi; every operation is exact.
struct RationalComplex {
  mpq_class re;
  mpq_class im;

  RationalComplex() : re(0), im(0) {}
  RationalComplex(long r) : re(r), im(0) {}
  RationalComplex(const mpq_class& r) : re(r), im(0) {}
  RationalComplex(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }

  RationalComplex conj() const { return {re, -im}; }

  RationalComplex operator-() const { return {-re, -im}; }

  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend RationalComplex operator+(RationalComplex a, const RationalComplex& b) { return a += b; }
  friend RationalComplex operator-(RationalComplex a, const RationalComplex& b) { return a -= b; }

  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }

  friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
    mpq_class d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }

  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }

  std::string re_str() const { return re.get_str(); }
  std::string im_str() const { return im.get_str(); }
};

}  // namespace bergtoep
