#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "bergtoep/rational.hpp"

namespace bergtoep {

// Exponent matrix alpha of a monomial Z^alpha = prod Z_{jk}^{alpha_{jk}},
// stored row-major. Ordered graded-lexicographically (degree first, then
// lex on the row-major exponent list) so every basis listing is
// deterministic.
struct ExponentMatrix {
  int n = 0;
  std::vector<int> a;  // n*n entries, row-major

  ExponentMatrix() = default;
  explicit ExponentMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_ * n_), 0) {}

  int& at(int j, int k) { return a[static_cast<std::size_t>(j * n + k)]; }
  int at(int j, int k) const { return a[static_cast<std::size_t>(j * n + k)]; }

  int degree() const {
    int d = 0;
    for (int e : a) d += e;
    return d;
  }

  friend bool operator==(const ExponentMatrix& x, const ExponentMatrix& y) {
    return x.n == y.n && x.a == y.a;
  }
  friend bool operator<(const ExponentMatrix& x, const ExponentMatrix& y) {
    int dx = x.degree(), dy = y.degree();
    if (dx != dy) return dx < dy;
    return x.a < y.a;
  }
};

// Holomorphic polynomial on M_{n x n} with exact coefficients; zero
// coefficients are never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int n) : n_(n) {}

  static Polynomial monomial(const ExponentMatrix& alpha, const RationalComplex& c) {
    Polynomial p(alpha.n);
    if (!c.is_zero()) p.terms_[alpha] = c;
    return p;
  }

  // the (j,k) coordinate function
  static Polynomial entry(int n, int j, int k) {
    ExponentMatrix alpha(n);
    alpha.at(j, k) = 1;
    return monomial(alpha, RationalComplex(1));
  }

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<ExponentMatrix, RationalComplex>& terms() const { return terms_; }

  RationalComplex coeff(const ExponentMatrix& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? RationalComplex() : it->second;
  }

  void add_term(const ExponentMatrix& alpha, const RationalComplex& c) {
    auto it = terms_.find(alpha);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[alpha] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& q) {
    for (const auto& [alpha, c] : q.terms_) add_term(alpha, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& q) {
    for (const auto& [alpha, c] : q.terms_) add_term(alpha, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }

  friend Polynomial operator*(const RationalComplex& c, const Polynomial& p) {
    Polynomial r(p.n_);
    if (c.is_zero()) return r;
    for (const auto& [alpha, pc] : p.terms_) r.terms_[alpha] = c * pc;
    return r;
  }

  friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    Polynomial r(p.n_);
    for (const auto& [pa, pc] : p.terms_)
      for (const auto& [qa, qc] : q.terms_) {
        ExponentMatrix alpha = pa;
        for (std::size_t i = 0; i < alpha.a.size(); ++i) alpha.a[i] += qa.a[i];
        r.add_term(alpha, pc * qc);
      }
    return r;
  }

  // d/dZ_{jk}
  Polynomial differentiate(int j, int k) const {
    Polynomial r(n_);
    for (const auto& [alpha, c] : terms_) {
      int e = alpha.at(j, k);
      if (e == 0) continue;
      ExponentMatrix beta = alpha;
      beta.at(j, k) = e - 1;
      r.add_term(beta, RationalComplex(e) * c);
    }
    return r;
  }

  // multiplication by Z_{jk}
  Polynomial mul_entry(int j, int k) const {
    Polynomial r(n_);
    for (const auto& [alpha, c] : terms_) {
      ExponentMatrix beta = alpha;
      beta.at(j, k) += 1;
      r.terms_[beta] = c;
    }
    return r;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.degree();
    for (const auto& [alpha, c] : terms_)
      if (alpha.degree() != d) return false;
    return true;
  }

  int degree() const {
    int d = 0;
    for (const auto& [alpha, c] : terms_) d = std::max(d, alpha.degree());
    return d;
  }

  std::complex<double> eval(const Eigen::MatrixXcd& Z) const {
    std::complex<double> sum = 0.0;
    for (const auto& [alpha, c] : terms_) {
      std::complex<double> t = c.to_double();
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) {
          for (int e = 0; e < alpha.at(j, k); ++e) t *= Z(j, k);
        }
      sum += t;
    }
    return sum;
  }

 private:
  int n_ = 0;
  std::map<ExponentMatrix, RationalComplex> terms_;
};

// Degree-d homogeneous polynomial with double coefficients, as produced by
// substitution of a unitary pair into an exact polynomial.
struct NumericPolynomial {
  int n = 0;
  std::map<ExponentMatrix, std::complex<double>> terms;

  std::complex<double> eval(const Eigen::MatrixXcd& Z) const {
    std::complex<double> sum = 0.0;
    for (const auto& [alpha, c] : terms) {
      std::complex<double> t = c;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int e = 0; e < alpha.at(j, k); ++e) t *= Z(j, k);
      sum += t;
    }
    return sum;
  }
};

}  // namespace bergtoep
