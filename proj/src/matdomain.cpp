#include "bergtoep/matdomain.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace bergtoep {

double spectral_norm(const ComplexMatrix& Z) {
  Eigen::JacobiSVD<ComplexMatrix> svd(Z);
  return svd.singularValues()(0);
}

bool in_domain(const ComplexMatrix& Z) { return spectral_norm(Z) < 1.0; }

PolarForm svd_ordered(const ComplexMatrix& Z) {
  Eigen::JacobiSVD<ComplexMatrix> svd(Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  PolarForm p;
  p.U = svd.matrixU();
  p.x = svd.singularValues();  // Eigen returns them descending
  p.V = svd.matrixV().adjoint();
  p.degenerate = false;
  for (int i = 0; i + 1 < p.x.size(); ++i) {
    if (p.x(i) - p.x(i + 1) < 1e-10) p.degenerate = true;
  }
  return p;
}

ComplexMatrix reconstruct(const PolarForm& p) {
  return p.U * p.x.cast<std::complex<double>>().asDiagonal() * p.V;
}

PolarForm fiber_action(const std::vector<std::complex<double>>& t, const PolarForm& p) {
  const int n = static_cast<int>(p.x.size());
  if (static_cast<int>(t.size()) != n)
    throw IndexOutOfRange("fiber_action: torus element has wrong length");
  for (const auto& tj : t) {
    if (std::abs(std::abs(tj) - 1.0) > 1e-12)
      throw NotUnitary("fiber_action: torus entry is not unit modulus");
  }
  Eigen::VectorXcd tv(n), tcv(n);
  for (int j = 0; j < n; ++j) {
    tv(j) = t[static_cast<std::size_t>(j)];
    tcv(j) = std::conj(t[static_cast<std::size_t>(j)]);
  }
  PolarForm q;
  q.U = p.U * tcv.asDiagonal();
  q.x = p.x;
  q.V = tv.asDiagonal() * p.V;
  q.degenerate = p.degenerate;
  return q;
}

std::pair<ComplexMatrix, ComplexMatrix> left_polar(const ComplexMatrix& Z) {
  Eigen::JacobiSVD<ComplexMatrix> svd(Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) < 1e-12)
    throw SingularMatrix("left_polar: smallest singular value below 1e-12");
  ComplexMatrix U = svd.matrixU() * svd.matrixV().adjoint();
  ComplexMatrix P = svd.matrixV() * s.cast<std::complex<double>>().asDiagonal() *
                    svd.matrixV().adjoint();
  return {U, P};
}

std::pair<ComplexMatrix, ComplexMatrix> right_polar(const ComplexMatrix& Z) {
  Eigen::JacobiSVD<ComplexMatrix> svd(Z, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) < 1e-12)
    throw SingularMatrix("right_polar: smallest singular value below 1e-12");
  ComplexMatrix Q = svd.matrixU() * s.cast<std::complex<double>>().asDiagonal() *
                    svd.matrixU().adjoint();
  ComplexMatrix V = svd.matrixU() * svd.matrixV().adjoint();
  return {Q, V};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& P) {
  const double herm_dev = (P - P.adjoint()).norm();
  if (herm_dev > 1e-8)
    throw NotHermitianPSD("psd_sqrt: Hermitian deviation " + std::to_string(herm_dev));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((P + P.adjoint()) / 2.0);
  Eigen::VectorXd ev = es.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-8)
      throw NotHermitianPSD("psd_sqrt: negative eigenvalue " + std::to_string(ev(i)));
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.cast<std::complex<double>>().asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix haar_unitary(int n, RngStream& rng) {
  ComplexMatrix G(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) G(j, k) = rng.complex_gaussian();
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // phase correction: without it the QR map is not Haar
  for (int j = 0; j < n; ++j) {
    std::complex<double> r = R(j, j);
    std::complex<double> phase = (std::abs(r) > 0.0) ? r / std::abs(r) : 1.0;
    Q.col(j) *= phase;
  }
  return Q;
}

DomainSample sample_domain_uniform(int n, RngStream& rng) {
  if (n < 1 || n > 3)
    throw ConfigError("sample_domain_uniform: n must be in {1,2,3}");
  constexpr long kBudget = 10'000'000;
  ComplexMatrix Z(n, n);
  for (long attempt = 1; attempt <= kBudget; ++attempt) {
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) Z(j, k) = rng.unit_disk();
    if (in_domain(Z)) return {Z, attempt};
  }
  throw RejectionBudgetExceeded("sample_domain_uniform: no acceptance within 1e7 proposals");
}

}  // namespace bergtoep
