#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "bergtoep/errors.hpp"
#include "bergtoep/rng.hpp"

namespace bergtoep {

using ComplexMatrix = Eigen::MatrixXcd;

// Bounded symmetric domain constants for the n x n matrix ball.
struct DomainInfo {
  int n;
  int dimension;  // n^2
  int rank;       // n
  int genus;      // 2n
  double lambda_min;  // admissible weights satisfy lambda > 2n - 1

  explicit DomainInfo(int n_)
      : n(n_), dimension(n_ * n_), rank(n_), genus(2 * n_), lambda_min(2.0 * n_ - 1.0) {}
};

// Z = U D(x) V with both U and V unitary and x the descending singular
// values. V is the full right factor (the adjoint of the conventional
// right SVD factor).
struct PolarForm {
  ComplexMatrix U;
  Eigen::VectorXd x;
  ComplexMatrix V;
  bool degenerate = false;  // min gap between consecutive x values < 1e-10
};

double spectral_norm(const ComplexMatrix& Z);
bool in_domain(const ComplexMatrix& Z);

PolarForm svd_ordered(const ComplexMatrix& Z);
ComplexMatrix reconstruct(const PolarForm& p);
PolarForm fiber_action(const std::vector<std::complex<double>>& t, const PolarForm& p);

// Z = U P with U unitary and P = (Z*Z)^{1/2}
std::pair<ComplexMatrix, ComplexMatrix> left_polar(const ComplexMatrix& Z);
// Z = Q V with V unitary and Q = (ZZ*)^{1/2}
std::pair<ComplexMatrix, ComplexMatrix> right_polar(const ComplexMatrix& Z);

ComplexMatrix psd_sqrt(const ComplexMatrix& P);

ComplexMatrix haar_unitary(int n, RngStream& rng);

struct DomainSample {
  ComplexMatrix Z;
  long proposals;  // rejection proposals consumed, including the accepted one
};

DomainSample sample_domain_uniform(int n, RngStream& rng);

}  // namespace bergtoep
