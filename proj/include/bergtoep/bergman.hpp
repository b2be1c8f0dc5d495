#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "bergtoep/errors.hpp"
#include "bergtoep/matdomain.hpp"
#include "bergtoep/polyrep.hpp"
#include "bergtoep/symbols.hpp"

namespace bergtoep {

struct MCConfig {
  long nsamples = 0;
  std::uint64_t master_seed = 0;
  int shards = 1;
};

struct MCEstimate {
  std::complex<double> value{};
  double stderr_ = 0.0;
  long nsamples = 0;
};

// Shared uniform sample stream for one verification batch. Sample i is
// drawn from the substream (master_seed, i), so the stream is independent
// of how samples are sharded across workers.
class SampleBatch {
 public:
  SampleBatch(int n, double lambda, const MCConfig& cfg);

  int n() const { return n_; }
  double lambda() const { return lambda_; }
  const MCConfig& config() const { return cfg_; }
  long size() const { return static_cast<long>(samples_.size()); }
  const std::vector<ComplexMatrix>& samples() const { return samples_; }
  const std::vector<double>& weights() const { return weights_; }
  double acceptance_rate() const { return acceptance_rate_; }

  std::vector<std::complex<double>> evaluate(
      const std::function<std::complex<double>(const ComplexMatrix&)>& f) const;
  std::vector<std::complex<double>> evaluate(const Polynomial& p) const;
  std::vector<std::complex<double>> evaluate(const CompiledSymbol& sym) const;

  // self-normalized estimate of <f, g>_lambda from cached evaluations
  MCEstimate inner(const std::vector<std::complex<double>>& fv,
                   const std::vector<std::complex<double>>& gv) const;

  MCEstimate normalizer() const;  // c_lambda

 private:
  int n_;
  double lambda_;
  MCConfig cfg_;
  std::vector<ComplexMatrix> samples_;
  std::vector<double> weights_;
  double acceptance_rate_;
};

std::complex<double> bergman_kernel(const ComplexMatrix& Z, const ComplexMatrix& W, double lambda);

MCEstimate estimate_normalizer(int n, double lambda, const MCConfig& cfg);

MCEstimate weighted_inner(const std::function<std::complex<double>(const ComplexMatrix&)>& f,
                          const std::function<std::complex<double>(const ComplexMatrix&)>& g,
                          const SampleBatch& batch);

struct GramMatrix {
  std::string basis_id;
  double lambda = 0.0;
  Eigen::MatrixXcd values;   // Hermitian by construction
  Eigen::MatrixXd stderrs;
};

GramMatrix gram_matrix(const std::vector<Polynomial>& basis, const SampleBatch& batch,
                       const std::string& basis_id);

struct ToeplitzBlock {
  DominantWeight mu;
  double lambda = 0.0;
  Eigen::MatrixXcd matrix;      // compression in the lambda-orthonormalized basis
  Eigen::MatrixXd stderrs;      // propagated entrywise noise
  double noise_bound = 0.0;     // max propagated entry stderr
  GramMatrix gram;
  Eigen::MatrixXcd chol_lower;  // L with gram = L L*
  std::string symbol;
  MCConfig mc;
  bool compression_only = false;  // set for General symbols
};

ToeplitzBlock toeplitz_block(const CompiledSymbol& sym, const IsotypicComponent& comp,
                             const SampleBatch& batch);

struct CrossBlock {
  Eigen::MatrixXcd values;
  Eigen::MatrixXd stderrs;
};

CrossBlock cross_block(const CompiledSymbol& sym, const IsotypicComponent& compA,
                       const IsotypicComponent& compB, const SampleBatch& batch);

double scalar_defect(const ToeplitzBlock& B);
double commutator_defect(const ToeplitzBlock& B1, const ToeplitzBlock& B2);
double normality_defect(const ToeplitzBlock& B);

// First-order propagated noise levels for the corresponding defect ratios,
// derived from the entrywise stderr estimates.
double scalar_noise(const ToeplitzBlock& B);
double commutator_noise(const ToeplitzBlock& B1, const ToeplitzBlock& B2);
double normality_noise(const ToeplitzBlock& B);
double intertwining_noise(const ToeplitzBlock& B);

Eigen::MatrixXcd pi_matrix(const ComplexMatrix& A, const ComplexMatrix& B,
                           const IsotypicComponent& comp, const Eigen::MatrixXcd& chol_lower);

double intertwining_defect(const ToeplitzBlock& B, const IsotypicComponent& comp, Group group,
                           RngStream& rng, int trials);

}  // namespace bergtoep
