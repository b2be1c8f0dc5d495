#include "bergtoep/bergman.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>

namespace bergtoep {

SampleBatch::SampleBatch(int n, double lambda, const MCConfig& cfg)
    : n_(n), lambda_(lambda), cfg_(cfg) {
  DomainInfo info(n);
  if (lambda <= info.lambda_min)
    throw ConfigError("SampleBatch: lambda must exceed 2n-1 = " + std::to_string(info.lambda_min));
  if (cfg.nsamples < 1000) throw ConfigError("SampleBatch: nsamples must be >= 1000");
  if (cfg.shards < 1) throw ConfigError("SampleBatch: shards must be >= 1");
  samples_.reserve(static_cast<std::size_t>(cfg.nsamples));
  weights_.reserve(static_cast<std::size_t>(cfg.nsamples));
  const double exponent = lambda - 2.0 * n;
  long proposals = 0;
  ComplexMatrix I = ComplexMatrix::Identity(n, n);
  for (long i = 0; i < cfg.nsamples; ++i) {
    RngStream rng(cfg.master_seed, static_cast<std::uint64_t>(i));
    DomainSample s = sample_domain_uniform(n, rng);
    proposals += s.proposals;
    double det = (I - s.Z * s.Z.adjoint()).determinant().real();
    weights_.push_back(std::pow(det, exponent));
    samples_.push_back(std::move(s.Z));
  }
  acceptance_rate_ = static_cast<double>(cfg.nsamples) / static_cast<double>(proposals);
}

std::vector<std::complex<double>> SampleBatch::evaluate(
    const std::function<std::complex<double>(const ComplexMatrix&)>& f) const {
  std::vector<std::complex<double>> out;
  out.reserve(samples_.size());
  for (const auto& Z : samples_) out.push_back(f(Z));
  return out;
}

std::vector<std::complex<double>> SampleBatch::evaluate(const Polynomial& p) const {
  return evaluate([&p](const ComplexMatrix& Z) { return p.eval(Z); });
}

std::vector<std::complex<double>> SampleBatch::evaluate(const CompiledSymbol& sym) const {
  return evaluate([&sym](const ComplexMatrix& Z) { return sym.eval(Z); });
}

MCEstimate SampleBatch::inner(const std::vector<std::complex<double>>& fv,
                              const std::vector<std::complex<double>>& gv) const {
  const long N = size();
  std::complex<double> su = 0.0;
  double sw = 0.0;
  for (long i = 0; i < N; ++i) {
    su += fv[static_cast<std::size_t>(i)] * std::conj(gv[static_cast<std::size_t>(i)]) *
          weights_[static_cast<std::size_t>(i)];
    sw += weights_[static_cast<std::size_t>(i)];
  }
  const std::complex<double> ratio = su / sw;
  // delta-method stderr of the self-normalized ratio
  const double wbar = sw / static_cast<double>(N);
  double var = 0.0;
  for (long i = 0; i < N; ++i) {
    std::complex<double> r =
        (fv[static_cast<std::size_t>(i)] * std::conj(gv[static_cast<std::size_t>(i)]) *
             weights_[static_cast<std::size_t>(i)] -
         ratio * weights_[static_cast<std::size_t>(i)]) /
        wbar;
    var += std::norm(r);
  }
  var /= static_cast<double>(N);
  MCEstimate est;
  est.value = ratio;
  est.stderr_ = std::sqrt(var / static_cast<double>(N));
  est.nsamples = N;
  return est;
}

MCEstimate SampleBatch::normalizer() const {
  const long N = size();
  double sw = 0.0, sw2 = 0.0;
  for (double w : weights_) {
    sw += w;
    sw2 += w * w;
  }
  const double mean = sw / static_cast<double>(N);
  const double var = sw2 / static_cast<double>(N) - mean * mean;
  MCEstimate est;
  est.value = 1.0 / mean;
  est.stderr_ = std::sqrt(var / static_cast<double>(N)) / (mean * mean);
  est.nsamples = N;
  return est;
}

std::complex<double> bergman_kernel(const ComplexMatrix& Z, const ComplexMatrix& W, double lambda) {
  const int n = static_cast<int>(Z.rows());
  std::complex<double> det = (ComplexMatrix::Identity(n, n) - Z * W.adjoint()).determinant();
  return std::pow(det, -lambda);
}

MCEstimate estimate_normalizer(int n, double lambda, const MCConfig& cfg) {
  SampleBatch batch(n, lambda, cfg);
  return batch.normalizer();
}

MCEstimate weighted_inner(const std::function<std::complex<double>(const ComplexMatrix&)>& f,
                          const std::function<std::complex<double>(const ComplexMatrix&)>& g,
                          const SampleBatch& batch) {
  return batch.inner(batch.evaluate(f), batch.evaluate(g));
}

GramMatrix gram_matrix(const std::vector<Polynomial>& basis, const SampleBatch& batch,
                       const std::string& basis_id) {
  const int m = static_cast<int>(basis.size());
  std::vector<std::vector<std::complex<double>>> vals;
  vals.reserve(basis.size());
  for (const auto& p : basis) vals.push_back(batch.evaluate(p));
  GramMatrix G;
  G.basis_id = basis_id;
  G.lambda = batch.lambda();
  G.values.resize(m, m);
  G.stderrs.resize(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      MCEstimate e = batch.inner(vals[static_cast<std::size_t>(j)],
                                 vals[static_cast<std::size_t>(i)]);
      G.values(i, j) = e.value;
      G.values(j, i) = std::conj(e.value);
      G.stderrs(i, j) = e.stderr_;
      G.stderrs(j, i) = e.stderr_;
    }
  for (int i = 0; i < m; ++i) G.values(i, i) = G.values(i, i).real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G.values);
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  if (emin <= 1e-8 * emax)
    throw GramNotPD("gram_matrix: min eigenvalue " + std::to_string(emin) +
                    " <= 1e-8 * max eigenvalue; raise nsamples");
  return G;
}

namespace {

std::string component_basis_id(const IsotypicComponent& comp, const SampleBatch& batch) {
  return "n" + std::to_string(batch.n()) + ":d" + std::to_string(comp.degree) +
         ":mu" + comp.mu.str() + ":seed" + std::to_string(batch.config().master_seed) +
         ":N" + std::to_string(batch.size());
}

}  // namespace

ToeplitzBlock toeplitz_block(const CompiledSymbol& sym, const IsotypicComponent& comp,
                             const SampleBatch& batch) {
  const int m = static_cast<int>(comp.basis.size());
  ToeplitzBlock B;
  B.mu = comp.mu;
  B.lambda = batch.lambda();
  B.symbol = sym.text();
  B.mc = batch.config();
  B.compression_only = (sym.kind() == SymbolKind::General);
  B.gram = gram_matrix(comp.basis, batch, component_basis_id(comp, batch));

  std::vector<std::vector<std::complex<double>>> evals, aevals;
  std::vector<std::complex<double>> avals = batch.evaluate(sym);
  for (const auto& p : comp.basis) {
    auto pv = batch.evaluate(p);
    std::vector<std::complex<double>> apv(pv.size());
    for (std::size_t i = 0; i < pv.size(); ++i) apv[i] = avals[i] * pv[i];
    evals.push_back(std::move(pv));
    aevals.push_back(std::move(apv));
  }
  Eigen::MatrixXcd A(m, m);
  Eigen::MatrixXd Aerr(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      MCEstimate e = batch.inner(aevals[static_cast<std::size_t>(j)],
                                 evals[static_cast<std::size_t>(i)]);
      A(i, j) = e.value;
      Aerr(i, j) = e.stderr_;
    }
  Eigen::LLT<Eigen::MatrixXcd> llt(B.gram.values);
  if (llt.info() != Eigen::Success) throw GramNotPD("toeplitz_block: Cholesky failed");
  Eigen::MatrixXcd L = llt.matrixL();
  Eigen::MatrixXcd Linv = L.inverse();
  B.chol_lower = L;
  B.matrix = Linv * A * Linv.adjoint();
  // first-order noise propagation through the orthonormalization
  Eigen::MatrixXd absLinv = Linv.cwiseAbs();
  Eigen::MatrixXd fromA = absLinv * Aerr * absLinv.transpose();
  double gram_noise = B.gram.stderrs.maxCoeff();
  double op_norm = B.matrix.operatorNorm();
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(m, m);
  Eigen::MatrixXd fromG = (absLinv * ones * absLinv.transpose()) * (gram_noise * op_norm);
  B.stderrs = fromA + fromG;
  B.noise_bound = B.stderrs.maxCoeff();
  return B;
}

CrossBlock cross_block(const CompiledSymbol& sym, const IsotypicComponent& compA,
                       const IsotypicComponent& compB, const SampleBatch& batch) {
  if (compA.mu == compB.mu && compA.degree == compB.degree)
    throw ConfigError("cross_block: components must differ");
  std::vector<std::complex<double>> avals = batch.evaluate(sym);
  CrossBlock out;
  const int rows = static_cast<int>(compB.basis.size());
  const int cols = static_cast<int>(compA.basis.size());
  out.values.resize(rows, cols);
  out.stderrs.resize(rows, cols);
  std::vector<std::vector<std::complex<double>>> bvals;
  for (const auto& p : compB.basis) bvals.push_back(batch.evaluate(p));
  for (int j = 0; j < cols; ++j) {
    auto av = batch.evaluate(compA.basis[static_cast<std::size_t>(j)]);
    for (std::size_t i = 0; i < av.size(); ++i) av[i] *= avals[i];
    for (int i = 0; i < rows; ++i) {
      MCEstimate e = batch.inner(av, bvals[static_cast<std::size_t>(i)]);
      out.values(i, j) = e.value;
      out.stderrs(i, j) = e.stderr_;
    }
  }
  return out;
}

double scalar_defect(const ToeplitzBlock& B) {
  const auto& M = B.matrix;
  const double m = static_cast<double>(M.rows());
  Eigen::MatrixXcd D = M - (M.trace() / m) * Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  const double denom = M.norm();
  return denom > 0.0 ? D.norm() / denom : 0.0;
}

double commutator_defect(const ToeplitzBlock& B1, const ToeplitzBlock& B2) {
  if (B1.gram.basis_id != B2.gram.basis_id || B1.lambda != B2.lambda)
    throw BasisMismatch("commutator_defect: blocks use different Gram orthonormalizations");
  const auto& M1 = B1.matrix;
  const auto& M2 = B2.matrix;
  return (M1 * M2 - M2 * M1).norm() / (M1.norm() * M2.norm());
}

double normality_defect(const ToeplitzBlock& B) {
  const auto& M = B.matrix;
  double n2 = M.norm();
  return (M * M.adjoint() - M.adjoint() * M).norm() / (n2 * n2);
}

double scalar_defect_noise_fro(const ToeplitzBlock& B) { return B.stderrs.norm(); }

double scalar_noise(const ToeplitzBlock& B) {
  // defect = ||M - (tr/m) I||/||M||; an entrywise perturbation delta moves the
  // numerator by at most ||delta||_F (the traceless projection is a contraction)
  return scalar_defect_noise_fro(B) / B.matrix.norm();
}

double commutator_noise(const ToeplitzBlock& B1, const ToeplitzBlock& B2) {
  double n1 = B1.matrix.norm(), n2 = B2.matrix.norm();
  double d1 = scalar_defect_noise_fro(B1), d2 = scalar_defect_noise_fro(B2);
  return 2.0 * (d1 * n2 + n1 * d2) / (n1 * n2);
}

double normality_noise(const ToeplitzBlock& B) {
  double nf = B.matrix.norm();
  return 4.0 * scalar_defect_noise_fro(B) * B.matrix.operatorNorm() / (nf * nf);
}

double intertwining_noise(const ToeplitzBlock& B) {
  // ||pi M - M pi|| perturbs by at most 2 ||delta||_F for unitary pi
  return 2.0 * scalar_defect_noise_fro(B) / B.matrix.norm();
}

Eigen::MatrixXcd pi_matrix(const ComplexMatrix& A, const ComplexMatrix& B,
                           const IsotypicComponent& comp, const Eigen::MatrixXcd& chol_lower) {
  const int m = static_cast<int>(comp.basis.size());
  const int n = comp.basis.front().n();
  // coordinates of the basis over the degree-d monomials
  std::map<ExponentMatrix, int> index;
  for (const auto& p : comp.basis)
    for (const auto& [alpha, c] : p.terms())
      if (!index.count(alpha)) {
        int id = static_cast<int>(index.size());
        index[alpha] = id;
      }
  // substituting can reach monomials outside the span's support only by
  // numerical noise; collect them too so residuals are visible
  std::vector<NumericPolynomial> subs;
  subs.reserve(comp.basis.size());
  for (const auto& p : comp.basis) {
    subs.push_back(substitute(p, A, B));
    for (const auto& [alpha, c] : subs.back().terms)
      if (!index.count(alpha)) {
        int id = static_cast<int>(index.size());
        index[alpha] = id;
      }
  }
  const int nm = static_cast<int>(index.size());
  Eigen::MatrixXcd Basis = Eigen::MatrixXcd::Zero(nm, m);
  for (int j = 0; j < m; ++j)
    for (const auto& [alpha, c] : comp.basis[static_cast<std::size_t>(j)].terms())
      Basis(index.at(alpha), j) = c.to_double();
  Eigen::MatrixXcd Target = Eigen::MatrixXcd::Zero(nm, m);
  for (int j = 0; j < m; ++j)
    for (const auto& [alpha, c] : subs[static_cast<std::size_t>(j)].terms)
      Target(index.at(alpha), j) = c;
  Eigen::MatrixXcd C = Basis.colPivHouseholderQr().solve(Target);
  (void)n;
  // orthonormal basis f = e L^{-*}; operator matrix is L* C L^{-*}
  Eigen::MatrixXcd Lh = chol_lower.adjoint();
  return Lh * C * Lh.inverse();
}

double intertwining_defect(const ToeplitzBlock& B, const IsotypicComponent& comp, Group group,
                           RngStream& rng, int trials) {
  const int n = comp.basis.front().n();
  ComplexMatrix I = ComplexMatrix::Identity(n, n);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix A = I, Bu = I;
    switch (group) {
      case Group::UUn:
        A = haar_unitary(n, rng);
        Bu = haar_unitary(n, rng);
        break;
      case Group::UnL: A = haar_unitary(n, rng); break;
      case Group::UnR: Bu = haar_unitary(n, rng); break;
    }
    Eigen::MatrixXcd P = pi_matrix(A, Bu, comp, B.chol_lower);
    double defect = (P * B.matrix - B.matrix * P).norm() / B.matrix.norm();
    worst = std::max(worst, defect);
  }
  return worst;
}

}  // namespace bergtoep
