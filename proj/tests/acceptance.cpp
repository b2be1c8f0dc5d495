// Acceptance suite: twelve criteria, one PASS/FAIL line each, all tolerances
// pinned below. Exit status 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bergtoep/bergman.hpp"

using namespace bergtoep;
using Complex = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

// pinned tolerances and frozen constants
constexpr double kDefectTol = 5e-2;
constexpr double kExactInvarianceTol = 1e-8;
constexpr long kNsmall = 50000;
constexpr long kNmain = 200000;
constexpr long kNnonnormal = 400000;
constexpr long kNwitness = 1500000;
constexpr std::uint64_t kSeedMain = 106;
constexpr std::uint64_t kSeedCross = 9;
constexpr std::uint64_t kSeedNonnormal = 20260823;
constexpr std::uint64_t kSeedWitness = 424242;
// golden non-normality defect for G[1,2] on mu=(1,0), n=2, lambda=5,
// frozen from a calibration run; re-runs with other seeds stay within +-20%
constexpr double kGoldenNonnormal = 0.9999;

int g_failures = 0;

void report(int idx, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const IsotypicComponent& find_mu(const std::vector<IsotypicComponent>& comps,
                                 const std::vector<int>& m) {
  for (const auto& c : comps)
    if (c.mu.m == m) return c;
  throw std::runtime_error("component not found");
}

// ---- criterion 1 & 2: exact decomposition and Fischer orthogonality ----

void criteria_1_2() {
  auto t0 = Clock::now();
  bool dims_ok = true;
  bool fischer_ok = true;
  std::string detail;
  const long expected_n2[] = {1, 4, 10, 20, 35};  // C(n^2+d-1, d), n=2
  try {
    for (int n = 2; n <= 3; ++n) {
      int dtop = (n == 2) ? 4 : 3;
      for (int d = 0; d <= dtop; ++d) {
        // decompose_degree enforces exactly one joint HWV per partition,
        // dim = weyl^2 per component, and the Cauchy identity, in exact
        // arithmetic; any violation throws
        auto comps = decompose_degree(n, d);
        long total = 0;
        for (const auto& c : comps) total += c.expected_dim;
        if (n == 2 && total != expected_n2[d]) dims_ok = false;
        if (static_cast<long>(comps.size()) !=
            static_cast<long>(partitions(d, n).size()))
          dims_ok = false;
        for (std::size_t a = 0; a < comps.size(); ++a)
          for (std::size_t b = a + 1; b < comps.size(); ++b)
            for (const auto& p : comps[a].basis)
              for (const auto& q : comps[b].basis)
                if (!fischer_inner(p, q).is_zero()) fischer_ok = false;
      }
    }
  } catch (const std::exception& e) {
    dims_ok = false;
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool time_ok = secs < 120.0;
  report(1, dims_ok && time_ok,
         "exact isotypic decomposition, n=2 d<=4 and n=3 d<=3",
         detail.empty() ? ("runtime " + fmt(secs) + "s") : detail);
  report(2, fischer_ok, "exact Fischer orthogonality of distinct components",
         "all pairings exactly zero");
}

// ---- criterion 3: disk oracle ----

void criterion_3(const SampleBatch& disk) {
  auto t0 = Clock::now();
  CompiledSymbol a = compile_symbol("s1^2", 1);
  bool ok = true;
  double worst = 0.0;
  for (int k = 0; k <= 5; ++k) {
    auto comps = decompose_degree(1, k);
    ToeplitzBlock B = toeplitz_block(a, comps[0], disk);
    // independent 1-D Beta-integral oracle: ||z^k||^2 = B(k+1, lambda-1)*(lambda-1)
    // normalized, giving eigenvalue ||z^{k+1}||^2/||z^k||^2 = (k+1)/(k+lambda)
    double oracle = (k + 1.0) / (k + disk.lambda());
    double err = std::abs(B.matrix(0, 0) - Complex(oracle, 0.0));
    worst = std::max(worst, err / B.noise_bound);
    if (err > 3.0 * B.noise_bound) ok = false;
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool time_ok = secs < 60.0;
  report(3, ok && time_ok, "disk oracle eigenvalues (k+1)/(k+3), k<=5",
         "worst error " + fmt(worst) + " stderr, runtime " + fmt(secs) + "s");
}

// ---- criterion 4: reproducing kernel property ----

void criterion_4(const SampleBatch& disk, const SampleBatch& main2) {
  bool ok = true;
  double worst = 0.0;
  auto run = [&](const SampleBatch& batch, int n,
                 const std::function<Complex(const ComplexMatrix&)>& f,
                 std::uint64_t wseed) {
    RngStream rng(wseed, 0);
    for (int t = 0; t < 5; ++t) {
      ComplexMatrix W = sample_domain_uniform(n, rng).Z;
      auto fv = batch.evaluate(f);
      auto kv = batch.evaluate([&](const ComplexMatrix& Z) {
        return bergman_kernel(Z, W, batch.lambda());
      });
      MCEstimate e = batch.inner(fv, kv);
      double err = std::abs(e.value - f(W));
      worst = std::max(worst, err / e.stderr_);
      if (err > 3.0 * e.stderr_) ok = false;
    }
  };
  run(disk, 1,
      [](const ComplexMatrix& Z) {
        Complex z = Z(0, 0);
        return Complex(1, 0) + 2.0 * z + z * z;
      },
      71);
  run(main2, 2,
      [](const ComplexMatrix& Z) {
        return Complex(1, 0) + 2.0 * Z(0, 1) + Z(0, 0) * Z(1, 1);
      },
      72);
  report(4, ok, "reproducing kernel property, n<=2, deg f<=2, 5 random W",
         "worst deviation " + fmt(worst) + " stderr");
}

// ---- criterion 5: scalar action ----

void criterion_5(const SampleBatch& main2) {
  bool ok = true;
  double worst = 0.0;
  auto d1 = decompose_degree(2, 1);
  auto d2 = decompose_degree(2, 2);
  std::vector<const IsotypicComponent*> comps = {&find_mu(d1, {1, 0}),
                                                 &find_mu(d2, {2, 0}),
                                                 &find_mu(d2, {1, 1})};
  for (const char* text : {"tr(G)", "det(G)"}) {
    CompiledSymbol a = compile_symbol(text, 2);
    for (const auto* comp : comps) {
      double defect = scalar_defect(toeplitz_block(a, *comp, main2));
      worst = std::max(worst, defect);
      if (defect > kDefectTol) ok = false;
    }
  }
  report(5, ok, "scalar action of tr(G), det(G) on mu=(1,0),(2,0),(1,1)",
         "worst scalar_defect " + fmt(worst) + " <= " + fmt(kDefectTol));
}

// ---- criterion 6: block-diagonality ----

void criterion_6() {
  SampleBatch batch(2, 5.0, MCConfig{kNsmall, kSeedCross, 1});
  bool ok = true;
  double worst = 0.0;
  for (int d : {2, 3}) {
    auto comps = decompose_degree(2, d);
    for (const char* text : {"tr(G)", "G[1,2]", "H[1,2]"}) {
      CompiledSymbol a = compile_symbol(text, 2);
      for (std::size_t i = 0; i < comps.size(); ++i)
        for (std::size_t j = 0; j < comps.size(); ++j) {
          if (i == j) continue;
          CrossBlock X = cross_block(a, comps[i], comps[j], batch);
          for (int r = 0; r < X.values.rows(); ++r)
            for (int c = 0; c < X.values.cols(); ++c) {
              double ratio = std::abs(X.values(r, c)) / X.stderrs(r, c);
              worst = std::max(worst, ratio);
              if (ratio > 3.0) ok = false;
            }
        }
    }
  }
  report(6, ok, "cross blocks across distinct components vanish, degrees <= 3",
         "worst entry " + fmt(worst) + " stderr");
}

// ---- criterion 7: centralizing ----

void criterion_7(const SampleBatch& main2) {
  CompiledSymbol a = compile_symbol("G[1,2]", 2);
  CompiledSymbol b = compile_symbol("H[1,2]", 2);
  bool ok = true;
  double worst = 0.0;
  for (int d : {1, 2}) {
    for (const auto& comp : decompose_degree(2, d)) {
      ToeplitzBlock Ba = toeplitz_block(a, comp, main2);
      ToeplitzBlock Bb = toeplitz_block(b, comp, main2);
      double defect = commutator_defect(Ba, Bb);
      worst = std::max(worst, defect);
      if (defect > kDefectTol) ok = false;
    }
  }
  report(7, ok, "left/right-invariant Toeplitz algebras centralize each other",
         "worst commutator_defect " + fmt(worst) + " <= " + fmt(kDefectTol));
}

// ---- criterion 8: non-normal witness ----

void criterion_8() {
  SampleBatch batch(2, 5.0, MCConfig{kNnonnormal, kSeedNonnormal, 1});
  CompiledSymbol a = compile_symbol("G[1,2]", 2);
  auto comps = decompose_degree(2, 1);
  ToeplitzBlock B = toeplitz_block(a, comps[0], batch);
  double defect = normality_defect(B);
  double noise = normality_noise(B);
  bool witness = defect >= 5.0 * noise;
  bool golden = std::abs(defect - kGoldenNonnormal) <= 0.2 * kGoldenNonnormal;
  report(8, witness && golden, "T_{G[1,2]} on mu=(1,0) is not normal",
         "normality_defect " + fmt(defect) + " = " + fmt(defect / noise) +
             "x noise, golden " + fmt(kGoldenNonnormal) + " +-20%");
}

// ---- criterion 9: non-commutativity witness ----

void criterion_9() {
  // witness pair frozen from a high-sample pre-run over all pairs from
  // {G[1,1], G[1,2], G[2,2]} on degrees <= 2: (G[1,1], G[1,2]) on mu=(1,0)
  SampleBatch batch(2, 5.0, MCConfig{kNwitness, kSeedWitness, 1});
  auto comps = decompose_degree(2, 1);
  ToeplitzBlock Ba = toeplitz_block(compile_symbol("G[1,1]", 2), comps[0], batch);
  ToeplitzBlock Bb = toeplitz_block(compile_symbol("G[1,2]", 2), comps[0], batch);
  double defect = commutator_defect(Ba, Bb);
  double noise = commutator_noise(Ba, Bb);
  report(9, defect >= 5.0 * noise,
         "left-invariant Toeplitz algebra is not commutative: [T_G11, T_G12]",
         "commutator_defect " + fmt(defect) + " = " + fmt(defect / noise) + "x noise");
}

// ---- criterion 10: intertwining ----

void criterion_10(const SampleBatch& main2) {
  auto comps = decompose_degree(2, 2);
  const IsotypicComponent& comp = find_mu(comps, {2, 0});
  bool ok = true;
  std::ostringstream detail;

  CompiledSymbol trg = compile_symbol("tr(G)", 2);
  ToeplitzBlock Bt = toeplitz_block(trg, comp, main2);
  RngStream r1(301, 0);
  double d_uun = intertwining_defect(Bt, comp, Group::UUn, r1, 20);
  if (d_uun > kDefectTol) ok = false;

  CompiledSymbol g12 = compile_symbol("G[1,2]", 2);
  ToeplitzBlock Bg = toeplitz_block(g12, comp, main2);
  RngStream r2(302, 0);
  double d_unl = intertwining_defect(Bg, comp, Group::UnL, r2, 20);
  if (d_unl > kDefectTol) ok = false;

  RngStream r3(303, 0);
  double d_unr = intertwining_defect(Bg, comp, Group::UnR, r3, 20);
  double noise = intertwining_noise(Bg);
  if (d_unr < 5.0 * noise) ok = false;

  detail << "tr(G)/UUn " << fmt(d_uun) << ", G[1,2]/UnL " << fmt(d_unl)
         << ", G[1,2]/UnR " << fmt(d_unr) << " = " << fmt(d_unr / noise) << "x noise";
  report(10, ok, "pi_lambda intertwining of invariant Toeplitz blocks", detail.str());
}

// ---- criterion 11: symbol-class separation ----

void criterion_11() {
  auto dev = [](const char* text, Group g, std::uint64_t seed) {
    CompiledSymbol s = compile_symbol(text, 2);
    RngStream rng(seed, 0);
    return invariance_check(s, g, rng, 100).max_rel_deviation;
  };
  bool ok = true;
  ok = ok && dev("G[1,2]", Group::UnL, 401) <= kExactInvarianceTol;
  ok = ok && dev("G[1,2]", Group::UnR, 402) > 1e-2;
  ok = ok && dev("H[1,2]", Group::UnR, 403) <= kExactInvarianceTol;
  ok = ok && dev("H[1,2]", Group::UnL, 404) > 1e-2;
  ok = ok && dev("s1*s2", Group::UUn, 405) <= kExactInvarianceTol;
  ok = ok && dev("s1*s2", Group::UnL, 406) <= kExactInvarianceTol;
  ok = ok && dev("s1*s2", Group::UnR, 407) <= kExactInvarianceTol;
  report(11, ok, "the three invariance classes are distinct for n=2",
         "G[1,2]: UnL only; H[1,2]: UnR only; s1*s2: all three");
}

// ---- criterion 12: infrastructure honesty ----

void criterion_12() {
  bool ok = true;
  std::ostringstream detail;

  // stderr ~ N^{-1/2} over N in {5e4, 2e5}: expected ratio 2, factor 1.5
  {
    ExponentMatrix alpha(1);
    alpha.at(0, 0) = 1;
    Polynomial z = Polynomial::monomial(alpha, RationalComplex(1));
    SampleBatch small(1, 3.0, MCConfig{50000, 61, 1});
    SampleBatch big(1, 3.0, MCConfig{200000, 61, 1});
    auto fs = small.evaluate(z);
    auto fb = big.evaluate(z);
    double ratio = small.inner(fs, fs).stderr_ / big.inner(fb, fb).stderr_;
    detail << "stderr ratio " << fmt(ratio);
    if (ratio < 2.0 / 1.5 || ratio > 2.0 * 1.5) ok = false;
  }
  // shard-count independence is bit-exact
  {
    SampleBatch a(2, 5.0, MCConfig{5000, 62, 1});
    SampleBatch b(2, 5.0, MCConfig{5000, 62, 16});
    bool same = a.weights() == b.weights();
    for (long i = 0; same && i < a.size(); ++i)
      same = (a.samples()[static_cast<std::size_t>(i)] -
              b.samples()[static_cast<std::size_t>(i)]).norm() == 0.0;
    detail << ", shard bit-exact " << (same ? "yes" : "no");
    if (!same) ok = false;
  }
  // Haar moment E|U11|^2 = 1/n for n=2
  {
    const int N = 50000;
    RngStream rng(63, 0);
    double sum = 0.0, sum2 = 0.0;
    for (int t = 0; t < N; ++t) {
      double v = std::norm(haar_unitary(2, rng)(0, 0));
      sum += v;
      sum2 += v * v;
    }
    double mean = sum / N;
    double se = std::sqrt((sum2 / N - mean * mean) / N);
    detail << ", Haar moment dev " << fmt(std::abs(mean - 0.5) / se) << " stderr";
    if (std::abs(mean - 0.5) > 3.0 * se) ok = false;
  }
  report(12, ok, "infrastructure honesty: stderr scaling, sharding, Haar moment",
         detail.str());
}

}  // namespace

int main() {
  criteria_1_2();

  SampleBatch disk(1, 3.0, MCConfig{kNmain, kSeedMain, 1});
  SampleBatch main2(2, 5.0, MCConfig{kNmain, kSeedMain, 1});

  criterion_3(disk);
  criterion_4(disk, main2);
  criterion_5(main2);
  criterion_6();
  criterion_7(main2);
  criterion_8();
  criterion_9();
  criterion_10(main2);
  criterion_11();
  criterion_12();

  if (g_failures == 0) {
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
