#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bergtoep/errors.hpp"
#include "bergtoep/matdomain.hpp"
#include "bergtoep/polynomial.hpp"

namespace bergtoep {

enum class Side { Left, Right };

// (row sums, col sums) of the exponent matrix; each monomial is a joint
// torus weight vector for the two diagonal actions.
struct WeightPair {
  std::vector<int> row;
  std::vector<int> col;
};

// m_1 >= ... >= m_n >= 0
struct DominantWeight {
  std::vector<int> m;

  int size() const {
    int s = 0;
    for (int v : m) s += v;
    return s;
  }
  bool is_valid() const {
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      if (m[i] < m[i + 1]) return false;
    return m.empty() || m.back() >= 0;
  }
  friend bool operator==(const DominantWeight& a, const DominantWeight& b) { return a.m == b.m; }
  friend bool operator<(const DominantWeight& a, const DominantWeight& b) { return a.m < b.m; }
  std::string str() const;
};

struct IsotypicComponent {
  DominantWeight mu;
  int degree;
  std::vector<Polynomial> basis;
  long weyl_dim;
  long expected_dim;  // weyl_dim^2
};

std::vector<Polynomial> monomial_basis(int n, int d);

// Differential of the action p(Z) -> p(A^{-1} Z B).
// Left:  (dpi(E_jk, 0) p)(Z) = -sum_m Z_{km} dp/dZ_{jm}
// Right: (dpi(0, E_jk) p)(Z) = +sum_m Z_{mj} dp/dZ_{mk}
Polynomial lie_act(Side side, int j, int k, const Polynomial& p);

WeightPair torus_weight(const ExponentMatrix& alpha);

long weyl_dim(const DominantWeight& mu, int n);

std::vector<DominantWeight> partitions(int d, int max_parts);

std::vector<std::pair<DominantWeight, Polynomial>> highest_weight_vectors(int n, int d);

IsotypicComponent generate_component(const DominantWeight& mu, const Polynomial& hwv);

std::vector<IsotypicComponent> decompose_degree(int n, int d);

RationalComplex fischer_inner(const Polynomial& p, const Polynomial& q);

NumericPolynomial substitute(const Polynomial& p, const ComplexMatrix& A, const ComplexMatrix& B);

std::string component_to_json(const IsotypicComponent& comp, int n);

}  // namespace bergtoep
