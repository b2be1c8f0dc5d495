#include "bergtoep/polyrep.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace bergtoep {

std::string DominantWeight::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ",";
    os << m[i];
  }
  os << ")";
  return os.str();
}

std::vector<Polynomial> monomial_basis(int n, int d) {
  std::vector<std::vector<int>> exps;
  std::vector<int> cur(static_cast<std::size_t>(n * n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n * n) {
      if (left == 0) exps.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[static_cast<std::size_t>(pos)] = e;
      rec(pos + 1, left - e);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, d);
  std::sort(exps.begin(), exps.end());
  std::vector<Polynomial> out;
  out.reserve(exps.size());
  for (const auto& e : exps) {
    ExponentMatrix alpha(n);
    alpha.a = e;
    out.push_back(Polynomial::monomial(alpha, RationalComplex(1)));
  }
  return out;
}

Polynomial lie_act(Side side, int j, int k, const Polynomial& p) {
  const int n = p.n();
  if (j < 1 || j > n || k < 1 || k > n)
    throw IndexOutOfRange("lie_act: generator index out of range");
  const int J = j - 1, K = k - 1;
  Polynomial r(n);
  if (side == Side::Left) {
    for (int m = 0; m < n; ++m)
      r -= p.differentiate(J, m).mul_entry(K, m);
  } else {
    for (int m = 0; m < n; ++m)
      r += p.differentiate(m, K).mul_entry(m, J);
  }
  return r;
}

WeightPair torus_weight(const ExponentMatrix& alpha) {
  WeightPair w;
  w.row.assign(static_cast<std::size_t>(alpha.n), 0);
  w.col.assign(static_cast<std::size_t>(alpha.n), 0);
  for (int j = 0; j < alpha.n; ++j)
    for (int k = 0; k < alpha.n; ++k) {
      w.row[static_cast<std::size_t>(j)] += alpha.at(j, k);
      w.col[static_cast<std::size_t>(k)] += alpha.at(j, k);
    }
  return w;
}

long weyl_dim(const DominantWeight& mu, int n) {
  std::vector<int> m = mu.m;
  m.resize(static_cast<std::size_t>(n), 0);
  long num = 1, den = 1;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      num *= m[static_cast<std::size_t>(j)] - m[static_cast<std::size_t>(k)] + k - j;
      den *= k - j;
    }
  return num / den;
}

std::vector<DominantWeight> partitions(int d, int max_parts) {
  std::vector<DominantWeight> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxv) {
    if (left == 0) {
      DominantWeight mu;
      mu.m = cur;
      mu.m.resize(static_cast<std::size_t>(max_parts), 0);
      out.push_back(mu);
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int v = std::min(left, maxv); v >= 1; --v) {
      cur.push_back(v);
      rec(left - v, v);
      cur.pop_back();
    }
  };
  rec(d, d);
  // descending lex, so (d,0,..) comes first
  std::sort(out.begin(), out.end(), [](const DominantWeight& a, const DominantWeight& b) {
    return b.m < a.m;
  });
  return out;
}

namespace {

using Vec = std::vector<RationalComplex>;

// incremental reduced row echelon form over Q(i)
class ExactBasis {
 public:
  explicit ExactBasis(std::size_t ncols) : ncols_(ncols) {}

  std::size_t rank() const { return rows_.size(); }

  void reduce(Vec& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const RationalComplex& c = v[static_cast<std::size_t>(pivots_[r])];
      if (c.is_zero()) continue;
      RationalComplex f = c;  // pivot entries are 1
      for (std::size_t i = 0; i < ncols_; ++i)
        if (!rows_[r][i].is_zero()) v[i] -= f * rows_[r][i];
    }
  }

  // returns true if v was independent (and is now part of the basis)
  bool insert(Vec v) {
    reduce(v);
    std::size_t p = ncols_;
    for (std::size_t i = 0; i < ncols_; ++i)
      if (!v[i].is_zero()) {
        p = i;
        break;
      }
    if (p == ncols_) return false;
    RationalComplex inv = RationalComplex(1) / v[p];
    for (auto& c : v) c = inv * c;
    // back-eliminate existing rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      RationalComplex f = rows_[r][p];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < ncols_; ++i)
        if (!v[i].is_zero()) rows_[r][i] -= f * v[i];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(static_cast<int>(p));
    return true;
  }

 private:
  std::size_t ncols_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

// nullspace basis of the system {row . x = 0}, deterministic ordering
std::vector<Vec> exact_nullspace(const std::vector<Vec>& equations, std::size_t ncols) {
  // RREF of the equation matrix
  std::vector<Vec> rref;
  std::vector<std::size_t> pivots;
  for (Vec eq : equations) {
    for (std::size_t r = 0; r < rref.size(); ++r) {
      RationalComplex f = eq[pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < ncols; ++i)
        if (!rref[r][i].is_zero()) eq[i] -= f * rref[r][i];
    }
    std::size_t p = ncols;
    for (std::size_t i = 0; i < ncols; ++i)
      if (!eq[i].is_zero()) {
        p = i;
        break;
      }
    if (p == ncols) continue;
    RationalComplex inv = RationalComplex(1) / eq[p];
    for (auto& c : eq) c = inv * c;
    for (std::size_t r = 0; r < rref.size(); ++r) {
      RationalComplex f = rref[r][p];
      if (f.is_zero()) continue;
      for (std::size_t i = 0; i < ncols; ++i)
        if (!eq[i].is_zero()) rref[r][i] -= f * eq[i];
    }
    rref.push_back(std::move(eq));
    pivots.push_back(p);
  }
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(ncols);
    x[f] = RationalComplex(1);
    for (std::size_t r = 0; r < rref.size(); ++r) x[pivots[r]] = -rref[r][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

struct MonomialIndex {
  std::map<ExponentMatrix, std::size_t> index;
  std::vector<ExponentMatrix> mons;

  MonomialIndex(int n, int d) {
    for (const auto& p : monomial_basis(n, d)) {
      const ExponentMatrix& alpha = p.terms().begin()->first;
      index[alpha] = mons.size();
      mons.push_back(alpha);
    }
  }

  Vec to_vec(const Polynomial& p) const {
    Vec v(mons.size());
    for (const auto& [alpha, c] : p.terms()) v[index.at(alpha)] = c;
    return v;
  }

  Polynomial to_poly(const Vec& v, int n) const {
    Polynomial p(n);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) p.add_term(mons[i], v[i]);
    return p;
  }
};

}  // namespace

std::vector<std::pair<DominantWeight, Polynomial>> highest_weight_vectors(int n, int d) {
  MonomialIndex mi(n, d);
  std::vector<std::pair<DominantWeight, Polynomial>> out;
  for (const DominantWeight& mu : partitions(d, n)) {
    // weight space: monomials whose column sums equal mu
    std::vector<ExponentMatrix> wspace;
    for (const auto& alpha : mi.mons) {
      if (torus_weight(alpha).col == mu.m) wspace.push_back(alpha);
    }
    // equations: raising operators for both factors kill a joint HWV
    std::vector<Vec> equations;
    for (Side side : {Side::Left, Side::Right}) {
      for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) {
          // row per target monomial; build columns from op applied to each
          // weight-space monomial
          std::map<ExponentMatrix, Vec> rows;
          for (std::size_t w = 0; w < wspace.size(); ++w) {
            Polynomial img =
                lie_act(side, j, k, Polynomial::monomial(wspace[w], RationalComplex(1)));
            for (const auto& [beta, c] : img.terms()) {
              auto it = rows.find(beta);
              if (it == rows.end())
                it = rows.emplace(beta, Vec(wspace.size())).first;
              it->second[w] += c;
            }
          }
          for (auto& [beta, row] : rows) equations.push_back(std::move(row));
        }
    }
    std::vector<Vec> kernel = exact_nullspace(equations, wspace.size());
    if (kernel.size() != 1)
      throw MultiplicityViolation("highest_weight_vectors: kernel for mu=" + mu.str() +
                                  " has dimension " + std::to_string(kernel.size()));
    Polynomial hwv(n);
    for (std::size_t w = 0; w < wspace.size(); ++w)
      if (!kernel[0][w].is_zero()) hwv.add_term(wspace[w], kernel[0][w]);
    // normalize: leading (graded-lex first) coefficient 1
    RationalComplex lead = hwv.terms().begin()->second;
    hwv = (RationalComplex(1) / lead) * hwv;
    out.emplace_back(mu, hwv);
  }
  return out;
}

IsotypicComponent generate_component(const DominantWeight& mu, const Polynomial& hwv) {
  const int n = hwv.n();
  const int d = hwv.degree();
  MonomialIndex mi(n, d);
  ExactBasis span(mi.mons.size());
  std::vector<Polynomial> basis;
  std::vector<Polynomial> frontier;
  span.insert(mi.to_vec(hwv));
  basis.push_back(hwv);
  frontier.push_back(hwv);
  // breadth-first closure under the lowering operators of both factors
  while (!frontier.empty()) {
    std::vector<Polynomial> next;
    for (const Polynomial& p : frontier) {
      for (Side side : {Side::Left, Side::Right}) {
        for (int j = 2; j <= n; ++j)
          for (int k = 1; k < j; ++k) {
            Polynomial q = lie_act(side, j, k, p);
            if (q.is_zero()) continue;
            if (span.insert(mi.to_vec(q))) {
              basis.push_back(q);
              next.push_back(q);
            }
          }
      }
    }
    frontier = std::move(next);
  }
  IsotypicComponent comp;
  comp.mu = mu;
  comp.degree = d;
  comp.weyl_dim = weyl_dim(mu, n);
  comp.expected_dim = comp.weyl_dim * comp.weyl_dim;
  comp.basis = std::move(basis);
  if (static_cast<long>(comp.basis.size()) != comp.expected_dim)
    throw DimensionMismatch("generate_component: mu=" + mu.str() + " span dimension " +
                            std::to_string(comp.basis.size()) + " != " +
                            std::to_string(comp.expected_dim));
  return comp;
}

std::vector<IsotypicComponent> decompose_degree(int n, int d) {
  if (n > 3 || d > 5)
    throw ConfigError("decompose_degree: resource guard n <= 3, d <= 5");
  auto hwvs = highest_weight_vectors(n, d);
  std::vector<IsotypicComponent> comps;
  long total = 0;
  for (const auto& [mu, hwv] : hwvs) {
    comps.push_back(generate_component(mu, hwv));
    total += comps.back().expected_dim;
  }
  MonomialIndex mi(n, d);
  if (total != static_cast<long>(mi.mons.size()))
    throw DimensionMismatch("decompose_degree: sum of squared Weyl dimensions " +
                            std::to_string(total) + " != dim P^d = " +
                            std::to_string(mi.mons.size()));
  ExactBasis all(mi.mons.size());
  for (const auto& comp : comps)
    for (const auto& p : comp.basis)
      if (!all.insert(mi.to_vec(p)))
        throw DimensionMismatch("decompose_degree: concatenated bases are dependent");
  return comps;
}

RationalComplex fischer_inner(const Polynomial& p, const Polynomial& q) {
  RationalComplex sum;
  for (const auto& [alpha, cp] : p.terms()) {
    RationalComplex cq = q.coeff(alpha);
    if (cq.is_zero()) continue;
    mpz_class fact = 1;
    for (int e : alpha.a) {
      mpz_class f;
      mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(e));
      fact *= f;
    }
    sum += RationalComplex(mpq_class(fact)) * cp * cq.conj();
  }
  return sum;
}

NumericPolynomial substitute(const Polynomial& p, const ComplexMatrix& A, const ComplexMatrix& B) {
  const int n = p.n();
  auto unitary_dev = [](const ComplexMatrix& M) {
    return (M * M.adjoint() - ComplexMatrix::Identity(M.rows(), M.cols())).norm();
  };
  if (unitary_dev(A) > 1e-10 || unitary_dev(B) > 1e-10)
    throw NotUnitary("substitute: A and B must be unitary to 1e-10");
  // linear forms (A* Z B)_{jk}
  std::vector<std::vector<NumericPolynomial>> L(
      static_cast<std::size_t>(n), std::vector<NumericPolynomial>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      NumericPolynomial& f = L[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      f.n = n;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::complex<double> c = std::conj(A(a, j)) * B(b, k);
          if (c == std::complex<double>(0.0)) continue;
          ExponentMatrix e(n);
          e.at(a, b) = 1;
          f.terms[e] += c;
        }
    }
  auto mul = [n](const NumericPolynomial& f, const NumericPolynomial& g) {
    NumericPolynomial r;
    r.n = n;
    for (const auto& [fa, fc] : f.terms)
      for (const auto& [ga, gc] : g.terms) {
        ExponentMatrix e = fa;
        for (std::size_t i = 0; i < e.a.size(); ++i) e.a[i] += ga.a[i];
        r.terms[e] += fc * gc;
      }
    return r;
  };
  NumericPolynomial out;
  out.n = n;
  for (const auto& [alpha, c] : p.terms()) {
    NumericPolynomial t;
    t.n = n;
    t.terms[ExponentMatrix(n)] = c.to_double();
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int e = 0; e < alpha.at(j, k); ++e)
          t = mul(t, L[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
    for (const auto& [ta, tc] : t.terms) out.terms[ta] += tc;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();) {
    if (std::abs(it->second) == 0.0)
      it = out.terms.erase(it);
    else
      ++it;
  }
  return out;
}

std::string component_to_json(const IsotypicComponent& comp, int n) {
  nlohmann::json j;
  j["n"] = n;
  j["d"] = comp.degree;
  j["mu"] = comp.mu.m;
  j["weyl_dim"] = comp.weyl_dim;
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& p : comp.basis) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [alpha, c] : p.terms()) {
      nlohmann::json t;
      t["alpha"] = alpha.a;
      t["re"] = c.re_str();
      t["im"] = c.im_str();
      terms.push_back(t);
    }
    basis.push_back(terms);
  }
  j["basis"] = basis;
  return j.dump();
}

}  // namespace bergtoep
