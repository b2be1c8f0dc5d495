#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bergtoep/errors.hpp"
#include "bergtoep/matdomain.hpp"
#include "bergtoep/rng.hpp"

namespace bergtoep {

enum class SymbolKind { UUInvariant, LeftInvariant, RightInvariant, General };
enum class Group { UUn, UnL, UnR };

std::string to_string(SymbolKind k);
std::string to_string(Group g);

struct SymbolExpr {
  enum class Tag {
    Literal,
    SingularValue,  // s_idx (1-based, descending)
    GEntry,         // (Z*Z)_{jk}
    HEntry,         // (ZZ*)_{jk}
    ZEntry,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Conj,
    Abs,
    Re,
    Im,
    Pow,  // integer exponent >= 0
    TrG,
    TrH,
    DetG,
    DetH,
  };
  Tag tag;
  std::complex<double> literal{};
  int i = 0, j = 0;  // 1-based indices for variables
  int exponent = 0;
  std::shared_ptr<const SymbolExpr> a, b;
};

using SymbolExprPtr = std::shared_ptr<const SymbolExpr>;

SymbolExprPtr parse_symbol(const std::string& text, int n);

// Syntactic classification: sound but incomplete (a semantically
// UU-invariant expression written through G entries reports LeftInvariant).
SymbolKind classify(const SymbolExpr& e);
SymbolKind classify(const SymbolExprPtr& e);

// Static magnitude bound from |Z_{jk}|, |G_{jk}|, |H_{jk}| <= 1 and
// s_i in [0,1); divisions use the declared divisor lower bound.
double static_bound(const SymbolExpr& e, int n, double divisor_min);

class CompiledSymbol {
 public:
  CompiledSymbol() = default;

  int n() const { return n_; }
  SymbolKind kind() const { return kind_; }
  double sup_bound() const { return sup_bound_; }
  const std::string& text() const { return text_; }
  std::optional<Group> approx_invariant_under() const { return approx_invariant_under_; }

  std::complex<double> eval(const ComplexMatrix& Z) const;

  friend CompiledSymbol compile_symbol(const std::string& text, int n, double divisor_min);
  friend CompiledSymbol average_symbol(const CompiledSymbol& sym, Group group,
                                       const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>&
                                           elements);

 private:
  int n_ = 0;
  SymbolKind kind_ = SymbolKind::General;
  double sup_bound_ = 0.0;
  double divisor_min_ = 0.0;
  std::string text_;
  SymbolExprPtr ast_;
  std::function<std::complex<double>(const ComplexMatrix&)> fn_;  // set for averaged symbols
  std::optional<Group> approx_invariant_under_;
};

CompiledSymbol compile_symbol(const std::string& text, int n, double divisor_min = 1e-6);

struct InvarianceReport {
  std::string symbol;
  SymbolKind kind;
  Group group;
  int trials;
  double max_rel_deviation;
  std::vector<double> deviations;
};

InvarianceReport invariance_check(const CompiledSymbol& sym, Group group, RngStream& rng,
                                  int trials);

// Monte-Carlo Haar average over the group, frozen at construction.
CompiledSymbol average_symbol(const CompiledSymbol& sym, Group group, RngStream& rng, int m);
CompiledSymbol average_symbol(const CompiledSymbol& sym, Group group,
                              const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& elements);

std::string invariance_report_to_json(const InvarianceReport& rep);

}  // namespace bergtoep
