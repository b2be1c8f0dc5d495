#include "bergtoep/symbols.hpp"

#include <cctype>
#include <cmath>

#include "json.hpp"

namespace bergtoep {

std::string to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::UUInvariant: return "UUInvariant";
    case SymbolKind::LeftInvariant: return "LeftInvariant";
    case SymbolKind::RightInvariant: return "RightInvariant";
    case SymbolKind::General: return "General";
  }
  return "?";
}

std::string to_string(Group g) {
  switch (g) {
    case Group::UUn: return "uun";
    case Group::UnL: return "unl";
    case Group::UnR: return "unr";
  }
  return "?";
}

namespace {

using Tag = SymbolExpr::Tag;

SymbolExprPtr make(Tag tag, SymbolExprPtr a = nullptr, SymbolExprPtr b = nullptr) {
  auto e = std::make_shared<SymbolExpr>();
  e->tag = tag;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

class Parser {
 public:
  Parser(const std::string& text, int n) : text_(text), n_(n) {}

  SymbolExprPtr parse() {
    auto e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SymbolSyntaxError(pos_, "end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw SymbolSyntaxError(pos_, std::string("'") + c + "'");
  }

  SymbolExprPtr expr() {
    auto e = term();
    while (true) {
      if (accept('+'))
        e = make(Tag::Add, e, term());
      else if (accept('-'))
        e = make(Tag::Sub, e, term());
      else
        return e;
    }
  }

  SymbolExprPtr term() {
    auto e = factor();
    while (true) {
      if (accept('*'))
        e = make(Tag::Mul, e, factor());
      else if (accept('/'))
        e = make(Tag::Div, e, factor());
      else
        return e;
    }
  }

  SymbolExprPtr factor() {
    if (accept('-')) return make(Tag::Neg, factor());
    auto e = atom();
    if (accept('^')) {
      auto p = make(Tag::Pow, e);
      const_cast<SymbolExpr*>(p.get())->exponent = integer();
      return p;
    }
    return e;
  }

  int integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw SymbolSyntaxError(pos_, "integer");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  int index_in_range(const std::string& var) {
    int idx = integer();
    if (idx < 1 || idx > n_)
      throw IndexOutOfRange(var + " index " + std::to_string(idx) + " out of range 1.." +
                            std::to_string(n_));
    return idx;
  }

  SymbolExprPtr matrix_entry(Tag tag, const std::string& var) {
    expect('[');
    int i = index_in_range(var);
    expect(',');
    int j = index_in_range(var);
    expect(']');
    auto e = make(tag);
    auto* m = const_cast<SymbolExpr*>(e.get());
    m->i = i;
    m->j = j;
    return e;
  }

  SymbolExprPtr atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      auto e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == 's') {
      ++pos_;
      // distinguish the variable s1..sn from nothing else starting with s
      auto e = make(Tag::SingularValue);
      const_cast<SymbolExpr*>(e.get())->i = index_in_range("s");
      return e;
    }
    if (c == 'G') {
      ++pos_;
      return matrix_entry(Tag::GEntry, "G");
    }
    if (c == 'H') {
      ++pos_;
      return matrix_entry(Tag::HEntry, "H");
    }
    if (c == 'Z') {
      ++pos_;
      return matrix_entry(Tag::ZEntry, "Z");
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw SymbolSyntaxError(pos_, "number, variable, function or '('");
  }

  SymbolExprPtr number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if ((pos_ < text_.size()) && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double v = std::stod(text_.substr(start, pos_ - start));
    auto e = make(Tag::Literal);
    auto* m = const_cast<SymbolExpr*>(e.get());
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      m->literal = {0.0, v};
    } else {
      m->literal = {v, 0.0};
    }
    return e;
  }

  SymbolExprPtr identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "i") {
      auto e = make(Tag::Literal);
      const_cast<SymbolExpr*>(e.get())->literal = {0.0, 1.0};
      return e;
    }
    if (name == "tr" || name == "det") {
      expect('(');
      char arg = peek();
      if (arg != 'G' && arg != 'H') throw SymbolSyntaxError(pos_, "'G' or 'H'");
      ++pos_;
      expect(')');
      Tag tag = (name == "tr") ? (arg == 'G' ? Tag::TrG : Tag::TrH)
                               : (arg == 'G' ? Tag::DetG : Tag::DetH);
      return make(tag);
    }
    if (name == "pow") {
      expect('(');
      auto a = expr();
      expect(',');
      int k = integer();
      expect(')');
      auto e = make(Tag::Pow, a);
      const_cast<SymbolExpr*>(e.get())->exponent = k;
      return e;
    }
    Tag tag;
    if (name == "conj")
      tag = Tag::Conj;
    else if (name == "abs")
      tag = Tag::Abs;
    else if (name == "re")
      tag = Tag::Re;
    else if (name == "im")
      tag = Tag::Im;
    else
      throw SymbolSyntaxError(start, "known function name");
    expect('(');
    auto a = expr();
    expect(')');
    return make(tag, a);
  }

  const std::string& text_;
  int n_;
  std::size_t pos_ = 0;
};

struct UsageFlags {
  bool s = false;
  bool g_entry = false;
  bool h_entry = false;
  bool z_entry = false;
  bool div = false;
};

void collect_usage(const SymbolExpr& e, UsageFlags& f) {
  switch (e.tag) {
    case Tag::SingularValue: f.s = true; break;
    case Tag::GEntry: f.g_entry = true; break;
    case Tag::HEntry: f.h_entry = true; break;
    case Tag::ZEntry: f.z_entry = true; break;
    case Tag::Div: f.div = true; break;
    default: break;
  }
  if (e.a) collect_usage(*e.a, f);
  if (e.b) collect_usage(*e.b, f);
}

struct EvalContext {
  const ComplexMatrix& Z;
  mutable std::optional<ComplexMatrix> G, H;
  mutable std::optional<Eigen::VectorXd> s;

  const ComplexMatrix& g() const {
    if (!G) G = Z.adjoint() * Z;
    return *G;
  }
  const ComplexMatrix& h() const {
    if (!H) H = Z * Z.adjoint();
    return *H;
  }
  double sv(int i) const {
    if (!s) {
      Eigen::JacobiSVD<ComplexMatrix> svd(Z);
      s = svd.singularValues();
    }
    return (*s)(i - 1);
  }
};

std::complex<double> eval_node(const SymbolExpr& e, const EvalContext& ctx, double divisor_min) {
  switch (e.tag) {
    case Tag::Literal: return e.literal;
    case Tag::SingularValue: return ctx.sv(e.i);
    case Tag::GEntry: return ctx.g()(e.i - 1, e.j - 1);
    case Tag::HEntry: return ctx.h()(e.i - 1, e.j - 1);
    case Tag::ZEntry: return ctx.Z(e.i - 1, e.j - 1);
    case Tag::Add: return eval_node(*e.a, ctx, divisor_min) + eval_node(*e.b, ctx, divisor_min);
    case Tag::Sub: return eval_node(*e.a, ctx, divisor_min) - eval_node(*e.b, ctx, divisor_min);
    case Tag::Mul: return eval_node(*e.a, ctx, divisor_min) * eval_node(*e.b, ctx, divisor_min);
    case Tag::Div: {
      auto num = eval_node(*e.a, ctx, divisor_min);
      auto den = eval_node(*e.b, ctx, divisor_min);
      if (std::abs(den) < divisor_min)
        throw DivisorBelowBound("divisor modulus " + std::to_string(std::abs(den)) +
                                " below declared bound " + std::to_string(divisor_min));
      return num / den;
    }
    case Tag::Neg: return -eval_node(*e.a, ctx, divisor_min);
    case Tag::Conj: return std::conj(eval_node(*e.a, ctx, divisor_min));
    case Tag::Abs: return std::abs(eval_node(*e.a, ctx, divisor_min));
    case Tag::Re: return eval_node(*e.a, ctx, divisor_min).real();
    case Tag::Im: return eval_node(*e.a, ctx, divisor_min).imag();
    case Tag::Pow: {
      auto base = eval_node(*e.a, ctx, divisor_min);
      std::complex<double> r = 1.0;
      for (int k = 0; k < e.exponent; ++k) r *= base;
      return r;
    }
    case Tag::TrG: return ctx.g().trace();
    case Tag::TrH: return ctx.h().trace();
    case Tag::DetG: return ctx.g().determinant();
    case Tag::DetH: return ctx.h().determinant();
  }
  return 0.0;
}

}  // namespace

SymbolExprPtr parse_symbol(const std::string& text, int n) { return Parser(text, n).parse(); }

SymbolKind classify(const SymbolExpr& e) {
  UsageFlags f;
  collect_usage(e, f);
  if (f.z_entry || (f.g_entry && f.h_entry)) return SymbolKind::General;
  if (f.g_entry) return SymbolKind::LeftInvariant;
  if (f.h_entry) return SymbolKind::RightInvariant;
  return SymbolKind::UUInvariant;
}

SymbolKind classify(const SymbolExprPtr& e) { return classify(*e); }

double static_bound(const SymbolExpr& e, int n, double divisor_min) {
  switch (e.tag) {
    case Tag::Literal: return std::abs(e.literal);
    case Tag::SingularValue: return 1.0;
    case Tag::GEntry:
    case Tag::HEntry:
    case Tag::ZEntry: return 1.0;
    case Tag::Add:
    case Tag::Sub:
      return static_bound(*e.a, n, divisor_min) + static_bound(*e.b, n, divisor_min);
    case Tag::Mul:
      return static_bound(*e.a, n, divisor_min) * static_bound(*e.b, n, divisor_min);
    case Tag::Div: return static_bound(*e.a, n, divisor_min) / divisor_min;
    case Tag::Neg:
    case Tag::Conj:
    case Tag::Abs:
    case Tag::Re:
    case Tag::Im: return static_bound(*e.a, n, divisor_min);
    case Tag::Pow: return std::pow(static_bound(*e.a, n, divisor_min), e.exponent);
    case Tag::TrG:
    case Tag::TrH: return static_cast<double>(n);
    case Tag::DetG:
    case Tag::DetH: return 1.0;
  }
  return 0.0;
}

std::complex<double> CompiledSymbol::eval(const ComplexMatrix& Z) const {
  std::complex<double> v;
  if (fn_) {
    v = fn_(Z);
  } else {
    EvalContext ctx{Z};
    v = eval_node(*ast_, ctx, divisor_min_);
  }
  if (std::abs(v) > sup_bound_ * (1.0 + 1e-9))
    throw BoundExceeded("symbol value " + std::to_string(std::abs(v)) +
                        " exceeds declared sup bound " + std::to_string(sup_bound_));
  return v;
}

CompiledSymbol compile_symbol(const std::string& text, int n, double divisor_min) {
  CompiledSymbol s;
  s.n_ = n;
  s.text_ = text;
  s.ast_ = parse_symbol(text, n);
  s.kind_ = classify(s.ast_);
  s.divisor_min_ = divisor_min;
  s.sup_bound_ = static_bound(*s.ast_, n, divisor_min);
  return s;
}

InvarianceReport invariance_check(const CompiledSymbol& sym, Group group, RngStream& rng,
                                  int trials) {
  InvarianceReport rep;
  rep.symbol = sym.text();
  rep.kind = sym.kind();
  rep.group = group;
  rep.trials = trials;
  rep.max_rel_deviation = 0.0;
  const int n = sym.n();
  for (int t = 0; t < trials; ++t) {
    ComplexMatrix Z = sample_domain_uniform(n, rng).Z;
    ComplexMatrix U = haar_unitary(n, rng);
    ComplexMatrix V = haar_unitary(n, rng);
    ComplexMatrix T;
    switch (group) {
      case Group::UUn: T = U.adjoint() * Z * V; break;
      case Group::UnL: T = U * Z; break;
      case Group::UnR: T = Z * V; break;
    }
    std::complex<double> a0 = sym.eval(Z);
    std::complex<double> a1 = sym.eval(T);
    double dev = std::abs(a1 - a0) / std::max(1.0, std::abs(a0));
    rep.deviations.push_back(dev);
    rep.max_rel_deviation = std::max(rep.max_rel_deviation, dev);
  }
  return rep;
}

CompiledSymbol average_symbol(const CompiledSymbol& sym, Group group,
                              const std::vector<std::pair<ComplexMatrix, ComplexMatrix>>& elements) {
  CompiledSymbol out;
  out.n_ = sym.n();
  out.text_ = "avg[" + to_string(group) + "](" + sym.text() + ")";
  out.kind_ = SymbolKind::General;
  out.approx_invariant_under_ = group;
  out.sup_bound_ = sym.sup_bound();
  out.divisor_min_ = 0.0;
  CompiledSymbol base = sym;
  auto elems = elements;
  out.fn_ = [base, elems](const ComplexMatrix& Z) {
    std::complex<double> sum = 0.0;
    for (const auto& [A, B] : elems) sum += base.eval(A.adjoint() * Z * B);
    return sum / static_cast<double>(elems.size());
  };
  return out;
}

CompiledSymbol average_symbol(const CompiledSymbol& sym, Group group, RngStream& rng, int m) {
  const int n = sym.n();
  std::vector<std::pair<ComplexMatrix, ComplexMatrix>> elems;
  elems.reserve(static_cast<std::size_t>(m));
  ComplexMatrix I = ComplexMatrix::Identity(n, n);
  for (int i = 0; i < m; ++i) {
    switch (group) {
      case Group::UUn: elems.emplace_back(haar_unitary(n, rng), haar_unitary(n, rng)); break;
      case Group::UnL: elems.emplace_back(haar_unitary(n, rng), I); break;
      case Group::UnR: elems.emplace_back(I, haar_unitary(n, rng)); break;
    }
  }
  return average_symbol(sym, group, elems);
}

std::string invariance_report_to_json(const InvarianceReport& rep) {
  nlohmann::json j;
  j["symbol"] = rep.symbol;
  j["kind"] = to_string(rep.kind);
  j["group"] = to_string(rep.group);
  j["trials"] = rep.trials;
  j["max_rel_deviation"] = rep.max_rel_deviation;
  return j.dump();
}

}  // namespace bergtoep
