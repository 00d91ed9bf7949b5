#include "taam/aspect_lang.hpp"

#include <cctype>

namespace taam {

AspectExpr AspectExpr::atom(std::string name) {
  return AspectExpr(std::make_shared<const Node>(Node{ExprKind::atom, std::move(name), {}}));
}

AspectExpr AspectExpr::constant(bool value) {
  return AspectExpr(
      std::make_shared<const Node>(Node{value ? ExprKind::const1 : ExprKind::const0, {}, {}}));
}

AspectExpr AspectExpr::negation(AspectExpr operand) {
  return AspectExpr(
      std::make_shared<const Node>(Node{ExprKind::negation, {}, {std::move(operand)}}));
}

AspectExpr AspectExpr::binary(ExprKind kind, AspectExpr lhs, AspectExpr rhs) {
  return AspectExpr(std::make_shared<const Node>(Node{kind, {}, {std::move(lhs), std::move(rhs)}}));
}

bool operator==(const AspectExpr& a, const AspectExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::atom:
      return a.name() == b.name();
    case ExprKind::const0:
    case ExprKind::const1:
      return true;
    case ExprKind::negation:
      return a.operand() == b.operand();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  AspectExpr run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty formula", pos_);
    auto e = equivalence();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  AspectExpr equivalence() {
    auto lhs = implication();
    while (accept("<->")) lhs = AspectExpr::binary(ExprKind::equivalence, lhs, implication());
    return lhs;
  }

  AspectExpr implication() {
    auto lhs = disjunction();
    if (accept("->")) return AspectExpr::binary(ExprKind::implication, lhs, implication());
    return lhs;
  }

  AspectExpr disjunction() {
    auto lhs = conjunction();
    while (accept("|")) lhs = AspectExpr::binary(ExprKind::disjunction, lhs, conjunction());
    return lhs;
  }

  AspectExpr conjunction() {
    auto lhs = unary();
    while (accept("&")) lhs = AspectExpr::binary(ExprKind::conjunction, lhs, unary());
    return lhs;
  }

  AspectExpr unary() {
    if (accept("~")) return AspectExpr::negation(unary());
    return primary();
  }

  AspectExpr primary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of formula", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = equivalence();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return AspectExpr::constant(c == '1');
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const auto start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return AspectExpr::atom(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::equivalence:
      return 1;
    case ExprKind::implication:
      return 2;
    case ExprKind::disjunction:
      return 3;
    case ExprKind::conjunction:
      return 4;
    case ExprKind::negation:
      return 5;
    default:
      return 6;
  }
}

const char* symbol(ExprKind k) {
  switch (k) {
    case ExprKind::equivalence:
      return " <-> ";
    case ExprKind::implication:
      return " -> ";
    case ExprKind::disjunction:
      return " | ";
    default:
      return " & ";
  }
}

void print_into(const AspectExpr& e, int min_prec, std::string& out) {
  const int p = precedence(e.kind());
  const bool paren = p < min_prec;
  if (paren) out += '(';
  switch (e.kind()) {
    case ExprKind::atom:
      out += e.name();
      break;
    case ExprKind::const0:
      out += '0';
      break;
    case ExprKind::const1:
      out += '1';
      break;
    case ExprKind::negation:
      out += '~';
      print_into(e.operand(), p, out);
      break;
    case ExprKind::implication:
      print_into(e.lhs(), p + 1, out);
      out += symbol(e.kind());
      print_into(e.rhs(), p, out);
      break;
    default:
      print_into(e.lhs(), p, out);
      out += symbol(e.kind());
      print_into(e.rhs(), p + 1, out);
      break;
  }
  if (paren) out += ')';
}

}  // namespace

AspectExpr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const AspectExpr& expr) {
  std::string out;
  print_into(expr, 0, out);
  return out;
}

Element eval(const AspectExpr& expr, const Algebra& algebra) {
  switch (expr.kind()) {
    case ExprKind::atom:
      return algebra.prop(expr.name());
    case ExprKind::const0:
      return algebra.bottom();
    case ExprKind::const1:
      return algebra.top();
    case ExprKind::negation:
      return complement(eval(expr.operand(), algebra));
    case ExprKind::conjunction:
      return meet(eval(expr.lhs(), algebra), eval(expr.rhs(), algebra));
    case ExprKind::disjunction:
      return join(eval(expr.lhs(), algebra), eval(expr.rhs(), algebra));
    case ExprKind::implication:
      return join(complement(eval(expr.lhs(), algebra)), eval(expr.rhs(), algebra));
    case ExprKind::equivalence: {
      auto a = eval(expr.lhs(), algebra);
      auto b = eval(expr.rhs(), algebra);
      return meet(join(complement(a), b), join(complement(b), a));
    }
  }
  throw AlgebraError("bad expression");
}

Element eval(std::string_view text, const Algebra& algebra) { return eval(parse(text), algebra); }

namespace {

AspectExpr shannon(const Element& e, std::size_t from) {
  if (e.is_bottom()) return AspectExpr::constant(false);
  if (e.is_top()) return AspectExpr::constant(true);
  const auto algebra = e.algebra();
  std::size_t p = from;
  while (!depends_on(e, p)) ++p;
  auto var = AspectExpr::atom(algebra.props()[p]);
  auto f0 = cofactor(e, p, false);
  auto f1 = cofactor(e, p, true);
  if (f0.is_bottom()) {
    if (f1.is_top()) return var;
    return AspectExpr::binary(ExprKind::conjunction, var, shannon(f1, p + 1));
  }
  if (f1.is_bottom()) {
    auto nvar = AspectExpr::negation(var);
    if (f0.is_top()) return nvar;
    return AspectExpr::binary(ExprKind::conjunction, nvar, shannon(f0, p + 1));
  }
  if (f0.is_top()) return AspectExpr::binary(ExprKind::disjunction, AspectExpr::negation(var),
                                             shannon(f1, p + 1));
  if (f1.is_top()) return AspectExpr::binary(ExprKind::disjunction, var, shannon(f0, p + 1));
  if (f0 == complement(f1))
    return AspectExpr::binary(ExprKind::equivalence, var, shannon(f1, p + 1));
  return AspectExpr::binary(
      ExprKind::disjunction,
      AspectExpr::binary(ExprKind::conjunction, AspectExpr::negation(var), shannon(f0, p + 1)),
      AspectExpr::binary(ExprKind::conjunction, var, shannon(f1, p + 1)));
}

}  // namespace

AspectExpr to_expr(const Element& e) { return shannon(e, 0); }

void FormulaBook::add(const Element& e, std::string text) { texts_.try_emplace(e, std::move(text)); }

std::optional<std::string> FormulaBook::find(const Element& e) const {
  auto it = texts_.find(e);
  if (it == texts_.end()) return std::nullopt;
  return it->second;
}

std::string format_element(const Element& e, const FormulaBook* book) {
  if (book) {
    if (auto text = book->find(e)) return *text;
  }
  return print(to_expr(e));
}

}  // namespace taam
