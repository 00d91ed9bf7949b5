#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "taam/algebra.hpp"

namespace taam {

/// Syntax error in an aspect formula; offset() is a byte index into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

enum class ExprKind { atom, const0, const1, negation, conjunction, disjunction, implication, equivalence };

/// Immutable formula tree; copies share nodes.
class AspectExpr {
 public:
  static AspectExpr atom(std::string name);
  static AspectExpr constant(bool value);
  static AspectExpr negation(AspectExpr operand);
  static AspectExpr binary(ExprKind kind, AspectExpr lhs, AspectExpr rhs);

  ExprKind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const AspectExpr& lhs() const { return node_->children[0]; }
  const AspectExpr& rhs() const { return node_->children[1]; }
  /// Operand of a negation.
  const AspectExpr& operand() const { return node_->children[0]; }

  friend bool operator==(const AspectExpr& a, const AspectExpr& b);

 private:
  struct Node {
    ExprKind kind;
    std::string name;
    std::vector<AspectExpr> children;
  };
  explicit AspectExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Precedence from loosest: <-> (left), -> (right), | , &, ~.
AspectExpr parse(std::string_view text);
/// Canonical spacing with the fewest parentheses that keep the tree.
std::string print(const AspectExpr& expr);
/// Throws AlgebraError for atoms the algebra does not name.
Element eval(const AspectExpr& expr, const Algebra& algebra);
Element eval(std::string_view text, const Algebra& algebra);

/// A canonical formula for `e`, built by Shannon expansion in prop order.
AspectExpr to_expr(const Element& e);

/// Authored formula text per element, so reports can echo what the user wrote.
class FormulaBook {
 public:
  /// Keeps the first text registered for an element.
  void add(const Element& e, std::string text);
  std::optional<std::string> find(const Element& e) const;

 private:
  std::map<Element, std::string> texts_;
};

/// Authored text if the book has one, else print(to_expr(e)).
std::string format_element(const Element& e, const FormulaBook* book = nullptr);

}  // namespace taam
