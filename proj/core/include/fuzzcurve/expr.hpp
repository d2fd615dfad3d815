#pragma once

// Analytic side functions d(alpha), u(alpha) written as text, e.g.
//
//   pi + (cos(1+1/3))^2 - (cos(alpha+1/3))^2
//
// Grammar (lowest to highest precedence):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 'pi' | 'alpha' | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | arccos | sqrt | abs | exp | ln
//
// Numbers are decimal literals with an optional exponent (1.5, .25, 2e-3).

#include <memory>
#include <string>
#include <string_view>

#include "fuzzcurve/dual.hpp"

namespace fuzzcurve {

enum class Op {
  Constant,
  Variable,
  Neg,
  Sin,
  Cos,
  Arccos,
  Sqrt,
  Abs,
  Exp,
  Ln,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

int arity(Op op) noexcept;
std::string_view op_name(Op op) noexcept;

struct ExprNode {
  Op op = Op::Constant;
  double value = 0.0;      // Constant only
  bool named_pi = false;   // Constant spelled `pi`
  std::shared_ptr<const ExprNode> lhs;  // unary operand or left operand
  std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree in the single variable `alpha`.
///
/// Copies share nodes; evaluation never mutates, so one Expression may be
/// evaluated from many threads at once.
class Expression {
 public:
  Expression() = default;
  explicit Expression(NodePtr root);

  const NodePtr& root() const noexcept { return root_; }

  /// f(alpha) and f'(alpha). Throws DomainError naming the failing subexpression.
  DualValue eval_dual(double alpha) const;
  double eval(double alpha) const { return eval_dual(alpha).value; }

  /// Fully parenthesized text that parses back to an identical tree.
  std::string to_string() const;

  std::size_t node_count() const;

  // Node builders, used by the parser and by test generators.
  static NodePtr constant(double v);
  static NodePtr pi();
  static NodePtr variable();
  static NodePtr unary(Op op, NodePtr operand);
  static NodePtr binary(Op op, NodePtr lhs, NodePtr rhs);

 private:
  NodePtr root_;
};

/// Parse `source`. Throws ParseError (syntax, with byte offset and expected
/// tokens) or UnknownIdentifierError.
Expression parse_expression(std::string_view source);

/// Shorthand for parse_expression(source).eval_dual(alpha) on a parsed tree.
inline DualValue eval_dual(const Expression& e, double alpha) { return e.eval_dual(alpha); }

std::string to_string(const ExprNode& node);
bool structurally_equal(const ExprNode& a, const ExprNode& b) noexcept;
inline bool structurally_equal(const Expression& a, const Expression& b) noexcept {
  return a.root() && b.root() && structurally_equal(*a.root(), *b.root());
}

}  // namespace fuzzcurve
