#include "fuzzcurve/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "fuzzcurve/errors.hpp"

namespace fuzzcurve {

int arity(Op op) noexcept {
  switch (op) {
    case Op::Constant:
    case Op::Variable:
      return 0;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow:
      return 2;
    default:
      return 1;
  }
}

std::string_view op_name(Op op) noexcept {
  switch (op) {
    case Op::Constant: return "constant";
    case Op::Variable: return "alpha";
    case Op::Neg: return "-";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Arccos: return "arccos";
    case Op::Sqrt: return "sqrt";
    case Op::Abs: return "abs";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Pow: return "^";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Builders

Expression::Expression(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw InvalidInput("expression has no root node");
}

NodePtr Expression::constant(double v) {
  if (!std::isfinite(v) || v < 0.0) {
    // Literals are unsigned; negation is an explicit Neg node.
    throw InvalidInput("expression constants must be finite and non-negative");
  }
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Constant;
  n->value = v;
  return n;
}

NodePtr Expression::pi() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Constant;
  n->value = std::numbers::pi;
  n->named_pi = true;
  return n;
}

NodePtr Expression::variable() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Variable;
  return n;
}

NodePtr Expression::unary(Op op, NodePtr operand) {
  if (arity(op) != 1 || !operand) throw InvalidInput("bad unary node");
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(operand);
  return n;
}

NodePtr Expression::binary(Op op, NodePtr lhs, NodePtr rhs) {
  if (arity(op) != 2 || !lhs || !rhs) throw InvalidInput("bad binary node");
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print(const ExprNode& n, std::string& out) {
  switch (n.op) {
    case Op::Constant: {
      if (n.named_pi) {
        out += "pi";
        return;
      }
      std::array<char, 64> buf{};
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), n.value);
      out.append(buf.data(), end);
      return;
    }
    case Op::Variable:
      out += "alpha";
      return;
    case Op::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div:
    case Op::Pow:
      out += '(';
      print(*n.lhs, out);
      out += ' ';
      out += op_name(n.op);
      out += ' ';
      print(*n.rhs, out);
      out += ')';
      return;
    default:
      out += op_name(n.op);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

std::size_t count_nodes(const ExprNode& n) {
  std::size_t c = 1;
  if (n.lhs) c += count_nodes(*n.lhs);
  if (n.rhs) c += count_nodes(*n.rhs);
  return c;
}

}  // namespace

std::string to_string(const ExprNode& node) {
  std::string out;
  print(node, out);
  return out;
}

std::string Expression::to_string() const { return root_ ? fuzzcurve::to_string(*root_) : std::string{}; }

std::size_t Expression::node_count() const { return root_ ? count_nodes(*root_) : 0; }

bool structurally_equal(const ExprNode& a, const ExprNode& b) noexcept {
  if (a.op != b.op) return false;
  if (a.op == Op::Constant) return a.named_pi == b.named_pi && a.value == b.value;
  if (static_cast<bool>(a.lhs) != static_cast<bool>(b.lhs)) return false;
  if (static_cast<bool>(a.rhs) != static_cast<bool>(b.rhs)) return false;
  if (a.lhs && !structurally_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !structurally_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain(const ExprNode& n, const char* reason) { throw DomainError(reason, to_string(n)); }

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

DualValue eval_node(const ExprNode& n, double alpha) {
  DualValue r;
  switch (n.op) {
    case Op::Constant:
      return DualValue::constant(n.value);
    case Op::Variable:
      return DualValue::variable(alpha);
    case Op::Neg:
      return -eval_node(*n.lhs, alpha);
    case Op::Add:
      return eval_node(*n.lhs, alpha) + eval_node(*n.rhs, alpha);
    case Op::Sub:
      return eval_node(*n.lhs, alpha) - eval_node(*n.rhs, alpha);
    case Op::Mul:
      return eval_node(*n.lhs, alpha) * eval_node(*n.rhs, alpha);
    case Op::Div: {
      auto a = eval_node(*n.lhs, alpha);
      auto b = eval_node(*n.rhs, alpha);
      if (b.value == 0.0) domain(n, "division by zero");
      r = a / b;
      break;
    }
    case Op::Sin:
      r = sin(eval_node(*n.lhs, alpha));
      break;
    case Op::Cos:
      r = cos(eval_node(*n.lhs, alpha));
      break;
    case Op::Exp:
      r = exp(eval_node(*n.lhs, alpha));
      break;
    case Op::Abs:
      r = abs(eval_node(*n.lhs, alpha));
      break;
    case Op::Ln: {
      auto a = eval_node(*n.lhs, alpha);
      if (!(a.value > 0.0)) domain(n, "logarithm of a non-positive value");
      r = log(a);
      break;
    }
    case Op::Sqrt: {
      auto a = eval_node(*n.lhs, alpha);
      if (a.value < 0.0) domain(n, "square root of a negative value");
      if (a.value == 0.0) {
        if (a.deriv != 0.0) domain(n, "square root derivative unbounded at 0");
        return {0.0, 0.0};
      }
      r = sqrt(a);
      break;
    }
    case Op::Arccos: {
      auto a = eval_node(*n.lhs, alpha);
      if (a.value < -1.0 || a.value > 1.0) domain(n, "arccos argument outside [-1, 1]");
      if (std::abs(a.value) == 1.0) {
        if (a.deriv != 0.0) domain(n, "arccos derivative unbounded at +-1");
        return {std::acos(a.value), 0.0};
      }
      r = acos(a);
      break;
    }
    case Op::Pow: {
      auto a = eval_node(*n.lhs, alpha);
      auto b = eval_node(*n.rhs, alpha);
      if (b.deriv == 0.0) {
        const double e = b.value;
        if (is_integer(e)) {
          if (a.value == 0.0 && e < 0.0) domain(n, "zero raised to a negative power");
        } else {
          if (a.value < 0.0) domain(n, "negative base with non-integer exponent");
          if (a.value == 0.0) {
            if (e < 0.0) domain(n, "zero raised to a negative power");
            if (e < 1.0 && a.deriv != 0.0) domain(n, "power derivative unbounded at 0");
            return {0.0, 0.0};
          }
        }
        r = pow(a, e);
      } else {
        if (!(a.value > 0.0)) domain(n, "variable exponent requires a positive base");
        r = pow(a, b);
      }
      break;
    }
  }
  if (!std::isfinite(r.value) || !std::isfinite(r.deriv)) domain(n, "non-finite result");
  return r;
}

}  // namespace

DualValue Expression::eval_dual(double alpha) const {
  if (!root_) throw InvalidInput("evaluating an empty expression");
  return eval_node(*root_, alpha);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string_view text;
  double number = 0.0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const noexcept { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r'))
      ++pos_;
    tok_ = Token{};
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      tok_.kind = k;
      tok_.text = src_.substr(pos_, 1);
      ++pos_;
    };
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '/': return single(Tok::Slash);
      case '^': return single(Tok::Caret);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      default: break;
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      lex_number();
      return;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && is_ident_char(src_[end])) ++end;
      tok_.kind = Tok::Ident;
      tok_.text = src_.substr(pos_, end - pos_);
      pos_ = end;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_,
                     {"number", "identifier", "'('", "operator"});
  }

  void lex_number() {
    std::size_t end = pos_;
    while (end < src_.size() && is_digit(src_[end])) ++end;
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      while (end < src_.size() && is_digit(src_[end])) ++end;
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t exp = end + 1;
      if (exp < src_.size() && (src_[exp] == '+' || src_[exp] == '-')) ++exp;
      if (exp < src_.size() && is_digit(src_[exp])) {
        while (exp < src_.size() && is_digit(src_[exp])) ++exp;
        end = exp;
      } else {
        throw ParseError("malformed exponent in number", exp, {"digit"});
      }
    }
    tok_.kind = Tok::Number;
    tok_.text = src_.substr(pos_, end - pos_);
    // from_chars rejects a leading '.', so parse "0" + text in that case.
    std::string buf = tok_.text.front() == '.' ? "0" + std::string(tok_.text) : std::string(tok_.text);
    auto [p, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), tok_.number);
    if (ec != std::errc{} || p != buf.data() + buf.size() || !std::isfinite(tok_.number))
      throw ParseError("number literal out of range", pos_);
    pos_ = end;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_;
};

struct FunctionName {
  std::string_view name;
  Op op;
};

constexpr std::array<FunctionName, 7> kFunctions{{
    {"sin", Op::Sin},
    {"cos", Op::Cos},
    {"arccos", Op::Arccos},
    {"sqrt", Op::Sqrt},
    {"abs", Op::Abs},
    {"exp", Op::Exp},
    {"ln", Op::Ln},
}};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  NodePtr parse() {
    if (lex_.peek().kind == Tok::End) throw ParseError("empty expression", 0, {"expression"});
    NodePtr e = expr();
    if (lex_.peek().kind != Tok::End) {
      throw ParseError("unexpected token '" + std::string(lex_.peek().text) + "'", lex_.peek().offset,
                       {"operator", "end of input"});
    }
    return e;
  }

 private:
  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      lex_.take();
      lhs = Expression::binary(k == Tok::Plus ? Op::Add : Op::Sub, lhs, term());
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      lex_.take();
      lhs = Expression::binary(k == Tok::Star ? Op::Mul : Op::Div, lhs, unary());
    }
  }

  NodePtr unary() {
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      return Expression::unary(Op::Neg, unary());
    }
    if (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      return unary();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      return Expression::binary(Op::Pow, base, unary());
    }
    return base;
  }

  NodePtr primary() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::Number:
        return Expression::constant(t.number);
      case Tok::LParen: {
        NodePtr inner = expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        return identifier(t);
      default:
        throw ParseError(t.kind == Tok::End ? "unexpected end of input"
                                            : "unexpected token '" + std::string(t.text) + "'",
                         t.offset, {"number", "'pi'", "'alpha'", "function", "'('"});
    }
  }

  NodePtr identifier(const Token& t) {
    if (t.text == "pi") return Expression::pi();
    if (t.text == "alpha") return Expression::variable();
    for (const auto& f : kFunctions) {
      if (f.name == t.text) {
        expect(Tok::LParen, "'('");
        NodePtr arg = expr();
        expect(Tok::RParen, "')'");
        return Expression::unary(f.op, arg);
      }
    }
    throw UnknownIdentifierError(std::string(t.text), t.offset);
  }

  void expect(Tok kind, const char* label) {
    const Token& t = lex_.peek();
    if (t.kind != kind) {
      throw ParseError(t.kind == Tok::End ? "unexpected end of input" : "unexpected token '" + std::string(t.text) + "'",
                       t.offset, {label});
    }
    lex_.take();
  }

  Lexer lex_;
};

}  // namespace

Expression parse_expression(std::string_view source) { return Expression(Parser(source).parse()); }

}  // namespace fuzzcurve
