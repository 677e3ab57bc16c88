#include "sublinear/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublinear {

struct Expression::Node {
  enum class Op { number, x, y, add, sub, mul, div, pow, neg, max, min, exp };
  Op op = Op::number;
  double value = 0.0;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(Point p) const {
    switch (op) {
      case Op::number: return value;
      case Op::x: return p.x;
      case Op::y: return p.y;
      case Op::add: return args[0]->eval(p) + args[1]->eval(p);
      case Op::sub: return args[0]->eval(p) - args[1]->eval(p);
      case Op::mul: return args[0]->eval(p) * args[1]->eval(p);
      case Op::div: return args[0]->eval(p) / args[1]->eval(p);
      case Op::pow: return std::pow(args[0]->eval(p), args[1]->eval(p));
      case Op::neg: return -args[0]->eval(p);
      case Op::max: return std::max(args[0]->eval(p), args[1]->eval(p));
      case Op::min: return std::min(args[0]->eval(p), args[1]->eval(p));
      case Op::exp: return std::exp(args[0]->eval(p));
    }
    return 0.0;
  }
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Op op, std::vector<NodePtr> args = {}, double value = 0.0) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + std::string(text_) + "', column " +
                                std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Node::Op::add, {lhs, term()});
      else if (accept('-')) lhs = make(Node::Op::sub, {lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Node::Op::mul, {lhs, unary()});
      else if (accept('/')) lhs = make(Node::Op::div, {lhs, unary()});
      else return lhs;
    }
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Node::Op::pow, {base, unary()});
    return base;
  }

  NodePtr unary() {
    if (accept('-')) return make(Node::Op::neg, {unary()});
    return power();
  }

  NodePtr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "x") return make(Node::Op::x);
      if (name == "y") return make(Node::Op::y);
      if (name == "exp") {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make(Node::Op::exp, {arg});
      }
      if (name == "max" || name == "min") {
        expect('(');
        NodePtr a = expr();
        expect(',');
        NodePtr b = expr();
        expect(')');
        return make(name == "max" ? Node::Op::max : Node::Op::min, {a, b});
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return make(Node::Op::number, {}, v);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::string text, std::shared_ptr<const Node> root)
    : text_(std::move(text)), root_(std::move(root)) {}

Expression Expression::parse(std::string_view text) {
  Parser parser(text);
  NodePtr root = parser.parse();
  return Expression(std::string(text), std::move(root));
}

double Expression::operator()(Point p) const { return root_->eval(p); }

}  // namespace sublinear
