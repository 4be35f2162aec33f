#include "gfc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>

namespace gfc::expr {

double Node::eval(double x) const {
  switch (op) {
    case Op::num: return value;
    case Op::var: return x;
    case Op::add: return lhs->eval(x) + rhs->eval(x);
    case Op::sub: return lhs->eval(x) - rhs->eval(x);
    case Op::mul: return lhs->eval(x) * rhs->eval(x);
    case Op::div: return lhs->eval(x) / rhs->eval(x);
    case Op::pow: return std::pow(lhs->eval(x), rhs->eval(x));
    case Op::neg: return -lhs->eval(x);
    case Op::call: {
      double a = lhs->eval(x);
      if (name == "exp") return std::exp(a);
      if (name == "ln") return std::log(a);
      if (name == "sin") return std::sin(a);
      if (name == "cos") return std::cos(a);
      return std::fabs(a);  // abs
    }
  }
  return 0.0;
}

namespace {

class Parser {
 public:
  // owns a copy: number parsing hands the buffer to strtod, which
  // needs the terminator
  explicit Parser(std::string_view s) : owned_(s), text_(owned_) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError("unexpected input", pos_);
    return e;
  }

 private:
  std::string owned_;
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
    auto n = std::make_shared<Node>();
    n->op = op; n->lhs = std::move(l); n->rhs = std::move(r);
    return n;
  }

  NodePtr expression() {
    NodePtr e = term();
    for (;;) {
      if (eat('+')) e = make(Op::add, e, term());
      else if (eat('-')) e = make(Op::sub, e, term());
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      if (eat('*')) e = make(Op::mul, e, unary());
      else if (eat('/')) e = make(Op::div, e, unary());
      else return e;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, unary());
    if (eat('+')) return unary();
    return power();
  }

  // '^' binds tighter than unary minus and associates to the right.
  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Op::pow, base, unary());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = text_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("malformed number", pos_);
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<Node>();
    n->op = Op::num; n->value = v;
    return n;
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string id(text_.substr(start, pos_ - start));
    if (id == "x") return make(Op::var);
    if (id == "exp" || id == "ln" || id == "sin" || id == "cos" || id == "abs") {
      if (!eat('(')) throw ParseError("expected '(' after function name", pos_);
      NodePtr arg = expression();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      auto n = std::make_shared<Node>();
      n->op = Op::call; n->name = id; n->lhs = arg;
      return n;
    }
    throw ParseError("unknown identifier '" + id + "'", start);
  }
};

}  // namespace

NodePtr parse(std::string_view text) { return Parser(text).run(); }

std::string to_string(const NodePtr& n) {
  switch (n->op) {
    case Op::num: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", n->value);
      return buf;
    }
    case Op::var: return "x";
    case Op::add: return "(" + to_string(n->lhs) + " + " + to_string(n->rhs) + ")";
    case Op::sub: return "(" + to_string(n->lhs) + " - " + to_string(n->rhs) + ")";
    case Op::mul: return "(" + to_string(n->lhs) + " * " + to_string(n->rhs) + ")";
    case Op::div: return "(" + to_string(n->lhs) + " / " + to_string(n->rhs) + ")";
    case Op::pow: return "(" + to_string(n->lhs) + " ^ " + to_string(n->rhs) + ")";
    case Op::neg: return "(-" + to_string(n->lhs) + ")";
    case Op::call: return n->name + "(" + to_string(n->lhs) + ")";
  }
  return "";
}

}  // namespace gfc::expr
