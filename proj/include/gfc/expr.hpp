#ifndef GFC_EXPR_HPP
#define GFC_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gfc::expr {

// Arithmetic expressions in one variable x.
// Grammar: numbers, x, + - * / ^ (right-assoc), parentheses,
// functions exp, ln, sin, cos, abs.

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(const std::string& what, std::size_t off)
      : std::runtime_error(what), offset(off) {}
};

class Node;
using NodePtr = std::shared_ptr<const Node>;

enum class Op { add, sub, mul, div, pow, neg, call, num, var };

class Node {
 public:
  Op op;
  double value = 0.0;       // num
  std::string name;         // call
  NodePtr lhs, rhs;         // operands (neg/call use lhs only)

  double eval(double x) const;
};

// Deterministic recursive-descent parse; throws ParseError with the
// byte offset of the offending token.
NodePtr parse(std::string_view text);

// Fully parenthesized round-trippable form.
std::string to_string(const NodePtr& node);

}  // namespace gfc::expr

#endif
