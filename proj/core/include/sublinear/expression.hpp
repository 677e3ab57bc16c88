#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "sublinear/grid.hpp"

namespace sublinear {

/// Nodal coefficient / indicator expressions over the coordinates x, y.
///
/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' | 'y' | '(' expr ')'
///            | ('max' | 'min') '(' expr ',' expr ')' | 'exp' '(' expr ')'
class Expression {
 public:
  /// Throws std::invalid_argument with the offending column on syntax errors.
  static Expression parse(std::string_view text);

  double operator()(Point p) const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  Expression(std::string text, std::shared_ptr<const Node> root);

  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace sublinear
