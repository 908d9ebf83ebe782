#pragma once

#include <map>
#include <memory>
#include <string>

namespace heunkit {

// Value with first and second derivative in one variable.
struct Jet2 {
  double v = 0, d = 0, dd = 0;

  static Jet2 constant(double c) { return {c, 0, 0}; }
  static Jet2 variable(double x) { return {x, 1, 0}; }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
// Power with an exponent that does not depend on the variable.
Jet2 pow(const Jet2& base, double e);

using Env = std::map<std::string, double>;

// Arithmetic expression over named variables:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | name | '(' expr ')'
class Expr {
 public:
  Expr() = default;
  static Expr parse(const std::string& text);

  double eval(const Env& env) const;
  // Derivatives with respect to `var`; all other names are constants.
  Jet2 eval_jet(const Env& env, const std::string& var) const;
  bool depends_on(const std::string& name) const;
  const std::string& text() const { return text_; }
  bool empty() const { return !root_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace heunkit
