#include "heunkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "heunkit/errors.hpp"
#include "heunkit/params.hpp"

namespace heunkit {

Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
Jet2 operator-(const Jet2& a) { return {-a.v, -a.d, -a.dd}; }
Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2 * a.d * b.d + a.v * b.dd};
}
Jet2 operator/(const Jet2& a, const Jet2& b) {
  const double f = a.v / b.v;
  const double f1 = (a.d - f * b.d) / b.v;
  const double f2 = (a.dd - 2 * f1 * b.d - f * b.dd) / b.v;
  return {f, f1, f2};
}

namespace {

double real_pow(double b, double e) {
  if (b < 0.0 && !is_integer(e))
    throw Error(ErrorCode::NegativeBase, "transforms192", "negative base with non-integer exponent");
  if (is_integer(e)) return std::pow(b, std::round(e));
  return std::pow(b, e);
}

}  // namespace

Jet2 pow(const Jet2& base, double e) {
  if (e == 0.0) return Jet2::constant(1.0);
  const double p0 = real_pow(base.v, e);
  const double p1 = e * real_pow(base.v, e - 1.0);
  const double p2 = e * (e - 1.0) * real_pow(base.v, e - 2.0);
  return {p0, p1 * base.d, p2 * base.d * base.d + p1 * base.dd};
}

struct Expr::Node {
  char op = 0;  // 'n' number, 'v' variable, '+', '-', '*', '/', '^', 'u' unary minus
  double value = 0;
  std::string name;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodeP parse() {
    NodeP n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::RegistryParse, "transforms192",
                "expression '" + s_ + "' at " + std::to_string(pos_) + ": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodeP make(char op, NodeP l, NodeP r) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
  }

  NodeP expr() {
    NodeP n = term();
    for (;;) {
      if (accept('+'))
        n = make('+', n, term());
      else if (accept('-'))
        n = make('-', n, term());
      else
        return n;
    }
  }

  NodeP term() {
    NodeP n = unary();
    for (;;) {
      if (accept('*'))
        n = make('*', n, unary());
      else if (accept('/'))
        n = make('/', n, unary());
      else
        return n;
    }
  }

  NodeP unary() {
    if (accept('-')) return make('u', unary(), nullptr);
    if (accept('+')) return unary();
    return power();
  }

  NodeP power() {
    NodeP base = atom();
    if (accept('^')) return make('^', base, unary());
    return base;
  }

  NodeP atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (accept('(')) {
      NodeP n = expr();
      if (!accept(')')) fail("missing ')'");
      return n;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      auto n = std::make_shared<Expr::Node>();
      n->op = 'n';
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      auto n = std::make_shared<Expr::Node>();
      n->op = 'v';
      n->name = s_.substr(start, pos_ - start);
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

double lookup(const Env& env, const std::string& name) {
  auto it = env.find(name);
  if (it == env.end()) throw Error(ErrorCode::RegistryParse, "transforms192", "unknown name '" + name + "'");
  return it->second;
}

double eval_node(const Expr::Node& n, const Env& env) {
  switch (n.op) {
    case 'n': return n.value;
    case 'v': return lookup(env, n.name);
    case 'u': return -eval_node(*n.lhs, env);
    case '+': return eval_node(*n.lhs, env) + eval_node(*n.rhs, env);
    case '-': return eval_node(*n.lhs, env) - eval_node(*n.rhs, env);
    case '*': return eval_node(*n.lhs, env) * eval_node(*n.rhs, env);
    case '/': return eval_node(*n.lhs, env) / eval_node(*n.rhs, env);
    case '^': return real_pow(eval_node(*n.lhs, env), eval_node(*n.rhs, env));
  }
  return 0.0;
}

bool node_depends(const Expr::Node& n, const std::string& name) {
  if (n.op == 'v') return n.name == name;
  if (n.op == 'n') return false;
  return (n.lhs && node_depends(*n.lhs, name)) || (n.rhs && node_depends(*n.rhs, name));
}

Jet2 jet_node(const Expr::Node& n, const Env& env, const std::string& var) {
  switch (n.op) {
    case 'n': return Jet2::constant(n.value);
    case 'v': return n.name == var ? Jet2::variable(lookup(env, n.name)) : Jet2::constant(lookup(env, n.name));
    case 'u': return -jet_node(*n.lhs, env, var);
    case '+': return jet_node(*n.lhs, env, var) + jet_node(*n.rhs, env, var);
    case '-': return jet_node(*n.lhs, env, var) - jet_node(*n.rhs, env, var);
    case '*': return jet_node(*n.lhs, env, var) * jet_node(*n.rhs, env, var);
    case '/': return jet_node(*n.lhs, env, var) / jet_node(*n.rhs, env, var);
    case '^':
      if (node_depends(*n.rhs, var))
        throw Error(ErrorCode::RegistryParse, "transforms192", "exponent may not depend on " + var);
      return pow(jet_node(*n.lhs, env, var), eval_node(*n.rhs, env));
  }
  return {};
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text).parse();
  return e;
}

double Expr::eval(const Env& env) const {
  if (!root_) throw Error(ErrorCode::RegistryParse, "transforms192", "empty expression");
  return eval_node(*root_, env);
}

Jet2 Expr::eval_jet(const Env& env, const std::string& var) const {
  if (!root_) throw Error(ErrorCode::RegistryParse, "transforms192", "empty expression");
  return jet_node(*root_, env, var);
}

bool Expr::depends_on(const std::string& name) const { return root_ && node_depends(*root_, name); }

}  // namespace heunkit
