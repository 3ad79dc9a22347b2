#ifndef SPRAYLAB_EXPR_HPP
#define SPRAYLAB_EXPR_HPP

#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spraylab/jet.hpp"

namespace spraylab {

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset(offset) {}
  std::size_t offset;
};

struct UnknownIdentifier : std::runtime_error {
  explicit UnknownIdentifier(const std::string& name)
      : std::runtime_error("unknown identifier: " + name) {}
};

struct IndexOutOfRange : std::runtime_error {
  explicit IndexOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : std::runtime_error {
  DivisionByZero() : std::runtime_error("division by zero") {}
};

using Params = std::map<std::string, double>;

// Immutable AST over coordinates x1..xn, y1..yn, literals and the call set
// sqrt/exp/ln/atan/sin/cos. Dot-product sugar is expanded at parse time, so
// the tree only ever holds the node kinds below.
class Expr {
 public:
  enum class Kind { Num, Coord, Add, Sub, Mul, Div, Neg, Pow, Call };
  enum class Fn { Sqrt, Exp, Ln, Atan, Sin, Cos };

  struct Node {
    Kind kind;
    double num = 0.0;      // Num
    int coord = -1;        // Coord: 0..n-1 x, n..2n-1 y
    int pow = 0;           // Pow exponent (integer)
    Fn fn = Fn::Sqrt;      // Call
    std::shared_ptr<const Node> a, b;
  };
  using NodePtr = std::shared_ptr<const Node>;

  Expr() = default;
  Expr(NodePtr root, int n) : root_(std::move(root)), n_(n) {}

  // Parses `src` over dimension n. Scalar parameters are bound by value;
  // a covector parameter named "a" is looked up as a1..an for dot_a_x/y.
  static Expr parse(const std::string& src, int n, const Params& params = {});

  static Expr number(double v, int n);
  static Expr coord(int c, int n);  // 0-based over 2n slots

  int dimension() const { return n_; }
  bool valid() const { return root_ != nullptr; }

  double eval(std::span<const double> point) const;
  Jet eval_jet(std::span<const Jet> vars) const;

  // (x, y) -> e(x, -y), as a syntactic substitution.
  Expr reverse_field() const;

  // Symbolic partial derivative with respect to coordinate slot c
  // (0..n-1 x, n..2n-1 y), with light constant folding.
  Expr derivative(int c) const;

  // Replaces each coordinate slot i with repl[i] (size 2n); absent or
  // invalid replacement entries keep the coordinate as-is.
  Expr substitute(const std::vector<Expr>& repl) const;

  std::string print() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);

  NodePtr root() const { return root_; }

 private:
  NodePtr root_;
  int n_ = 0;
};

}  // namespace spraylab

#endif  // SPRAYLAB_EXPR_HPP
