#include "spraylab/expr.hpp"

#include <cctype>
#include <sstream>

namespace spraylab {

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;
using Kind = Expr::Kind;
using Fn = Expr::Fn;

NodePtr make_num(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Num;
  n->num = v;
  return n;
}

NodePtr make_coord(int c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Coord;
  n->coord = c;
  return n;
}

NodePtr make_bin(Kind k, NodePtr a, NodePtr b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_neg(NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->a = std::move(a);
  return n;
}

NodePtr make_pow(NodePtr a, int k) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->a = std::move(a);
  n->pow = k;
  return n;
}

NodePtr make_call(Fn fn, NodePtr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->a = std::move(a);
  return n;
}

// Recursive-descent parser. Precedence: ^ > unary- > * / > + -, all binary
// operators left-associative.
class Parser {
 public:
  Parser(const std::string& src, int n, const Params& params)
      : src_(src), n_(n), params_(params) {}

  NodePtr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError("empty expression", 0);
    NodePtr e = sum();
    skip_ws();
    if (pos_ < src_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return e;
  }

 private:
  NodePtr sum() {
    NodePtr e = term();
    for (;;) {
      skip_ws();
      if (accept('+')) e = make_bin(Kind::Add, e, term());
      else if (accept('-')) e = make_bin(Kind::Sub, e, term());
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) e = make_bin(Kind::Mul, e, unary());
      else if (accept('/')) e = make_bin(Kind::Div, e, unary());
      else return e;
    }
  }

  NodePtr unary() {
    skip_ws();
    if (accept('-')) return make_neg(unary());
    return power();
  }

  NodePtr power() {
    NodePtr e = atom();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      bool neg = accept('-');
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(src_[pos_])) ++pos_;
      if (pos_ == start) throw SyntaxError("expected integer exponent", pos_);
      int k = std::stoi(src_.substr(start, pos_ - start));
      return make_pow(e, neg ? -k : k);
    }
    return e;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(c) || c == '.') return number();
    if (std::isalpha(c) || c == '_') return identifier();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    std::size_t end = pos_;
    while (end < src_.size() &&
           (std::isdigit(src_[end]) || src_[end] == '.' || src_[end] == 'e' ||
            src_[end] == 'E' ||
            ((src_[end] == '+' || src_[end] == '-') && end > pos_ &&
             (src_[end - 1] == 'e' || src_[end - 1] == 'E'))))
      ++end;
    double v;
    try {
      v = std::stod(src_.substr(pos_, end - pos_));
    } catch (const std::exception&) {
      throw SyntaxError("malformed number", pos_);
    }
    pos_ = end;
    return make_num(v);
  }

  NodePtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(src_[pos_]) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);

    if (name == "sqrt") return make_call(Fn::Sqrt, call_arg(name));
    if (name == "exp") return make_call(Fn::Exp, call_arg(name));
    if (name == "ln" || name == "log") return make_call(Fn::Ln, call_arg(name));
    if (name == "atan") return make_call(Fn::Atan, call_arg(name));
    if (name == "sin") return make_call(Fn::Sin, call_arg(name));
    if (name == "cos") return make_call(Fn::Cos, call_arg(name));

    if (name == "dot_xx") return dot(0, 0);
    if (name == "dot_xy") return dot(0, n_);
    if (name == "dot_yy") return dot(n_, n_);
    if (name == "dot_a_x") return dot_param(0);
    if (name == "dot_a_y") return dot_param(n_);

    if ((name[0] == 'x' || name[0] == 'y') && name.size() > 1 &&
        std::isdigit(static_cast<unsigned char>(name[1]))) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits) {
        int idx = std::stoi(name.substr(1));
        if (idx < 1 || idx > n_)
          throw IndexOutOfRange("coordinate " + name + " exceeds dimension " +
                                std::to_string(n_));
        return make_coord((name[0] == 'x' ? 0 : n_) + idx - 1);
      }
    }

    auto it = params_.find(name);
    if (it != params_.end()) return make_num(it->second);
    throw UnknownIdentifier(name);
  }

  NodePtr call_arg(const std::string& name) {
    skip_ws();
    if (!accept('('))
      throw SyntaxError("expected '(' after " + name, pos_);
    NodePtr e = sum();
    expect(')');
    return e;
  }

  NodePtr dot(int off1, int off2) {
    NodePtr e;
    for (int i = 0; i < n_; ++i) {
      NodePtr p = make_bin(Kind::Mul, make_coord(off1 + i), make_coord(off2 + i));
      e = e ? make_bin(Kind::Add, e, p) : p;
    }
    return e;
  }

  NodePtr dot_param(int off) {
    NodePtr e;
    for (int i = 0; i < n_; ++i) {
      auto it = params_.find("a" + std::to_string(i + 1));
      if (it == params_.end())
        throw UnknownIdentifier("a" + std::to_string(i + 1) +
                                " (covector parameter)");
      NodePtr p = make_bin(Kind::Mul, make_num(it->second), make_coord(off + i));
      e = e ? make_bin(Kind::Add, e, p) : p;
    }
    return e;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (!accept(c))
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
  }

  const std::string& src_;
  int n_;
  const Params& params_;
  std::size_t pos_ = 0;
};

template <class T>
struct Ops;

template <>
struct Ops<double> {
  static double div(double a, double b) {
    if (b == 0.0) throw DivisionByZero();
    return a / b;
  }
  static double call(Fn fn, double a) {
    switch (fn) {
      case Fn::Sqrt: return std::sqrt(a);
      case Fn::Exp: return std::exp(a);
      case Fn::Ln: return std::log(a);
      case Fn::Atan: return std::atan(a);
      case Fn::Sin: return std::sin(a);
      case Fn::Cos: return std::cos(a);
    }
    return 0;
  }
  static double pow(double a, int k) { return std::pow(a, k); }
  static double lit(double v, const double&) { return v; }
};

template <>
struct Ops<Jet> {
  static Jet div(const Jet& a, const Jet& b) { return a / b; }
  static Jet call(Fn fn, const Jet& a) {
    switch (fn) {
      case Fn::Sqrt: return sqrt(a);
      case Fn::Exp: return exp(a);
      case Fn::Ln: return log(a);
      case Fn::Atan: return atan(a);
      case Fn::Sin: return sin(a);
      case Fn::Cos: return cos(a);
    }
    return a;
  }
  static Jet pow(const Jet& a, int k) { return pow_int(a, k); }
  static Jet lit(double v, const Jet& proto) { return proto.constant_like(v); }
};

template <class T>
T eval_node(const Node* node, std::span<const T> vars) {
  switch (node->kind) {
    case Kind::Num: return Ops<T>::lit(node->num, vars[0]);
    case Kind::Coord: return vars[node->coord];
    case Kind::Add: return eval_node(node->a.get(), vars) + eval_node(node->b.get(), vars);
    case Kind::Sub: return eval_node(node->a.get(), vars) - eval_node(node->b.get(), vars);
    case Kind::Mul: return eval_node(node->a.get(), vars) * eval_node(node->b.get(), vars);
    case Kind::Div:
      return Ops<T>::div(eval_node(node->a.get(), vars), eval_node(node->b.get(), vars));
    case Kind::Neg: return -eval_node(node->a.get(), vars);
    case Kind::Pow: return Ops<T>::pow(eval_node(node->a.get(), vars), node->pow);
    case Kind::Call: return Ops<T>::call(node->fn, eval_node(node->a.get(), vars));
  }
  throw std::logic_error("bad node");
}

NodePtr reverse_node(const NodePtr& node, int n) {
  if (!node) return nullptr;
  if (node->kind == Kind::Coord)
    return node->coord >= n ? make_neg(node) : node;
  if (node->kind == Kind::Num) return node;
  auto out = std::make_shared<Node>(*node);
  out->a = reverse_node(node->a, n);
  out->b = reverse_node(node->b, n);
  return out;
}

void print_node(const Node* node, int n, std::ostream& os) {
  auto paren = [&](const Node* c) {
    os << '(';
    print_node(c, n, os);
    os << ')';
  };
  switch (node->kind) {
    case Kind::Num: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << node->num;
      std::string s = tmp.str();
      if (node->num < 0) os << '(' << s << ')';
      else os << s;
      break;
    }
    case Kind::Coord:
      os << (node->coord < n ? 'x' : 'y') << (node->coord % n) + 1;
      break;
    case Kind::Add:
      paren(node->a.get());
      os << '+';
      paren(node->b.get());
      break;
    case Kind::Sub:
      paren(node->a.get());
      os << '-';
      paren(node->b.get());
      break;
    case Kind::Mul:
      paren(node->a.get());
      os << '*';
      paren(node->b.get());
      break;
    case Kind::Div:
      paren(node->a.get());
      os << '/';
      paren(node->b.get());
      break;
    case Kind::Neg:
      os << '-';
      paren(node->a.get());
      break;
    case Kind::Pow:
      paren(node->a.get());
      os << '^';
      if (node->pow < 0) os << '-' << -node->pow;
      else os << node->pow;
      break;
    case Kind::Call:
      switch (node->fn) {
        case Fn::Sqrt: os << "sqrt"; break;
        case Fn::Exp: os << "exp"; break;
        case Fn::Ln: os << "ln"; break;
        case Fn::Atan: os << "atan"; break;
        case Fn::Sin: os << "sin"; break;
        case Fn::Cos: os << "cos"; break;
      }
      paren(node->a.get());
      break;
  }
}

bool is_num(const NodePtr& e, double v) {
  return e->kind == Kind::Num && e->num == v;
}

// Folding constructors used by the symbolic derivative so the trees it
// builds stay manageable.
NodePtr f_add(NodePtr a, NodePtr b) {
  if (is_num(a, 0)) return b;
  if (is_num(b, 0)) return a;
  if (a->kind == Kind::Num && b->kind == Kind::Num)
    return make_num(a->num + b->num);
  return make_bin(Kind::Add, std::move(a), std::move(b));
}

NodePtr f_sub(NodePtr a, NodePtr b) {
  if (is_num(b, 0)) return a;
  if (is_num(a, 0)) return make_neg(std::move(b));
  if (a->kind == Kind::Num && b->kind == Kind::Num)
    return make_num(a->num - b->num);
  return make_bin(Kind::Sub, std::move(a), std::move(b));
}

NodePtr f_mul(NodePtr a, NodePtr b) {
  if (is_num(a, 0) || is_num(b, 0)) return make_num(0);
  if (is_num(a, 1)) return b;
  if (is_num(b, 1)) return a;
  if (a->kind == Kind::Num && b->kind == Kind::Num)
    return make_num(a->num * b->num);
  return make_bin(Kind::Mul, std::move(a), std::move(b));
}

NodePtr f_div(NodePtr a, NodePtr b) {
  if (is_num(a, 0)) return make_num(0);
  if (is_num(b, 1)) return a;
  return make_bin(Kind::Div, std::move(a), std::move(b));
}

NodePtr deriv_node(const NodePtr& e, int c) {
  switch (e->kind) {
    case Kind::Num: return make_num(0);
    case Kind::Coord: return make_num(e->coord == c ? 1 : 0);
    case Kind::Add: return f_add(deriv_node(e->a, c), deriv_node(e->b, c));
    case Kind::Sub: return f_sub(deriv_node(e->a, c), deriv_node(e->b, c));
    case Kind::Mul:
      return f_add(f_mul(deriv_node(e->a, c), e->b),
                   f_mul(e->a, deriv_node(e->b, c)));
    case Kind::Div:
      return f_div(f_sub(f_mul(deriv_node(e->a, c), e->b),
                         f_mul(e->a, deriv_node(e->b, c))),
                   make_pow(e->b, 2));
    case Kind::Neg: return make_neg(deriv_node(e->a, c));
    case Kind::Pow: {
      NodePtr da = deriv_node(e->a, c);
      if (is_num(da, 0) || e->pow == 0) return make_num(0);
      return f_mul(make_num(e->pow),
                   f_mul(make_pow(e->a, e->pow - 1), std::move(da)));
    }
    case Kind::Call: {
      NodePtr da = deriv_node(e->a, c);
      if (is_num(da, 0)) return make_num(0);
      NodePtr outer;
      switch (e->fn) {
        case Fn::Sqrt:
          outer = f_div(make_num(0.5), make_call(Fn::Sqrt, e->a));
          break;
        case Fn::Exp: outer = make_call(Fn::Exp, e->a); break;
        case Fn::Ln: outer = f_div(make_num(1), e->a); break;
        case Fn::Atan:
          outer = f_div(make_num(1), f_add(make_num(1), make_pow(e->a, 2)));
          break;
        case Fn::Sin: outer = make_call(Fn::Cos, e->a); break;
        case Fn::Cos: outer = make_neg(make_call(Fn::Sin, e->a)); break;
      }
      return f_mul(std::move(outer), std::move(da));
    }
  }
  throw std::logic_error("bad node");
}

NodePtr subst_node(const NodePtr& e, const std::vector<Expr>& repl) {
  if (e->kind == Kind::Num) return e;
  if (e->kind == Kind::Coord) {
    if (e->coord < static_cast<int>(repl.size()) && repl[e->coord].valid())
      return repl[e->coord].root();
    return e;
  }
  auto out = std::make_shared<Node>(*e);
  out->a = subst_node(e->a, repl);
  if (e->b) out->b = subst_node(e->b, repl);
  return out;
}

}  // namespace

Expr Expr::derivative(int c) const {
  if (c < 0 || c >= 2 * n_)
    throw IndexOutOfRange("coordinate slot out of range");
  return Expr(deriv_node(root_, c), n_);
}

Expr Expr::substitute(const std::vector<Expr>& repl) const {
  return Expr(subst_node(root_, repl), n_);
}

Expr Expr::parse(const std::string& src, int n, const Params& params) {
  Parser p(src, n, params);
  return Expr(p.run(), n);
}

Expr Expr::number(double v, int n) { return Expr(make_num(v), n); }

Expr Expr::coord(int c, int n) {
  if (c < 0 || c >= 2 * n) throw IndexOutOfRange("coordinate slot out of range");
  return Expr(make_coord(c), n);
}

double Expr::eval(std::span<const double> point) const {
  return eval_node<double>(root_.get(), point);
}

Jet Expr::eval_jet(std::span<const Jet> vars) const {
  return eval_node<Jet>(root_.get(), vars);
}

Expr Expr::reverse_field() const {
  return Expr(reverse_node(root_, n_), n_);
}

std::string Expr::print() const {
  std::ostringstream os;
  print_node(root_.get(), n_, os);
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) {
  return Expr(make_bin(Kind::Add, a.root_, b.root_), a.n_);
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr(make_bin(Kind::Sub, a.root_, b.root_), a.n_);
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr(make_bin(Kind::Mul, a.root_, b.root_), a.n_);
}
Expr operator/(const Expr& a, const Expr& b) {
  return Expr(make_bin(Kind::Div, a.root_, b.root_), a.n_);
}
Expr operator-(const Expr& a) { return Expr(make_neg(a.root_), a.n_); }

}  // namespace spraylab
