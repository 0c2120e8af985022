#include "gtorus/symbol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace gtorus {

struct ExprNode {
  enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Sin, Cos, Exp, Step };
  Op op = Op::Number;
  double value = 0.0;
  int var = 0;
  std::shared_ptr<const ExprNode> lhs, rhs;

  bool uses(Op o) const {
    return op == o || (lhs && lhs->uses(o)) || (rhs && rhs->uses(o));
  }

  double eval(const std::vector<double>& vars) const {
    switch (op) {
      case Op::Number: return value;
      case Op::Var: return vars[static_cast<std::size_t>(var)];
      case Op::Neg: return -lhs->eval(vars);
      case Op::Add: return lhs->eval(vars) + rhs->eval(vars);
      case Op::Sub: return lhs->eval(vars) - rhs->eval(vars);
      case Op::Mul: return lhs->eval(vars) * rhs->eval(vars);
      case Op::Div: return lhs->eval(vars) / rhs->eval(vars);
      case Op::Sin: return std::sin(lhs->eval(vars));
      case Op::Cos: return std::cos(lhs->eval(vars));
      case Op::Exp: return std::exp(lhs->eval(vars));
      case Op::Step: return lhs->eval(vars) >= 0.0 ? 1.0 : 0.0;
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make(ExprNode::Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

std::vector<std::string> variable_names(int d) {
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  for (int i = 1; i <= d; ++i) names.push_back("xi" + std::to_string(i));
  return names;
}

class Parser {
 public:
  Parser(std::string_view text, int d) : text_(text), names_(variable_names(d)) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != text_.size()) fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
    return e;
  }

 private:
  std::string_view text_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;

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
  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::ostringstream msg;
    msg << "at byte " << pos_ << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? ", " : "") << expected[i];
    if (pos_ < text_.size()) {
      msg << "; found '" << text_[pos_] << "'";
    } else {
      msg << "; found end of input";
    }
    throw Error(ErrorCode::ParseError, msg.str());
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = make(ExprNode::Op::Add, lhs, term());
      } else if (accept('-')) {
        lhs = make(ExprNode::Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      if (accept('*')) {
        lhs = make(ExprNode::Op::Mul, lhs, factor());
      } else if (accept('/')) {
        lhs = make(ExprNode::Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip();
    const std::vector<std::string> expected = {"number", "variable", "function", "'('", "'-'"};
    if (pos_ >= text_.size()) fail(expected);
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make(ExprNode::Op::Neg, factor());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail({"')'"});
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(expected);
  }

  NodePtr number() {
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    const auto [end, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc()) fail({"number"});
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = std::make_shared<ExprNode>();
    n->op = ExprNode::Op::Number;
    n->value = v;
    return n;
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    static const std::pair<const char*, ExprNode::Op> funcs[] = {
        {"sin", ExprNode::Op::Sin}, {"cos", ExprNode::Op::Cos}, {"exp", ExprNode::Op::Exp}, {"step", ExprNode::Op::Step}};
    for (const auto& [fname, op] : funcs) {
      if (name == fname) {
        if (!accept('(')) fail({"'('"});
        NodePtr arg = expr();
        if (!accept(')')) fail({"')'"});
        return make(op, arg);
      }
    }
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
      std::ostringstream msg;
      msg << "unknown variable '" << name << "' at byte " << start << "; valid names:";
      for (const auto& v : names_) msg << ' ' << v;
      throw Error(ErrorCode::UnknownVariable, msg.str());
    }
    auto n = std::make_shared<ExprNode>();
    n->op = ExprNode::Op::Var;
    n->var = static_cast<int>(it - names_.begin());
    return n;
  }
};

std::vector<double> parse_number_list(std::string_view s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    std::string_view item = s.substr(pos, comma - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || end != item.data() + item.size() || item.empty()) {
      throw Error(ErrorCode::ParseError, "at byte " + std::to_string(pos) + ": expected number");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

Symbol Symbol::constant(int d, double c) {
  Symbol s;
  s.kind_ = Kind::Constant;
  s.d_ = d;
  s.c_ = c;
  s.bound_ = std::abs(c);
  s.text_ = "const:" + format_double(c);
  return s;
}

Symbol Symbol::box(int d, std::vector<double> lo, std::vector<double> hi) {
  const auto n = static_cast<std::size_t>(2 * d);
  if (lo.size() != n || hi.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "box needs " + std::to_string(n) + " intervals");
  }
  Symbol s;
  s.kind_ = Kind::Box;
  s.d_ = d;
  s.text_ = "box:";
  for (std::size_t i = 0; i < n; ++i) {
    if (!(0.0 <= lo[i] && lo[i] <= hi[i] && hi[i] <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "box intervals must satisfy 0 <= lo <= hi <= 1");
    }
    s.text_ += (i ? "," : "") + format_double(lo[i]) + "," + format_double(hi[i]);
  }
  s.discontinuous_ = true;
  s.lo_ = std::move(lo);
  s.hi_ = std::move(hi);
  s.bound_ = 1.0;
  return s;
}

Symbol Symbol::trigpoly(int d, std::vector<TrigTerm> terms) {
  Symbol s;
  s.kind_ = Kind::TrigPoly;
  s.d_ = d;
  s.text_ = "trigpoly";
  double bound = 0.0;
  for (const TrigTerm& t : terms) {
    if (t.frequency.size() != static_cast<std::size_t>(2 * d)) {
      throw Error(ErrorCode::InvalidArgument, "trigpoly frequency has wrong length");
    }
    bound += std::abs(t.coeff);
  }
  // Real iff the coefficient of -f is conj of the coefficient of f.
  s.real_ = true;
  for (const TrigTerm& t : terms) {
    cplx partner(0.0, 0.0), self(0.0, 0.0);
    for (const TrigTerm& u : terms) {
      bool neg = true, same = true;
      for (std::size_t i = 0; i < t.frequency.size(); ++i) {
        neg = neg && u.frequency[i] == -t.frequency[i];
        same = same && u.frequency[i] == t.frequency[i];
      }
      if (neg) partner += u.coeff;
      if (same) self += u.coeff;
    }
    if (std::abs(partner - std::conj(self)) > 1e-14 * std::max(1.0, bound)) s.real_ = false;
  }
  s.terms_ = std::move(terms);
  s.bound_ = bound;
  return s;
}

cplx Symbol::operator()(const RVector& x, const RVector& xi) const {
  switch (kind_) {
    case Kind::Constant: return c_;
    case Kind::Box: {
      double v = 1.0;
      constexpr double eps = 1e-12;
      for (int i = 0; i < 2 * d_; ++i) {
        const double t = i < d_ ? x(i) : xi(i - d_);
        const double lo = lo_[static_cast<std::size_t>(i)];
        const double hi = hi_[static_cast<std::size_t>(i)];
        if (t < lo - eps || t > hi + eps) return 0.0;
        if (std::abs(t - lo) <= eps || std::abs(t - hi) <= eps) v *= 0.5;
      }
      return v;
    }
    case Kind::TrigPoly: {
      cplx sum(0.0, 0.0);
      for (const TrigTerm& t : terms_) {
        double arg = 0.0;
        for (int i = 0; i < d_; ++i) arg += t.frequency[static_cast<std::size_t>(i)] * x(i);
        for (int i = 0; i < d_; ++i) arg += t.frequency[static_cast<std::size_t>(d_ + i)] * xi(i);
        sum += t.coeff * std::polar(1.0, 2.0 * kPi * arg);
      }
      return real_ ? cplx(sum.real(), 0.0) : sum;
    }
    case Kind::Expr: {
      std::vector<double> vars(static_cast<std::size_t>(2 * d_));
      for (int i = 0; i < d_; ++i) {
        vars[static_cast<std::size_t>(i)] = x(i);
        vars[static_cast<std::size_t>(d_ + i)] = xi(i);
      }
      return expr_->eval(vars);
    }
  }
  return 0.0;
}

Symbol parse_symbol(std::string_view text, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Symbol s;
  s.kind_ = Symbol::Kind::Expr;
  s.d_ = d;
  s.text_ = std::string(text);
  s.expr_ = Parser(text, d).parse();
  s.discontinuous_ = s.expr_->uses(ExprNode::Op::Step);

  // Sampled bound on a grid over [0,1]^{2d}.
  const int per_axis = d == 1 ? 65 : (d == 2 ? 17 : 5);
  std::size_t total = 1;
  for (int i = 0; i < 2 * d; ++i) total *= static_cast<std::size_t>(per_axis);
  RVector x(d), xi(d);
  double bound = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int i = 2 * d - 1; i >= 0; --i) {
      const double t = static_cast<double>(rem % static_cast<std::size_t>(per_axis)) / (per_axis - 1);
      rem /= static_cast<std::size_t>(per_axis);
      if (i < d) {
        x(i) = t;
      } else {
        xi(i - d) = t;
      }
    }
    const double v = s(x, xi).real();
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "symbol '" + s.text_ + "' is not finite on [0,1]^" +
                                                  std::to_string(2 * d));
    }
    bound = std::max(bound, std::abs(v));
  }
  s.bound_ = bound;
  return s;
}

Symbol symbol_from_spec(std::string_view spec, int d) {
  if (spec.substr(0, 6) == "const:") {
    const std::vector<double> v = parse_number_list(spec.substr(6));
    if (v.size() != 1) throw Error(ErrorCode::ParseError, "const: expects one number");
    return Symbol::constant(d, v[0]);
  }
  if (spec.substr(0, 4) == "box:") {
    const std::vector<double> v = parse_number_list(spec.substr(4));
    if (v.size() != static_cast<std::size_t>(4 * d)) {
      throw Error(ErrorCode::ParseError, "box: expects " + std::to_string(4 * d) + " numbers lo,hi per axis");
    }
    std::vector<double> lo, hi;
    for (std::size_t i = 0; i < v.size(); i += 2) {
      lo.push_back(v[i]);
      hi.push_back(v[i + 1]);
    }
    return Symbol::box(d, std::move(lo), std::move(hi));
  }
  return parse_symbol(spec, d);
}

}  // namespace gtorus
