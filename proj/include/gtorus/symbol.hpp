#pragma once

// Symbols a(x, xi) on [0,1]^{2d}: constants, boxes, trigonometric polynomials
// and parsed expressions over x1..xd, xi1..xid.
//
// Expression grammar (whitespace insensitive):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := number | var | func '(' expr ')' | '(' expr ')' | '-' factor
//   func   := sin | cos | exp | step        step(t) = 1 if t >= 0 else 0

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gtorus/common.hpp"

namespace gtorus {

struct ExprNode;

struct TrigTerm {
  /// Frequencies for (x1..xd, xi1..xid); the term is coeff * exp(2 pi i f.(x, xi)).
  std::vector<int> frequency;
  cplx coeff;
};

class Symbol {
 public:
  enum class Kind { Constant, Box, TrigPoly, Expr };

  static Symbol constant(int d, double c);
  /// Indicator of prod_j [lo_j, hi_j] over (x1..xd, xi1..xid); points on a
  /// face get the product of 1/2 per face they lie on.
  static Symbol box(int d, std::vector<double> lo, std::vector<double> hi);
  static Symbol trigpoly(int d, std::vector<TrigTerm> terms);

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return d_; }
  bool is_real() const noexcept { return real_; }
  /// Upper bound on |a| (exact for builtins, sampled for expressions).
  double bound() const noexcept { return bound_; }
  /// Box symbols and expressions using step(); quadrature converges slowly.
  bool is_discontinuous() const noexcept { return discontinuous_; }
  /// Canonical text for provenance.
  const std::string& description() const noexcept { return text_; }

  cplx operator()(const RVector& x, const RVector& xi) const;

  const std::vector<double>& box_lo() const noexcept { return lo_; }
  const std::vector<double>& box_hi() const noexcept { return hi_; }

 private:
  friend Symbol parse_symbol(std::string_view text, int d);
  Symbol() = default;

  Kind kind_ = Kind::Constant;
  int d_ = 1;
  bool real_ = true;
  bool discontinuous_ = false;
  double bound_ = 0.0;
  std::string text_;
  double c_ = 0.0;
  std::vector<double> lo_, hi_;
  std::vector<TrigTerm> terms_;
  std::shared_ptr<const ExprNode> expr_;
};

/// Parses an expression. Throws Error(ParseError) with the byte offset and
/// the expected tokens, Error(UnknownVariable) listing the valid names, and
/// Error(InvalidArgument) if the expression is not finite on [0,1]^{2d}.
Symbol parse_symbol(std::string_view text, int d);

/// Also accepts "const:c" and "box:lo1,hi1,...,lo2d,hi2d".
Symbol symbol_from_spec(std::string_view spec, int d);

}  // namespace gtorus
