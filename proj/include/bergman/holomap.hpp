#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/point.hpp"

namespace bergman::compop {

// Expression grammar for self-maps (one expression per output coordinate):
//
//   map    := expr ("," expr)*
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := base ("^" INT)?
//   base   := "z" INT | NUMBER | NUMBER "i" | "(" expr ")" | "-" base
//
// No conjugation and no modulus exist in the grammar, so every parsed map
// is holomorphic by construction.
struct Expr {
    enum class Kind { Var, Const, Add, Sub, Mul, Div, Pow, Neg };

    Kind kind = Kind::Const;
    int var_index = 0;  // Var: 0-based coordinate
    Complex value{0.0, 0.0};
    int exponent = 0;  // Pow
    std::unique_ptr<Expr> lhs, rhs;

    Complex eval(const CPoint& z) const;
    std::string str() const;
};

class HoloMap {
public:
    HoloMap(int arity, std::vector<std::unique_ptr<Expr>> components)
        : arity_(arity), components_(std::move(components)) {}

    int arity() const { return arity_; }
    std::size_t component_count() const { return components_.size(); }

    /// Raw evaluation; non-finite coordinates pass through.
    CPoint eval(const CPoint& z) const;

    /// Throws EvaluationError with the witness point on overflow or
    /// division by zero.
    CPoint eval_checked(const CPoint& z) const;

    /// Round-trips through parse_map.
    std::string str() const;

private:
    int arity_;
    std::vector<std::unique_ptr<Expr>> components_;
};

/// Parses the grammar above with variables z1..z<arity>. Throws ParseError
/// (position + expected token) on syntax errors or out-of-range variable
/// indices, ArityMismatch when the component count differs from arity.
HoloMap parse_map(const std::string& text, int arity);

}  // namespace bergman::compop
