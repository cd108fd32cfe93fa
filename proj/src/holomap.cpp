#include "bergman/holomap.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace bergman::compop {

namespace {

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

class Parser {
public:
    Parser(const std::string& text, int arity) : text_(text), arity_(arity) {}

    std::vector<std::unique_ptr<Expr>> parse_components() {
        std::vector<std::unique_ptr<Expr>> out;
        out.push_back(parse_expr());
        while (peek() == ',') {
            ++pos_;
            out.push_back(parse_expr());
        }
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input '" + text_.substr(pos_) + "'", pos_,
                             "operator or end of map");
        return out;
    }

private:
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    std::unique_ptr<Expr> parse_expr() {
        auto lhs = parse_term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            auto node = std::make_unique<Expr>();
            node->kind = c == '+' ? Expr::Kind::Add : Expr::Kind::Sub;
            node->lhs = std::move(lhs);
            node->rhs = parse_term();
            lhs = std::move(node);
        }
    }

    std::unique_ptr<Expr> parse_term() {
        auto lhs = parse_factor();
        while (true) {
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            auto node = std::make_unique<Expr>();
            node->kind = c == '*' ? Expr::Kind::Mul : Expr::Kind::Div;
            node->lhs = std::move(lhs);
            node->rhs = parse_factor();
            lhs = std::move(node);
        }
    }

    std::unique_ptr<Expr> parse_factor() {
        auto base = parse_base();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::Pow;
        node->exponent = parse_int("exponent");
        node->lhs = std::move(base);
        return node;
    }

    std::unique_ptr<Expr> parse_base() {
        char c = peek();
        if (c == '-') {
            ++pos_;
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Neg;
            node->lhs = parse_base();
            return node;
        }
        if (c == '(') {
            ++pos_;
            auto inner = parse_expr();
            if (peek() != ')') throw ParseError("unbalanced parenthesis", pos_, "')'");
            ++pos_;
            return inner;
        }
        if (c == 'z') {
            ++pos_;
            std::size_t at = pos_;
            int idx = parse_int("variable index");
            if (idx < 1 || idx > arity_)
                throw ParseError("unknown variable z" + std::to_string(idx) + " for arity " +
                                     std::to_string(arity_),
                                 at, "index in 1.." + std::to_string(arity_));
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Var;
            node->var_index = idx - 1;
            return node;
        }
        if ((c >= '0' && c <= '9') || c == '.') {
            double v = parse_number();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Const;
            if (pos_ < text_.size() && text_[pos_] == 'i') {
                ++pos_;
                node->value = Complex(0.0, v);
            } else {
                node->value = Complex(v, 0.0);
            }
            return node;
        }
        throw ParseError(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'",
                         pos_, "number, z<k>, '(' or '-'");
    }

    int parse_int(const std::string& what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
        if (pos_ == start) throw ParseError("missing " + what, start, "integer");
        if (pos_ - start > 6) throw ParseError(what + " too large", start, "at most 6 digits");
        return std::atoi(text_.substr(start, pos_ - start).c_str());
    }

    double parse_number() {
        std::size_t start = pos_;
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("bad number", start, "number");
        pos_ += static_cast<std::size_t>(end - begin);
        // strtod would eat the 'i' of "2i" as part of nothing; it stops at
        // 'i', which the caller inspects. It also accepts "inf"/"nan", which
        // the grammar forbids; those start with a letter and never reach here.
        return v;
    }

    const std::string& text_;
    int arity_;
    std::size_t pos_ = 0;
};

Complex ipow(Complex base, int n) {
    Complex r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// precedence: expr = 1, term = 2, factor = 3, base = 4
int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Pow: return 3;
        default: return 4;
    }
}

std::string print(const Expr& e, int parent_prec) {
    std::string out;
    switch (e.kind) {
        case Expr::Kind::Var: out = "z" + std::to_string(e.var_index + 1); break;
        case Expr::Kind::Const:
            if (e.value.imag() == 0.0) {
                out = format_double(e.value.real());
            } else {
                out = format_double(e.value.imag()) + "i";
            }
            break;
        case Expr::Kind::Add: out = print(*e.lhs, 1) + " + " + print(*e.rhs, 2); break;
        case Expr::Kind::Sub: out = print(*e.lhs, 1) + " - " + print(*e.rhs, 2); break;
        case Expr::Kind::Mul: out = print(*e.lhs, 2) + "*" + print(*e.rhs, 3); break;
        case Expr::Kind::Div: out = print(*e.lhs, 2) + "/" + print(*e.rhs, 3); break;
        case Expr::Kind::Pow: out = print(*e.lhs, 4) + "^" + std::to_string(e.exponent); break;
        case Expr::Kind::Neg: out = "-" + print(*e.lhs, 4); break;
    }
    if (precedence(e.kind) < parent_prec) return "(" + out + ")";
    return out;
}

}  // namespace

Complex Expr::eval(const CPoint& z) const {
    switch (kind) {
        case Kind::Var: return z[static_cast<std::size_t>(var_index)];
        case Kind::Const: return value;
        case Kind::Add: return lhs->eval(z) + rhs->eval(z);
        case Kind::Sub: return lhs->eval(z) - rhs->eval(z);
        case Kind::Mul: return lhs->eval(z) * rhs->eval(z);
        case Kind::Div: return lhs->eval(z) / rhs->eval(z);
        case Kind::Pow: return ipow(lhs->eval(z), exponent);
        case Kind::Neg: return -lhs->eval(z);
    }
    return Complex(0.0, 0.0);
}

std::string Expr::str() const { return print(*this, 0); }

CPoint HoloMap::eval(const CPoint& z) const {
    CPoint out(components_.size());
    for (std::size_t j = 0; j < components_.size(); ++j) out[j] = components_[j]->eval(z);
    return out;
}

CPoint HoloMap::eval_checked(const CPoint& z) const {
    CPoint out = eval(z);
    for (const Complex& c : out.coords)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw EvaluationError("map evaluation is non-finite", z);
    return out;
}

std::string HoloMap::str() const {
    std::string out;
    for (std::size_t j = 0; j < components_.size(); ++j) {
        if (j) out += ", ";
        out += components_[j]->str();
    }
    return out;
}

HoloMap parse_map(const std::string& text, int arity) {
    if (arity < 1) throw ArityMismatch("map arity must be positive");
    Parser parser(text, arity);
    auto components = parser.parse_components();
    if (static_cast<int>(components.size()) != arity)
        throw ArityMismatch("map has " + std::to_string(components.size()) +
                            " components, domain needs " + std::to_string(arity));
    return HoloMap(arity, std::move(components));
}

}  // namespace bergman::compop
