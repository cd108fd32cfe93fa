#include "bergman/domain.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace bergman::domains {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex ipow(Complex base, int n) {
    Complex r(1.0, 0.0);
    while (n > 0) {
        if (n & 1) r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

// log(d!/pi^d), cached; evaluated per sample in the integrators.
double log_ball_coeff(int d) {
    static const auto table = [] {
        std::array<double, 33> t{};
        for (int i = 1; i < 33; ++i) t[i] = std::lgamma(i + 1.0) - i * std::log(kPi);
        return t;
    }();
    if (d < 33) return table[d];
    return std::lgamma(d + 1.0) - d * std::log(kPi);
}

constexpr double kLogPi = 1.1447298858494001741;

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error("cannot parse " + what + " from '" + s + "'");
    }
}

}  // namespace

DomainSpec DomainSpec::unit_ball(int d) {
    if (d < 1) throw Error("ball dimension must be >= 1");
    DomainSpec s;
    s.kind = DomainKind::UnitBall;
    s.dim = d;
    return s;
}

DomainSpec DomainSpec::polydisk(int m) {
    if (m < 1) throw Error("polydisk factor count must be >= 1");
    DomainSpec s;
    s.kind = DomainKind::Polydisk;
    s.dim = m;
    return s;
}

DomainSpec DomainSpec::symmetric(int r, int a, int b) {
    if (r < 1 || a < 0 || b < 0) throw Error("symmetric domain needs r >= 1, a >= 0, b >= 0");
    DomainSpec s;
    s.kind = DomainKind::SymmetricConstants;
    s.rank = r;
    s.a = a;
    s.b = b;
    return s;
}

DomainSpec DomainSpec::vinberg() {
    DomainSpec s;
    s.kind = DomainKind::VinbergRepresentative;
    return s;
}

DomainSpec DomainSpec::parse(const std::string& text) {
    if (text == "vinberg") return vinberg();
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    if (head == "ball") {
        if (colon == std::string::npos) throw Error("expected ball:<d>");
        return unit_ball(parse_int(text.substr(colon + 1), "ball dimension"));
    }
    if (head == "polydisk") {
        if (colon == std::string::npos) throw Error("expected polydisk:<m>");
        return polydisk(parse_int(text.substr(colon + 1), "polydisk factors"));
    }
    if (head == "symmetric") {
        if (colon == std::string::npos) throw Error("expected symmetric:r=<r>,a=<a>,b=<b>");
        int r = -1, a = -1, b = -1;
        std::string rest = text.substr(colon + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            std::size_t comma = rest.find(',', start);
            std::string item = rest.substr(start, comma == std::string::npos ? comma : comma - start);
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw Error("expected key=value in symmetric spec, got '" + item + "'");
            std::string key = item.substr(0, eq);
            int val = parse_int(item.substr(eq + 1), "symmetric parameter " + key);
            if (key == "r") r = val;
            else if (key == "a") a = val;
            else if (key == "b") b = val;
            else throw Error("unknown symmetric parameter '" + key + "'");
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (r < 0 || a < 0 || b < 0) throw Error("symmetric spec needs r=, a= and b=");
        return symmetric(r, a, b);
    }
    throw Error("unknown domain spec '" + text + "' (ball:<d>, polydisk:<m>, symmetric:r=,a=,b=, vinberg)");
}

std::string DomainSpec::str() const {
    switch (kind) {
        case DomainKind::UnitBall: return "ball:" + std::to_string(dim);
        case DomainKind::Polydisk: return "polydisk:" + std::to_string(dim);
        case DomainKind::SymmetricConstants:
            return "symmetric:r=" + std::to_string(rank) + ",a=" + std::to_string(a) +
                   ",b=" + std::to_string(b);
        case DomainKind::VinbergRepresentative: return "vinberg";
    }
    return "?";
}

int DomainSpec::ambient_dim() const {
    if (!kernel_evaluable())
        throw KernelUnavailable("domain '" + str() + "' exposes structure constants only");
    return dim;
}

SiegelStructure structure_of(const DomainSpec& spec) {
    SiegelStructure s;
    switch (spec.kind) {
        case DomainKind::UnitBall:
            s.rank = 1;
            s.n = {Rational(0)};
            s.d = {Rational(-1)};
            s.q = {Rational(spec.dim - 1)};
            break;
        case DomainKind::Polydisk:
            s.rank = spec.dim;
            s.n.assign(spec.dim, Rational(0));
            s.d.assign(spec.dim, Rational(-1));
            s.q.assign(spec.dim, Rational(0));
            break;
        case DomainKind::SymmetricConstants:
            s.rank = spec.rank;
            for (int j = 1; j <= spec.rank; ++j) {
                s.n.push_back(Rational(static_cast<long long>(spec.a) * (spec.rank - j)));
                s.d.push_back(Rational(-2 - static_cast<long long>(spec.a) * (spec.rank - 1), 2));
                s.q.push_back(Rational(spec.b));
            }
            break;
        case DomainKind::VinbergRepresentative:
            s.rank = 3;
            s.n = {Rational(2), Rational(0), Rational(0)};
            s.d = {Rational(-2), Rational(-3, 2), Rational(-3, 2)};
            s.q = {Rational(0), Rational(0), Rational(0)};
            break;
    }
    s.validate();
    return s;
}

bool contains(const DomainSpec& spec, const CPoint& z, double margin) {
    if (!spec.kernel_evaluable())
        throw KernelUnavailable("domain '" + spec.str() + "' has no evaluable realization");
    if (static_cast<int>(z.dim()) != spec.dim) return false;
    double limit = 1.0 - margin;
    if (spec.kind == DomainKind::UnitBall) return std::sqrt(z.norm_sq()) < limit;
    for (const auto& c : z.coords)
        if (std::abs(c) >= limit) return false;
    return true;
}

void require_inside(const DomainSpec& spec, const CPoint& z, const char* what) {
    if (static_cast<int>(z.dim()) != spec.ambient_dim())
        throw PointOutsideDomain(std::string(what) + " has dimension " + std::to_string(z.dim()) +
                                 ", domain " + spec.str() + " expects " + std::to_string(spec.dim));
    if (!contains(spec, z))
        throw PointOutsideDomain(std::string(what) + " " + z.str() + " is not strictly inside " +
                                 spec.str());
}

double volume(const DomainSpec& spec) {
    int d = spec.ambient_dim();
    if (spec.kind == DomainKind::UnitBall) return std::pow(kPi, d) / std::tgamma(d + 1.0);
    return std::pow(kPi, d);
}

Complex herm_inner(const CPoint& z, const CPoint& w) {
    Complex s(0.0, 0.0);
    for (std::size_t j = 0; j < z.dim(); ++j) s += z[j] * std::conj(w[j]);
    return s;
}

Complex log_kernel(const DomainSpec& spec, const CPoint& z, const CPoint& w) {
    require_inside(spec, z, "point");
    require_inside(spec, w, "point");
    int d = spec.dim;
    if (spec.kind == DomainKind::UnitBall) {
        Complex base = Complex(1.0, 0.0) - herm_inner(z, w);
        return log_ball_coeff(d) - static_cast<double>(d + 1) * std::log(base);
    }
    Complex acc(0.0, 0.0);
    for (int j = 0; j < d; ++j) {
        Complex base = Complex(1.0, 0.0) - z[j] * std::conj(w[j]);
        acc += -kLogPi - 2.0 * std::log(base);
    }
    return acc;
}

Complex kernel(const DomainSpec& spec, const CPoint& z, const CPoint& w) {
    return std::exp(log_kernel(spec, z, w));
}

double log_kernel_diag(const DomainSpec& spec, const CPoint& z) {
    require_inside(spec, z, "point");
    int d = spec.dim;
    if (spec.kind == DomainKind::UnitBall) {
        return log_ball_coeff(d) - static_cast<double>(d + 1) * std::log1p(-z.norm_sq());
    }
    double acc = 0.0;
    for (int j = 0; j < d; ++j) acc += -kLogPi - 2.0 * std::log1p(-std::norm(z[j]));
    return acc;
}

double c_beta(const DomainSpec& spec, double beta) {
    int d = spec.ambient_dim();
    double bmin = beta_min(structure_of(spec)).to_double();
    if (!(beta > bmin))
        throw BetaOutOfRange("beta = " + std::to_string(beta) + " must exceed beta_min = " +
                             std::to_string(bmin) + " on " + spec.str());
    if (spec.kind == DomainKind::Polydisk) return std::pow(2.0 * beta + 1.0, d);
    // Vol^{1+beta}/Vol_beta on the ball reduces to a Gamma ratio.
    double s = beta * (d + 1);
    return std::exp(std::lgamma(s + d + 1.0) - std::lgamma(d + 1.0) - std::lgamma(s + 1.0));
}

double volume_beta_closed(const DomainSpec& spec, double beta) {
    return std::pow(volume(spec), 1.0 + beta) / c_beta(spec, beta);
}

WeightParams WeightParams::make(const DomainSpec& spec, double beta) {
    WeightParams wp;
    wp.beta = beta;
    wp.c_beta = domains::c_beta(spec, beta);
    return wp;
}

Complex weighted_kernel(const DomainSpec& spec, const WeightParams& wp, const CPoint& z,
                        const CPoint& w) {
    return wp.c_beta * std::exp((1.0 + wp.beta) * log_kernel(spec, z, w));
}

Complex normalized_kernel(const DomainSpec& spec, const WeightParams& wp, const CPoint& z,
                          const CPoint& w) {
    double diag = (1.0 + wp.beta) * log_kernel_diag(spec, z);
    return std::sqrt(wp.c_beta) * std::exp((1.0 + wp.beta) * log_kernel(spec, w, z) - 0.5 * diag);
}

MapImage cayley(const DomainSpec& spec, const CPoint& z) {
    require_inside(spec, z, "point");
    const Complex one(1.0, 0.0);
    const Complex two_i(0.0, 2.0);
    MapImage out;
    out.image = CPoint(z.dim());
    if (spec.kind == DomainKind::UnitBall) {
        Complex den = one - z[0];
        out.image[0] = Complex(0.0, 1.0) * (one + z[0]) / den;
        for (std::size_t j = 1; j < z.dim(); ++j) out.image[j] = z[j] / den;
        out.jac_det = two_i / ipow(den, spec.dim + 1);
        return out;
    }
    out.jac_det = one;
    for (std::size_t j = 0; j < z.dim(); ++j) {
        Complex den = one - z[j];
        out.image[j] = Complex(0.0, 1.0) * (one + z[j]) / den;
        out.jac_det *= two_i / (den * den);
    }
    return out;
}

double log_abs_cayley_jac(const DomainSpec& spec, const CPoint& z) {
    require_inside(spec, z, "point");
    if (spec.kind == DomainKind::UnitBall)
        return std::log(2.0) - (spec.dim + 1) * std::log(std::abs(Complex(1.0, 0.0) - z[0]));
    double acc = 0.0;
    for (std::size_t j = 0; j < z.dim(); ++j)
        acc += std::log(2.0) - 2.0 * std::log(std::abs(Complex(1.0, 0.0) - z[j]));
    return acc;
}

MapImage ball_automorphism(const CPoint& a, const CPoint& z) {
    const std::size_t d = a.dim();
    if (z.dim() != d) throw PointOutsideDomain("automorphism arguments have mismatched dimensions");
    DomainSpec ball = DomainSpec::unit_ball(static_cast<int>(d));
    require_inside(ball, a, "automorphism center");
    require_inside(ball, z, "point");
    double a2 = a.norm_sq();
    MapImage out;
    if (a2 < 1e-300) {  // a = 0: identity
        out.image = z;
        out.jac_det = Complex(1.0, 0.0);
        return out;
    }
    Complex ip = herm_inner(z, a);
    double s = std::sqrt(1.0 - a2);
    Complex den = Complex(1.0, 0.0) - ip;
    out.image = CPoint(d);
    for (std::size_t j = 0; j < d; ++j) {
        Complex proj = (ip / a2) * a[j];
        out.image[j] = (proj + s * (z[j] - proj) - a[j]) / den;
    }
    out.jac_det = std::pow(1.0 - a2, 0.5 * (d + 1)) / ipow(den, static_cast<int>(d) + 1);
    return out;
}

MapImage mobius_from_origin(const DomainSpec& spec, const CPoint& a, const CPoint& u) {
    require_inside(spec, a, "transport center");
    const std::size_t d = a.dim();
    MapImage out;
    out.image = CPoint(d);
    if (spec.kind == DomainKind::UnitBall) {
        double a2 = a.norm_sq();
        if (a2 < 1e-300) {
            out.image = u;
            out.jac_det = Complex(1.0, 0.0);
            return out;
        }
        Complex ip = herm_inner(u, a);
        double s = std::sqrt(1.0 - a2);
        Complex den = Complex(1.0, 0.0) + ip;
        for (std::size_t j = 0; j < d; ++j) {
            Complex proj = (ip / a2) * a[j];
            out.image[j] = (a[j] + proj + s * (u[j] - proj)) / den;
        }
        out.jac_det = std::pow(1.0 - a2, 0.5 * (d + 1)) / ipow(den, static_cast<int>(d) + 1);
        return out;
    }
    out.jac_det = Complex(1.0, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        Complex den = Complex(1.0, 0.0) + std::conj(a[j]) * u[j];
        out.image[j] = (u[j] + a[j]) / den;
        out.jac_det *= (1.0 - std::norm(a[j])) / (den * den);
    }
    return out;
}

}  // namespace bergman::domains
