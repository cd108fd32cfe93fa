#include "bergman/siegel.hpp"

#include "bergman/errors.hpp"

namespace bergman::domains {

namespace {

// 2(-2 d_j + q_j), the common denominator; validate() guarantees it is positive.
Rational denom(const SiegelStructure& s, int j) {
    return (Rational(-2) * s.d[j] + s.q[j]) * Rational(2);
}

}  // namespace

void SiegelStructure::validate() const {
    if (rank < 1) throw Error("Siegel structure rank must be positive");
    auto l = static_cast<std::size_t>(rank);
    if (n.size() != l || d.size() != l || q.size() != l)
        throw Error("Siegel structure vectors must all have length l");
    for (int j = 0; j < rank; ++j) {
        if (n[j] < Rational(0)) throw Error("n_j must be nonnegative");
        if (q[j] < Rational(0)) throw Error("q_j must be nonnegative");
        if (d[j] > Rational(0)) throw Error("d_j must be nonpositive");
        if (Rational(-2) * d[j] + q[j] <= Rational(0))
            throw Error("-2 d_j + q_j must be positive");
    }
}

Rational beta_min(const SiegelStructure& s) {
    s.validate();
    Rational m = (s.n[0] + Rational(2)) / denom(s, 0);
    for (int j = 1; j < s.rank; ++j) {
        Rational v = (s.n[j] + Rational(2)) / denom(s, j);
        if (v < m) m = v;
    }
    return -m;
}

Rational beta_int(const SiegelStructure& s) {
    s.validate();
    Rational m = s.n[0] / denom(s, 0);
    for (int j = 1; j < s.rank; ++j) {
        Rational v = s.n[j] / denom(s, j);
        if (m < v) m = v;
    }
    return m;
}

}  // namespace bergman::domains
