#pragma once

#include <vector>

#include "bergman/rational.hpp"

namespace bergman::domains {

/// Rank and the per-component exponent data of the Siegel realization.
/// The vectors are opaque inputs here; each supported domain family ships
/// its own values (see structure_of).
struct SiegelStructure {
    int rank = 1;               // l
    std::vector<Rational> n;    // n_j >= 0
    std::vector<Rational> d;    // d_j <= 0
    std::vector<Rational> q;    // q_j >= 0

    /// Throws Error if the lengths or sign constraints are violated or if
    /// some -2*d_j + q_j fails to be positive.
    void validate() const;
};

/// -min_j (n_j + 2) / (2(-2 d_j + q_j)); weights are admissible strictly above it.
Rational beta_min(const SiegelStructure& s);

/// max_j n_j / (2(-2 d_j + q_j)); the exponent gap in the transported integral identity.
Rational beta_int(const SiegelStructure& s);

}  // namespace bergman::domains
