#pragma once

#include <cstdint>

#include "bergman/point.hpp"

namespace bergman::mc {

struct McConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 123456789;
    unsigned workers = 1;
    double tolerance = 0.03;  // relative; CV threshold for identity checks

    McConfig with_samples(std::uint64_t n) const {
        McConfig c = *this;
        c.samples = n;
        return c;
    }
};

/// Monte Carlo value with its standard error and seed provenance.
/// Real-valued integrals leave the imaginary part at (numerical) zero.
struct McEstimate {
    Complex value{0.0, 0.0};
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    double real() const { return value.real(); }
};

}  // namespace bergman::mc
