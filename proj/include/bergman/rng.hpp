#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace bergman {

// Counter-based generator: each 128-bit block is a pure function of
// (key, counter), so sample i of substream s can be produced independently
// of every other sample. That is what makes the Monte Carlo estimators
// reproducible under any worker split.
// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block generate(Key key, Block ctr) {
        for (int round = 0; round < 10; ++round) {
            ctr = single_round(ctr, key);
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

private:
    static void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
        std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(p >> 32);
        lo = static_cast<std::uint32_t>(p);
    }

    static Block single_round(const Block& ctr, const Key& key) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(0xD2511F53u, ctr[0], hi0, lo0);
        mul_hi_lo(0xCD9E8D57u, ctr[2], hi1, lo1);
        return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
};

/// The draw sequence attached to one (seed, stream, index) triple.
/// Walks Philox blocks lazily; any number of uniforms per sample.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint32_t stream, std::uint64_t index)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          base_{0u, stream, static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)} {}

    std::uint64_t next_u64() {
        if (lane_ == 2) {
            Philox4x32::Block ctr = base_;
            ctr[0] = block_++;
            current_ = Philox4x32::generate(key_, ctr);
            lane_ = 0;
        }
        std::uint64_t hi = current_[2 * lane_];
        std::uint64_t lo = current_[2 * lane_ + 1];
        ++lane_;
        return (hi << 32) | lo;
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - next_double();  // (0, 1]
        double u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

private:
    Philox4x32::Key key_;
    Philox4x32::Block base_;
    std::uint32_t block_ = 0;
    int lane_ = 2;
    Philox4x32::Block current_{};
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bergman
