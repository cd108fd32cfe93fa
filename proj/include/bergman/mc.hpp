#pragma once

#include <cmath>
#include <functional>
#include <future>
#include <utility>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/mc_types.hpp"
#include "bergman/rng.hpp"

namespace bergman::mc {

using domains::DomainSpec;
using domains::WeightParams;

// Fixed substream ids keep independent integrals decorrelated within one
// command while staying reproducible. Estimators that must share samples
// (restricted vs unrestricted integrands) deliberately reuse one id.
namespace stream {
inline constexpr std::uint32_t kUniform = 1;
inline constexpr std::uint32_t kBallVolume = 2;
inline constexpr std::uint32_t kCulSiegel = 3;
inline constexpr std::uint32_t kReproducing = 4;
inline constexpr std::uint32_t kAdjoint = 5;
inline constexpr std::uint32_t kCarleson = 6;
inline constexpr std::uint32_t kValidate = 7;
inline constexpr std::uint32_t kShellScan = 8;
inline constexpr std::uint32_t kDivergence = 9;
}  // namespace stream

/// Point i of the uniform law on the domain; pure in (seed, stream, index).
/// Radii are clamped a hair inside the boundary (1e-8) so downstream kernel
/// evaluations stay in the strict interior.
CPoint sample_point(const DomainSpec& spec, std::uint64_t seed, std::uint32_t stream,
                    std::uint64_t index);

/// Uniform law conditioned on the boundary shell depth_lo <= dist < depth_hi,
/// where depth is 1-|z| on the ball and 1-max_j |z_j| on the polydisk.
CPoint sample_point_shell(const DomainSpec& spec, std::uint64_t seed, std::uint32_t stream,
                          std::uint64_t index, double depth_lo, double depth_hi);

/// Lebesgue volume of the shell set above.
double shell_volume(const DomainSpec& spec, double depth_lo, double depth_hi);

/// Materialized prefix of the sample stream (diagnostics / moment tests).
std::vector<CPoint> sample_uniform(const DomainSpec& spec, const McConfig& cfg);

namespace detail {
struct Accum {
    double re = 0.0, im = 0.0, sq = 0.0;
    void add(Complex v) {
        re += v.real();
        im += v.imag();
        sq += std::norm(v);
    }
    void merge(const Accum& o) {
        re += o.re;
        im += o.im;
        sq += o.sq;
    }
};
}  // namespace detail

/// mean of value_at(i) over i < cfg.samples, times scale. The sample budget
/// is split into cfg.workers contiguous chunks; chunk partials accumulate
/// sequentially and merge in chunk order, so results are bit-stable for a
/// fixed (seed, workers) pair.
template <class F>
McEstimate mc_estimate(const McConfig& cfg, double scale, F&& value_at) {
    const std::uint64_t n = cfg.samples;
    unsigned chunks = cfg.workers == 0 ? 1 : cfg.workers;
    if (chunks > n && n > 0) chunks = static_cast<unsigned>(n);
    std::vector<std::future<detail::Accum>> parts;
    parts.reserve(chunks);
    for (unsigned c = 0; c < chunks; ++c) {
        std::uint64_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
        parts.push_back(std::async(std::launch::async, [lo, hi, &value_at] {
            detail::Accum acc;
            for (std::uint64_t i = lo; i < hi; ++i) acc.add(value_at(i));
            return acc;
        }));
    }
    detail::Accum total;
    for (auto& p : parts) total.merge(p.get());
    McEstimate est;
    est.samples = n;
    est.seed = cfg.seed;
    if (n == 0) return est;
    Complex mean(total.re / n, total.im / n);
    double var = total.sq / n - std::norm(mean);
    if (var < 0.0) var = 0.0;
    est.value = scale * mean;
    est.std_error = std::abs(scale) * std::sqrt(var / n);
    return est;
}

/// Same contract for k jointly sampled integrands (one pass, shared draws).
template <class F>
std::vector<McEstimate> mc_estimate_vec(const McConfig& cfg, const std::vector<double>& scales,
                                        F&& fill_at) {
    const std::size_t k = scales.size();
    const std::uint64_t n = cfg.samples;
    unsigned chunks = cfg.workers == 0 ? 1 : cfg.workers;
    if (chunks > n && n > 0) chunks = static_cast<unsigned>(n);
    using Row = std::vector<detail::Accum>;
    std::vector<std::future<Row>> parts;
    parts.reserve(chunks);
    for (unsigned c = 0; c < chunks; ++c) {
        std::uint64_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
        parts.push_back(std::async(std::launch::async, [lo, hi, k, &fill_at] {
            Row acc(k);
            std::vector<Complex> vals(k);
            for (std::uint64_t i = lo; i < hi; ++i) {
                fill_at(i, vals);
                for (std::size_t j = 0; j < k; ++j) acc[j].add(vals[j]);
            }
            return acc;
        }));
    }
    Row total(k);
    for (auto& p : parts) {
        Row part = p.get();
        for (std::size_t j = 0; j < k; ++j) total[j].merge(part[j]);
    }
    std::vector<McEstimate> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        out[j].samples = n;
        out[j].seed = cfg.seed;
        if (n == 0) continue;
        Complex mean(total[j].re / n, total[j].im / n);
        double var = total[j].sq / n - std::norm(mean);
        if (var < 0.0) var = 0.0;
        out[j].value = scales[j] * mean;
        out[j].std_error = std::abs(scales[j]) * std::sqrt(var / n);
    }
    return out;
}

/// Unbiased estimate of the dV_beta integral of f: uniform samples carry
/// the importance weight K(w,w)^{-beta}. Throws EvaluationError with the
/// witness point if the integrand is non-finite.
McEstimate integrate_weighted(const DomainSpec& spec, const WeightParams& wp,
                              const std::function<Complex(const CPoint&)>& f, const McConfig& cfg,
                              std::uint32_t stream = stream::kUniform);

/// Coordinate polynomial; total degree is checked by callers that promise
/// small degrees.
struct Polynomial {
    struct Term {
        Complex coeff;
        std::vector<int> powers;  // one exponent per coordinate
    };
    std::vector<Term> terms;

    int total_degree() const;
    Complex eval(const CPoint& z) const;
};

struct IdentityReport {
    enum class Verdict { ConstantConsistent, Inconsistent, DivergenceSuspected };

    double alpha = 0.0;
    double beta = 0.0;
    std::vector<CPoint> probe_points;
    std::vector<McEstimate> ratios;  // normalized: constant across probes when the identity holds
    double coefficient_of_variation = 0.0;
    Verdict verdict = Verdict::Inconsistent;
    /// Divergence-probe mode only: per probe, (shell depth, shell partial sum).
    std::vector<std::vector<std::pair<double, double>>> shell_partial_sums;
};

const char* verdict_str(IdentityReport::Verdict v);

/// I(z) = int |K(z,z')|^{1+alpha} |det J(Phi,z')|^{1+2beta-alpha} dV_beta(z').
/// Estimated after transporting z to the center, which removes the kernel
/// peak from the integrand (the kernel against the center is constant);
/// variance then stays bounded for probes arbitrarily close to the boundary.
McEstimate culsiegel_integral(const DomainSpec& spec, double alpha, double beta, const CPoint& z,
                              const McConfig& cfg);

/// Default probe scalars {0, 0.3, 0.6i, 0.9, 0.99} expanded per coordinate.
std::vector<CPoint> default_probes(const DomainSpec& spec);

/// Checks that I(z) / (K(z,z)^{alpha-beta} |det J(Phi,z)|^{1+2beta-alpha})
/// is probe-independent. Requires beta > beta_min and alpha > beta + beta_int
/// unless divergence_probe is set, in which case boundary-stratified partial
/// sums are reported and a growing tail yields the divergence verdict.
IdentityReport verify_culsiegel(const DomainSpec& spec, double alpha, double beta,
                                const std::vector<CPoint>& probes, const McConfig& cfg,
                                bool divergence_probe = false);

struct ReproducingCheck {
    McEstimate estimate;
    Complex expected;
    double abs_deviation = 0.0;
};

/// Pairs the weighted kernel against a polynomial and compares with the
/// point value p(z).
ReproducingCheck verify_reproducing(const DomainSpec& spec, const WeightParams& wp,
                                    const Polynomial& p, const CPoint& z, const McConfig& cfg);

struct LpNormCheck {
    McEstimate norm_sq;      // same integrand and stream as culsiegel_integral
    double reference = 0.0;  // constant * K(z,z)^{alpha-beta} |det J(Phi,z)|^{1+2beta-alpha}
    double rel_deviation = 0.0;
};

LpNormCheck corollary_lp_norm(const DomainSpec& spec, double alpha, double beta, const CPoint& z,
                              const McConfig& cfg, double constant);

}  // namespace bergman::mc
