#include "bergman/mc.hpp"

#include <algorithm>
#include <cmath>

namespace bergman::mc {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Sampled radii stay this far from the boundary so kernel logs and Moebius
// transports never leave the strict interior.
constexpr double kRadiusCap = 1.0 - 1e-8;

Complex unit_phase(double u) {
    double t = 2.0 * kPi * u;
    return Complex(std::cos(t), std::sin(t));
}

CPoint ball_point(int d, double radius, SampleRng& rng) {
    CPoint z(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (int j = 0; j < d; ++j) {
        z[j] = Complex(rng.next_gaussian(), rng.next_gaussian());
        n2 += std::norm(z[j]);
    }
    double scale = radius / std::sqrt(n2);
    for (int j = 0; j < d; ++j) z[j] *= scale;
    return z;
}

}  // namespace

CPoint sample_point(const DomainSpec& spec, std::uint64_t seed, std::uint32_t stream,
                    std::uint64_t index) {
    if (!spec.samplable())
        throw UnsupportedDomain("domain '" + spec.str() + "' is not samplable");
    SampleRng rng(seed, stream, index);
    const int d = spec.dim;
    if (spec.kind == domains::DomainKind::UnitBall) {
        double r = std::min(std::pow(rng.next_double(), 1.0 / (2.0 * d)), kRadiusCap);
        return ball_point(d, r, rng);
    }
    CPoint z(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        double r = std::min(std::sqrt(rng.next_double()), kRadiusCap);
        z[j] = r * unit_phase(rng.next_double());
    }
    return z;
}

CPoint sample_point_shell(const DomainSpec& spec, std::uint64_t seed, std::uint32_t stream,
                          std::uint64_t index, double depth_lo, double depth_hi) {
    if (!spec.samplable())
        throw UnsupportedDomain("domain '" + spec.str() + "' is not samplable");
    if (!(depth_lo < depth_hi) || depth_lo < 0.0 || depth_hi > 1.0)
        throw ParameterOutOfRange("shell depths must satisfy 0 <= lo < hi <= 1");
    SampleRng rng(seed, stream, index);
    const int d = spec.dim;
    const double r_lo = 1.0 - depth_hi;
    const double r_hi = std::min(1.0 - depth_lo, kRadiusCap);
    if (spec.kind == domains::DomainKind::UnitBall) {
        // radial CDF is r^{2d}
        double lo = std::pow(r_lo, 2.0 * d), hi = std::pow(r_hi, 2.0 * d);
        double r = std::pow(lo + rng.next_double() * (hi - lo), 1.0 / (2.0 * d));
        return ball_point(d, r, rng);
    }
    // max_j |z_j| has CDF R^{2m}; conditioned on the max, the remaining
    // factors are uniform in the disk of radius R.
    double lo = std::pow(r_lo, 2.0 * d), hi = std::pow(r_hi, 2.0 * d);
    double big = std::pow(lo + rng.next_double() * (hi - lo), 1.0 / (2.0 * d));
    auto argmax = static_cast<std::size_t>(
        std::min<double>(d - 1, rng.next_double() * d));
    CPoint z(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        if (static_cast<std::size_t>(j) == argmax) {
            z[j] = big * unit_phase(rng.next_double());
        } else {
            double r = big * std::sqrt(rng.next_double());
            z[j] = r * unit_phase(rng.next_double());
        }
    }
    return z;
}

double shell_volume(const DomainSpec& spec, double depth_lo, double depth_hi) {
    const int d = spec.ambient_dim();
    const double r_lo = 1.0 - depth_hi;
    const double r_hi = 1.0 - depth_lo;
    double frac = std::pow(r_hi, 2.0 * d) - std::pow(r_lo, 2.0 * d);
    return domains::volume(spec) * frac;
}

std::vector<CPoint> sample_uniform(const DomainSpec& spec, const McConfig& cfg) {
    std::vector<CPoint> pts;
    pts.reserve(cfg.samples);
    for (std::uint64_t i = 0; i < cfg.samples; ++i)
        pts.push_back(sample_point(spec, cfg.seed, stream::kUniform, i));
    return pts;
}

McEstimate integrate_weighted(const DomainSpec& spec, const WeightParams& wp,
                              const std::function<Complex(const CPoint&)>& f, const McConfig& cfg,
                              std::uint32_t stream_id) {
    const double vol = domains::volume(spec);
    return mc_estimate(cfg, vol, [&](std::uint64_t i) {
        CPoint u = sample_point(spec, cfg.seed, stream_id, i);
        Complex v = f(u) * std::exp(-wp.beta * domains::log_kernel_diag(spec, u));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("non-finite integrand value", u);
        return v;
    });
}

int Polynomial::total_degree() const {
    int deg = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (int p : t.powers) s += p;
        deg = std::max(deg, s);
    }
    return deg;
}

Complex Polynomial::eval(const CPoint& z) const {
    Complex acc(0.0, 0.0);
    for (const auto& t : terms) {
        Complex v = t.coeff;
        for (std::size_t j = 0; j < t.powers.size() && j < z.dim(); ++j)
            for (int k = 0; k < t.powers[j]; ++k) v *= z[j];
        acc += v;
    }
    return acc;
}

const char* verdict_str(IdentityReport::Verdict v) {
    switch (v) {
        case IdentityReport::Verdict::ConstantConsistent: return "constant-consistent";
        case IdentityReport::Verdict::Inconsistent: return "inconsistent";
        case IdentityReport::Verdict::DivergenceSuspected: return "divergence-suspected";
    }
    return "?";
}

McEstimate culsiegel_integral(const DomainSpec& spec, double alpha, double beta, const CPoint& z,
                              const McConfig& cfg) {
    domains::require_inside(spec, z, "probe point");
    const double e = 1.0 + 2.0 * beta - alpha;
    const double vol = domains::volume(spec);
    CPoint origin(z.dim());
    const double log_jm0 =
        std::log(std::abs(domains::mobius_from_origin(spec, z, origin).jac_det));
    // I(z) = Vol^{-(1+a)} |det J(m,0)|^{-(1+a)} * int h(u) dV(u)
    const double scale = std::exp(-(1.0 + alpha) * (std::log(vol) + log_jm0)) * vol;
    return mc_estimate(cfg, scale, [&](std::uint64_t i) {
        CPoint u = sample_point(spec, cfg.seed, stream::kCulSiegel, i);
        auto m = domains::mobius_from_origin(spec, z, u);
        double log_h = e * (domains::log_abs_cayley_jac(spec, m.image) +
                            std::log(std::abs(m.jac_det))) -
                       beta * domains::log_kernel_diag(spec, u);
        double h = std::exp(log_h);
        if (!std::isfinite(h)) throw EvaluationError("non-finite transported integrand", u);
        return Complex(h, 0.0);
    });
}

std::vector<CPoint> default_probes(const DomainSpec& spec) {
    const int d = spec.ambient_dim();
    const Complex scalars[] = {{0.0, 0.0}, {0.3, 0.0}, {0.0, 0.6}, {0.9, 0.0}, {0.99, 0.0}};
    double coord_scale =
        spec.kind == domains::DomainKind::UnitBall ? 1.0 / std::sqrt(static_cast<double>(d)) : 1.0;
    std::vector<CPoint> probes;
    for (Complex s : scalars) {
        CPoint p(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) p[j] = s * coord_scale;
        probes.push_back(std::move(p));
    }
    return probes;
}

namespace {

double culsiegel_log_normalizer(const DomainSpec& spec, double alpha, double beta,
                                const CPoint& z) {
    const double e = 1.0 + 2.0 * beta - alpha;
    return (alpha - beta) * domains::log_kernel_diag(spec, z) +
           e * domains::log_abs_cayley_jac(spec, z);
}

// Boundary-stratified direct estimate; returns (depth, partial sum) rows.
// On the disk each radial shell is additionally split into dyadic angle
// bins around the point where the half-plane map degenerates, which keeps
// the per-stratum integrand spread (and hence the Monte Carlo noise) small
// enough to read the growth trend.
std::vector<std::pair<double, double>> culsiegel_shell_sums(const DomainSpec& spec, double alpha,
                                                            double beta, const CPoint& z,
                                                            const McConfig& cfg) {
    const double e = 1.0 + 2.0 * beta - alpha;
    std::vector<std::pair<double, double>> bins;  // (depth lo, depth hi)
    bins.emplace_back(0.5, 1.0);
    double hi = 0.5;
    for (int k = 0; k < 13; ++k) {
        bins.emplace_back(hi / 2.0, hi);
        hi /= 2.0;
    }

    auto integrand = [&](const CPoint& u) {
        double log_v = (1.0 + alpha) * std::real(domains::log_kernel(spec, z, u)) +
                       e * domains::log_abs_cayley_jac(spec, u) -
                       beta * domains::log_kernel_diag(spec, u);
        return std::exp(log_v);
    };

    std::vector<std::pair<double, double>> rows;
    if (spec.kind == domains::DomainKind::UnitBall && spec.dim == 1) {
        constexpr int kAngleBins = 13;  // |theta| in pi*[2^-j-1, 2^-j], plus a cap
        std::uint64_t per_stratum = std::max<std::uint64_t>(
            200, cfg.samples / (bins.size() * (kAngleBins + 1)));
        std::uint32_t sub = 0;
        for (auto [dlo, dhi] : bins) {
            double r_lo = 1.0 - dhi, r_hi = std::min(1.0 - dlo, 1.0 - 1e-8);
            double r2_lo = r_lo * r_lo, r2_hi = r_hi * r_hi;
            double total = 0.0;
            for (int j = 0; j <= kAngleBins; ++j) {
                double t_hi = kPi * std::pow(2.0, -j);
                double t_lo = j == kAngleBins ? 0.0 : t_hi / 2.0;
                double area = 0.5 * (r2_hi - r2_lo) * 2.0 * (t_hi - t_lo);
                McConfig stratum_cfg = cfg.with_samples(per_stratum);
                McEstimate est = mc_estimate(stratum_cfg, area, [&](std::uint64_t i) {
                    SampleRng rng(cfg.seed, stream::kDivergence + sub, i);
                    double radius = std::sqrt(r2_lo + rng.next_double() * (r2_hi - r2_lo));
                    double theta = t_lo + rng.next_double() * (t_hi - t_lo);
                    if (rng.next_double() < 0.5) theta = -theta;
                    CPoint u{Complex(radius * std::cos(theta), radius * std::sin(theta))};
                    return Complex(integrand(u), 0.0);
                });
                total += est.real();
                ++sub;
            }
            rows.emplace_back(dhi, total);
        }
        return rows;
    }

    std::uint64_t per_bin = std::max<std::uint64_t>(1000, cfg.samples / bins.size());
    std::uint32_t sub = 0;
    for (auto [lo, bhi] : bins) {
        McConfig shell_cfg = cfg.with_samples(per_bin);
        double vol = shell_volume(spec, lo, bhi);
        McEstimate est = mc_estimate(shell_cfg, vol, [&, lo = lo, bhi = bhi](std::uint64_t i) {
            CPoint u = sample_point_shell(spec, cfg.seed, stream::kDivergence + sub, i, lo, bhi);
            return Complex(integrand(u), 0.0);
        });
        rows.emplace_back(bhi, est.real());
        ++sub;
    }
    return rows;
}

}  // namespace

IdentityReport verify_culsiegel(const DomainSpec& spec, double alpha, double beta,
                                const std::vector<CPoint>& probes, const McConfig& cfg,
                                bool divergence_probe) {
    const auto structure = domains::structure_of(spec);
    const double bmin = domains::beta_min(structure).to_double();
    const double bint = domains::beta_int(structure).to_double();
    if (!(beta > bmin))
        throw BetaOutOfRange("beta = " + std::to_string(beta) +
                                      " must exceed beta_min = " + std::to_string(bmin));
    if (!divergence_probe && !(alpha > beta + bint))
        throw ParameterOutOfRange(
            "the transported integral identity requires alpha > beta + beta_int; got alpha = " +
            std::to_string(alpha) + ", beta + beta_int = " + std::to_string(beta + bint) +
            " (pass the divergence-probe flag to study the out-of-range regime)");

    IdentityReport report;
    report.alpha = alpha;
    report.beta = beta;
    report.probe_points = probes;

    bool any_growth = false;
    for (const CPoint& z : probes) {
        double log_norm = culsiegel_log_normalizer(spec, alpha, beta, z);
        McEstimate ratio;
        if (divergence_probe) {
            auto rows = culsiegel_shell_sums(spec, alpha, beta, z, cfg);
            double total = 0.0;
            for (auto& [depth, sum] : rows) total += sum;
            ratio.value = Complex(total * std::exp(-log_norm), 0.0);
            ratio.samples = cfg.samples;
            ratio.seed = cfg.seed;
            report.shell_partial_sums.push_back(rows);
            // a convergent tail decays geometrically; compare the deepest
            // four partial sums against the previous four
            if (rows.size() >= 8) {
                double tail = 0.0, prev = 0.0;
                for (std::size_t i = rows.size() - 4; i < rows.size(); ++i) tail += rows[i].second;
                for (std::size_t i = rows.size() - 8; i < rows.size() - 4; ++i)
                    prev += rows[i].second;
                if (tail > prev) any_growth = true;
            }
        } else {
            McEstimate integral = culsiegel_integral(spec, alpha, beta, z, cfg);
            double n = std::exp(-log_norm);
            ratio = integral;
            ratio.value *= n;
            ratio.std_error *= n;
        }
        report.ratios.push_back(ratio);
    }

    double mean = 0.0;
    for (const auto& r : report.ratios) mean += r.real();
    mean /= static_cast<double>(report.ratios.size());
    double var = 0.0;
    for (const auto& r : report.ratios) {
        double dev = r.real() - mean;
        var += dev * dev;
    }
    var /= static_cast<double>(report.ratios.size());
    report.coefficient_of_variation = mean > 0.0 ? std::sqrt(var) / mean : INFINITY;

    if (any_growth)
        report.verdict = IdentityReport::Verdict::DivergenceSuspected;
    else if (report.coefficient_of_variation <= cfg.tolerance)
        report.verdict = IdentityReport::Verdict::ConstantConsistent;
    else
        report.verdict = IdentityReport::Verdict::Inconsistent;
    return report;
}

ReproducingCheck verify_reproducing(const DomainSpec& spec, const WeightParams& wp,
                                    const Polynomial& p, const CPoint& z, const McConfig& cfg) {
    if (p.total_degree() > 3)
        throw ParameterOutOfRange("reproducing check accepts total degree <= 3");
    domains::require_inside(spec, z, "evaluation point");
    ReproducingCheck out;
    out.estimate = integrate_weighted(
        spec, wp,
        [&](const CPoint& w) { return domains::weighted_kernel(spec, wp, z, w) * p.eval(w); }, cfg,
        stream::kReproducing);
    out.expected = p.eval(z);
    out.abs_deviation = std::abs(out.estimate.value - out.expected);
    return out;
}

LpNormCheck corollary_lp_norm(const DomainSpec& spec, double alpha, double beta, const CPoint& z,
                              const McConfig& cfg, double constant) {
    LpNormCheck out;
    out.norm_sq = culsiegel_integral(spec, alpha, beta, z, cfg);
    out.reference = constant * std::exp(culsiegel_log_normalizer(spec, alpha, beta, z));
    out.rel_deviation = out.reference != 0.0
                            ? std::abs(out.norm_sq.real() - out.reference) / out.reference
                            : INFINITY;
    return out;
}

}  // namespace bergman::mc
