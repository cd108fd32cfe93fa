#include "bergman/compop.hpp"

#include <algorithm>
#include <cmath>

namespace bergman::compop {

namespace {

// Per-sample integrands shared by the Carleson diagnostics. Index layout of
// the joint pass: 0 = mu~ , 1 = mu^(numerator), 2 = mu^(denominator), 3 = F.
struct CarlesonIntegrands {
    const DomainSpec& spec;
    const WeightParams& wp;
    const HoloMap& phi;
    const CPoint& z;
    double r;
    std::uint64_t seed;

    void fill(std::uint64_t i, std::vector<Complex>& out) const {
        CPoint u = mc::sample_point(spec, seed, mc::stream::kCarleson, i);
        CPoint w = phi.eval_checked(u);
        if (!domains::contains(spec, w))
            throw ImageOutsideDomain("map image left the domain", u, w);
        double weight = std::exp(-wp.beta * domains::log_kernel_diag(spec, u));
        double k2 = std::norm(domains::normalized_kernel(spec, wp, z, w));
        bool image_in = geometry::bergman_distance(spec, z, w) <= r;
        bool point_in = geometry::bergman_distance(spec, z, u) <= r;
        out[0] = Complex(k2 * weight, 0.0);
        out[1] = Complex(image_in ? weight : 0.0, 0.0);
        out[2] = Complex(point_in ? weight : 0.0, 0.0);
        out[3] = Complex(image_in ? k2 * weight : 0.0, 0.0);
    }
};

McEstimate ratio_estimate(const McEstimate& num, const McEstimate& den) {
    McEstimate out;
    out.samples = num.samples;
    out.seed = num.seed;
    double n = num.real(), d = den.real();
    if (n == 0.0) {
        out.value = Complex(0.0, 0.0);  // empty preimage mass
        return out;
    }
    if (d <= 0.0) {
        out.value = Complex(std::nan(""), 0.0);
        out.std_error = std::nan("");
        return out;
    }
    out.value = Complex(n / d, 0.0);
    double rel = std::sqrt((num.std_error / n) * (num.std_error / n) +
                           (den.std_error / d) * (den.std_error / d));
    out.std_error = std::abs(n / d) * rel;
    return out;
}

double shell_band_lo(double depth) { return 0.8 * depth; }
double shell_band_hi(double depth) { return std::min(1.25 * depth, 1.0); }

}  // namespace

SelfMapValidation validate_self_map(const DomainSpec& spec, const HoloMap& phi,
                                    const McConfig& cfg) {
    if (phi.arity() != spec.ambient_dim())
        throw ArityMismatch("map arity " + std::to_string(phi.arity()) + " does not match " +
                            spec.str());
    SelfMapValidation report;
    report.note =
        "sampling evidence only: the images of finitely many interior points were "
        "checked; this does not prove that the map sends the domain into itself";

    auto check = [&](const CPoint& u) -> bool {
        CPoint w;
        try {
            w = phi.eval_checked(u);
        } catch (const EvaluationError&) {
            report.witness = u;
            return false;
        }
        ++report.samples_checked;
        if (!domains::contains(spec, w)) {
            report.witness = u;
            report.witness_image = w;
            return false;
        }
        return true;
    };

    std::uint64_t bulk = std::max<std::uint64_t>(cfg.samples, 1000);
    for (std::uint64_t i = 0; i < bulk; ++i)
        if (!check(mc::sample_point(spec, cfg.seed, mc::stream::kValidate, i))) return report;
    const double shell_depths[] = {0.1, 0.01, 1e-3, 1e-4};
    std::uint64_t per_shell = std::max<std::uint64_t>(bulk / 10, 200);
    std::uint32_t sub = 1;
    for (double depth : shell_depths) {
        for (std::uint64_t i = 0; i < per_shell; ++i) {
            CPoint u = mc::sample_point_shell(spec, cfg.seed, mc::stream::kValidate + sub, i,
                                              shell_band_lo(depth), shell_band_hi(depth));
            if (!check(u)) return report;
        }
        ++sub;
    }
    report.passed = true;
    return report;
}

double kernel_ratio(const DomainSpec& spec, const HoloMap& phi, const CPoint& z) {
    domains::require_inside(spec, z, "point");
    CPoint w = phi.eval_checked(z);
    if (!domains::contains(spec, w))
        throw ImageOutsideDomain("kernel ratio needs the image inside the domain", z, w);
    return std::exp(domains::log_kernel_diag(spec, w) - domains::log_kernel_diag(spec, z));
}

std::vector<double> default_shell_depths(int count, double deepest) {
    if (count < 2) count = 2;
    std::vector<double> depths(count);
    double top = 0.5;
    for (int j = 0; j < count; ++j)
        depths[j] = top * std::pow(deepest / top, static_cast<double>(j) / (count - 1));
    return depths;
}

SupRatioEstimate boundedness_bound(const DomainSpec& spec, const HoloMap& phi,
                                   const std::vector<double>& depths, const McConfig& cfg) {
    SupRatioEstimate out;
    auto scan = [&](double lo, double hi, std::uint32_t sub) {
        double best = 0.0;
        for (std::uint64_t i = 0; i < cfg.samples; ++i) {
            CPoint z = mc::sample_point_shell(spec, cfg.seed, mc::stream::kShellScan + sub, i, lo, hi);
            best = std::max(best, kernel_ratio(spec, phi, z));
        }
        return best;
    };
    // core stratum: the supremum can sit well inside the domain
    out.sup = scan(0.5, 1.0, 0);
    std::uint32_t sub = 1;
    for (double depth : depths) {
        double m = scan(shell_band_lo(depth), shell_band_hi(depth), sub++);
        out.shell_max.emplace_back(depth, m);
        out.sup = std::max(out.sup, m);
    }
    auto k = out.shell_max.size();
    if (k >= 3) {
        double m0 = out.shell_max[k - 3].second;
        double m1 = out.shell_max[k - 2].second;
        double m2 = out.shell_max[k - 1].second;
        out.growth_suspected = m0 < m1 && m1 < m2 && m2 > 4.0 * m0;
    }
    return out;
}

AdjointCheck adjoint_norm_check(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                                const CPoint& z, const McConfig& cfg) {
    domains::require_inside(spec, z, "point");
    CPoint a = phi.eval_checked(z);
    if (!domains::contains(spec, a))
        throw ImageOutsideDomain("adjoint check needs the image inside the domain", z, a);
    AdjointCheck out;
    // integrand |K^{(b)}(w,a)|^2 / K^{(b)}(z,z) = c_b exp(2(1+b) Re log K(w,a) - (1+b) log K(z,z))
    const double log_offset =
        std::log(wp.c_beta) - (1.0 + wp.beta) * domains::log_kernel_diag(spec, z);
    out.mc_side = mc::integrate_weighted(
        spec, wp,
        [&](const CPoint& w) {
            double v = std::exp(2.0 * (1.0 + wp.beta) * std::real(domains::log_kernel(spec, w, a)) +
                                log_offset);
            return Complex(v, 0.0);
        },
        cfg, mc::stream::kAdjoint);
    out.closed_side = std::exp((1.0 + wp.beta) * (domains::log_kernel_diag(spec, a) -
                                                  domains::log_kernel_diag(spec, z)));
    out.rel_deviation = std::abs(out.mc_side.real() - out.closed_side) / out.closed_side;
    return out;
}

McEstimate berezin_pullback(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                            const CPoint& z, const McConfig& cfg) {
    domains::require_inside(spec, z, "point");
    return mc::integrate_weighted(
        spec, wp,
        [&](const CPoint& u) {
            CPoint w = phi.eval_checked(u);
            if (!domains::contains(spec, w))
                throw ImageOutsideDomain("map image left the domain", u, w);
            return Complex(std::norm(domains::normalized_kernel(spec, wp, z, w)), 0.0);
        },
        cfg, mc::stream::kCarleson);
}

McEstimate averaging_pullback(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                              const CPoint& z, double r, const McConfig& cfg) {
    return carleson_at(spec, wp, phi, z, r, cfg).mu_hat;
}

McEstimate f_r_beta(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                    const CPoint& z, double r, const McConfig& cfg) {
    domains::require_inside(spec, z, "point");
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be positive");
    return mc::integrate_weighted(
        spec, wp,
        [&](const CPoint& u) {
            CPoint w = phi.eval_checked(u);
            if (!domains::contains(spec, w))
                throw ImageOutsideDomain("map image left the domain", u, w);
            if (geometry::bergman_distance(spec, z, w) > r) return Complex(0.0, 0.0);
            return Complex(std::norm(domains::normalized_kernel(spec, wp, z, w)), 0.0);
        },
        cfg, mc::stream::kCarleson);
}

CarlesonPoint carleson_at(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                          const CPoint& z, double r, const McConfig& cfg) {
    domains::require_inside(spec, z, "point");
    if (!(r > 0.0)) throw ParameterOutOfRange("radius must be positive");
    CarlesonPoint out;
    out.z = z;
    double max_factor = 0.0;
    if (spec.kind == domains::DomainKind::UnitBall) {
        max_factor = std::sqrt(z.norm_sq());
    } else {
        for (const auto& c : z.coords) max_factor = std::max(max_factor, std::abs(c));
    }
    out.depth = 1.0 - max_factor;

    CarlesonIntegrands integrands{spec, wp, phi, z, r, cfg.seed};
    double vol = domains::volume(spec);
    auto parts = mc::mc_estimate_vec(cfg, {vol, vol, vol, vol},
                                     [&](std::uint64_t i, std::vector<Complex>& vals) {
                                         integrands.fill(i, vals);
                                     });
    out.mu_tilde = parts[0];
    out.mu_hat = ratio_estimate(parts[1], parts[2]);
    out.f_r = parts[3];
    return out;
}

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::CompactConsistent: return "compact-consistent";
        case Verdict::NotCompact: return "not-compact";
        case Verdict::BoundedOnly: return "bounded-only";
        case Verdict::UnboundedSuspected: return "unbounded-suspected";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

DiagnosticsReport diagnose(const DomainSpec& spec, const HoloMap& phi, double beta0, double beta,
                           const std::vector<double>& depths, double r, const McConfig& cfg,
                           const DiagnosticsThresholds& th, std::uint64_t profile_samples,
                           int profile_points) {
    const auto structure = domains::structure_of(spec);
    const double bmin = domains::beta_min(structure).to_double();
    const double bint = domains::beta_int(structure).to_double();
    if (!(beta0 > bmin))
        throw BetaOutOfRange("beta0 = " + std::to_string(beta0) +
                                      " must exceed beta_min = " + std::to_string(bmin));
    DiagnosticsReport report;
    report.beta0 = beta0;
    report.beta = beta;
    if (!(beta > beta0 + bint)) {
        if (beta >= beta0) {
            report.warnings.push_back(
                "beta <= beta0 + beta_int: the boundary criterion is reported, but only "
                "boundedness/compactness transfer from beta0 is guaranteed at this weight");
        } else {
            throw ParameterOutOfRange("invalid parameter ordering: beta must be >= beta0");
        }
    }

    auto validation =
        validate_self_map(spec, phi, cfg.with_samples(std::min<std::uint64_t>(cfg.samples, 20000)));
    if (!validation.passed) {
        CPoint pre = validation.witness.value_or(CPoint(spec.ambient_dim()));
        CPoint img = validation.witness_image.value_or(CPoint(spec.ambient_dim()));
        throw ImageOutsideDomain("self-map validation failed", pre, img);
    }

    auto bound = boundedness_bound(spec, phi, depths, cfg);
    report.sup_ratio = bound.sup;

    WeightParams wp = WeightParams::make(spec, beta);
    McConfig profile_cfg = cfg.with_samples(profile_samples);
    for (std::size_t s = 0; s < depths.size(); ++s) {
        ShellStats stats;
        stats.depth = depths[s];
        stats.max_ratio = bound.shell_max[s].second;
        double sum_hat = 0.0, sum_tilde = 0.0, sum_f = 0.0;
        int hat_count = 0;
        for (int t = 0; t < profile_points; ++t) {
            CPoint z = mc::sample_point_shell(spec, cfg.seed + 1, mc::stream::kShellScan,
                                              s * static_cast<std::uint64_t>(profile_points) + t,
                                              shell_band_lo(depths[s]), shell_band_hi(depths[s]));
            auto pt = carleson_at(spec, wp, phi, z, r, profile_cfg);
            sum_tilde += pt.mu_tilde.real();
            sum_f += pt.f_r.real();
            if (std::isfinite(pt.mu_hat.real())) {
                sum_hat += pt.mu_hat.real();
                ++hat_count;
            }
        }
        stats.mean_mu_tilde = sum_tilde / profile_points;
        stats.mean_f = sum_f / profile_points;
        stats.mean_mu_hat = hat_count > 0 ? sum_hat / hat_count : std::nan("");
        report.shell_profile.push_back(stats);
    }

    // verdict from the ratio trend along the shells (deepest last)
    std::vector<double> m;
    for (const auto& s : report.shell_profile) m.push_back(s.max_ratio);
    const std::size_t k = m.size();
    const double last = m.back();
    bool monotone = true;
    for (std::size_t j = 0; j + 1 < k; ++j)
        if (m[j + 1] > m[j] * th.decay_slack) monotone = false;
    bool stable_tail = false;
    if (k >= 2) {
        double a = std::max(m[k - 1], m[k - 2]), b = std::min(m[k - 1], m[k - 2]);
        stable_tail = b > 0.0 && a / b <= th.stable_factor;
    }
    if (bound.growth_suspected)
        report.verdict = Verdict::UnboundedSuspected;
    else if (last >= th.theta_hi)
        report.verdict = stable_tail ? Verdict::NotCompact : Verdict::Inconclusive;
    else if (monotone && last < th.theta_lo)
        report.verdict = Verdict::CompactConsistent;
    else if (last >= th.theta_lo)
        report.verdict = Verdict::BoundedOnly;
    else
        report.verdict = Verdict::Inconclusive;
    return report;
}

CarlesonProfile carleson_profile(const DomainSpec& spec, const WeightParams& wp,
                                 const HoloMap& phi, double r, const std::vector<double>& depths,
                                 int points_per_shell, const McConfig& cfg) {
    CarlesonProfile out;
    for (std::size_t s = 0; s < depths.size(); ++s) {
        ShellAggregate agg;
        agg.depth = depths[s];
        double sum_tilde = 0.0, sum_hat = 0.0, sum_f = 0.0;
        int hat_count = 0;
        for (int t = 0; t < points_per_shell; ++t) {
            CPoint z = mc::sample_point_shell(spec, cfg.seed + 1, mc::stream::kShellScan,
                                              s * static_cast<std::uint64_t>(points_per_shell) + t,
                                              shell_band_lo(depths[s]), shell_band_hi(depths[s]));
            auto pt = carleson_at(spec, wp, phi, z, r, cfg);
            sum_tilde += pt.mu_tilde.real();
            sum_f += pt.f_r.real();
            if (std::isfinite(pt.mu_hat.real())) {
                sum_hat += pt.mu_hat.real();
                ++hat_count;
                if (pt.mu_tilde.real() > 0.0)
                    agg.fitted_c = std::max(agg.fitted_c, pt.mu_hat.real() / pt.mu_tilde.real());
            }
            out.points.push_back(std::move(pt));
        }
        agg.mean_mu_tilde = sum_tilde / points_per_shell;
        agg.mean_f = sum_f / points_per_shell;
        agg.mean_mu_hat = hat_count > 0 ? sum_hat / hat_count : std::nan("");
        out.shells.push_back(agg);
    }
    return out;
}

}  // namespace bergman::compop
