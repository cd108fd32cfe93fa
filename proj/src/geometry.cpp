#include "bergman/geometry.hpp"

#include <cmath>

#include "bergman/mc.hpp"
#include "bergman/rng.hpp"

namespace bergman::geometry {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

// artanh of the Moebius pseudo-distance, computed from the manifestly
// symmetric quantity s = (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2 = 1 - t^2. The
// direct |psi_z(w)| route loses symmetry to rounding near the boundary.
double atanh_pseudo(double one_minus_z2, double one_minus_w2, double cross_norm_sq) {
    double s = one_minus_z2 * one_minus_w2 / cross_norm_sq;
    if (s >= 1.0) return 0.0;
    double t = std::sqrt(1.0 - s);
    return 0.5 * std::log((1.0 + t) * (1.0 + t) / s);
}

// Euclidean volume of a radius-rho ball in C^d.
double euclid_ball_volume(int d, double rho) {
    return std::pow(kPi, d) / std::tgamma(d + 1.0) * std::pow(rho, 2.0 * d);
}

CPoint euclid_ball_point(int d, double rho, SampleRng& rng) {
    CPoint u(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (int j = 0; j < d; ++j) {
        u[j] = Complex(rng.next_gaussian(), rng.next_gaussian());
        n2 += std::norm(u[j]);
    }
    double r = rho * std::pow(rng.next_double(), 1.0 / (2.0 * d));
    double scale = r / std::sqrt(n2);
    for (int j = 0; j < d; ++j) u[j] *= scale;
    return u;
}

}  // namespace

std::vector<std::vector<Complex>> metric_tensor(const DomainSpec& spec, const CPoint& z) {
    if (!spec.metric_evaluable())
        throw KernelUnavailable("domain '" + spec.str() + "' has no evaluable metric");
    domains::require_inside(spec, z, "point");
    const std::size_t d = z.dim();
    std::vector<std::vector<Complex>> g(d, std::vector<Complex>(d, Complex(0.0, 0.0)));
    if (spec.kind == domains::DomainKind::UnitBall) {
        double one_minus = 1.0 - z.norm_sq();
        double denom = one_minus * one_minus;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Complex v = std::conj(z[i]) * z[j];
                if (i == j) v += one_minus;
                g[i][j] = static_cast<double>(d + 1) * v / denom;
            }
        return g;
    }
    for (std::size_t j = 0; j < d; ++j) {
        double one_minus = 1.0 - std::norm(z[j]);
        g[j][j] = Complex(2.0 / (one_minus * one_minus), 0.0);
    }
    return g;
}

double bergman_distance(const DomainSpec& spec, const CPoint& z, const CPoint& w) {
    if (!spec.metric_evaluable())
        throw KernelUnavailable("domain '" + spec.str() + "' has no evaluable metric");
    domains::require_inside(spec, z, "point");
    domains::require_inside(spec, w, "point");
    if (spec.kind == domains::DomainKind::UnitBall) {
        double a = atanh_pseudo(1.0 - z.norm_sq(), 1.0 - w.norm_sq(),
                                std::norm(Complex(1.0, 0.0) - domains::herm_inner(z, w)));
        return std::sqrt(static_cast<double>(spec.dim + 1)) * a;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < z.dim(); ++j) {
        double a = atanh_pseudo(1.0 - std::norm(z[j]), 1.0 - std::norm(w[j]),
                                std::norm(Complex(1.0, 0.0) - z[j] * std::conj(w[j])));
        acc += 2.0 * a * a;
    }
    return std::sqrt(acc);
}

bool in_metric_ball(const DomainSpec& spec, const MetricBall& ball, const CPoint& w) {
    if (!(ball.radius > 0.0)) throw ParameterOutOfRange("metric ball radius must be positive");
    return bergman_distance(spec, ball.center, w) <= ball.radius;
}

double transport_radius(const DomainSpec& spec, double metric_radius) {
    double factor_dim =
        spec.kind == domains::DomainKind::UnitBall ? static_cast<double>(spec.dim + 1) : 2.0;
    return std::tanh(metric_radius / std::sqrt(factor_dim));
}

mc::McEstimate integrate_over_ball(const DomainSpec& spec, const WeightParams& wp,
                                   const MetricBall& ball,
                                   const std::function<Complex(const CPoint&)>& f,
                                   const mc::McConfig& cfg, std::uint32_t stream_id) {
    domains::require_inside(spec, ball.center, "ball center");
    if (!(ball.radius > 0.0)) throw ParameterOutOfRange("metric ball radius must be positive");
    const int d = spec.dim;
    const double rho = transport_radius(spec, ball.radius);
    const double r2 = ball.radius * ball.radius;

    if (spec.kind == domains::DomainKind::UnitBall) {
        // B(a, r) is exactly the transported Euclidean ball; no rejection.
        double region = euclid_ball_volume(d, rho);
        return mc::mc_estimate(cfg, region, [&](std::uint64_t i) {
            SampleRng rng(cfg.seed, stream_id, i);
            CPoint u = euclid_ball_point(d, rho, rng);
            auto m = domains::mobius_from_origin(spec, ball.center, u);
            Complex v = f(m.image) * std::norm(m.jac_det) *
                        std::exp(-wp.beta * domains::log_kernel_diag(spec, m.image));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw EvaluationError("non-finite ball integrand", m.image);
            return v;
        });
    }

    // Product of transported factor disks bounds B(a, r); the factor moduli
    // give the exact product distance, which decides acceptance.
    double region = std::pow(kPi * rho * rho, d);
    return mc::mc_estimate(cfg, region, [&](std::uint64_t i) {
        SampleRng rng(cfg.seed, stream_id, i);
        CPoint u(static_cast<std::size_t>(d));
        double dist2 = 0.0;
        for (int j = 0; j < d; ++j) {
            double r = rho * std::sqrt(rng.next_double());
            double t = 2.0 * kPi * rng.next_double();
            u[j] = Complex(r * std::cos(t), r * std::sin(t));
            double dj = kSqrt2 * std::atanh(r);
            dist2 += dj * dj;
        }
        if (dist2 > r2) return Complex(0.0, 0.0);
        auto m = domains::mobius_from_origin(spec, ball.center, u);
        Complex v = f(m.image) * std::norm(m.jac_det) *
                    std::exp(-wp.beta * domains::log_kernel_diag(spec, m.image));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvaluationError("non-finite ball integrand", m.image);
        return v;
    });
}

VolumeEstimate vol_beta(const DomainSpec& spec, const WeightParams& wp, const MetricBall& ball,
                        const mc::McConfig& cfg) {
    auto est = integrate_over_ball(
        spec, wp, ball, [](const CPoint&) { return Complex(1.0, 0.0); }, cfg);
    return VolumeEstimate{est.real(), est.std_error, est.samples};
}

VolumeEstimate vol_beta(const DomainSpec& spec, const WeightParams& wp, WholeDomain,
                        const mc::McConfig& cfg) {
    auto est = mc::integrate_weighted(
        spec, wp, [](const CPoint&) { return Complex(1.0, 0.0); }, cfg, mc::stream::kBallVolume);
    return VolumeEstimate{est.real(), est.std_error, est.samples};
}

}  // namespace bergman::geometry
