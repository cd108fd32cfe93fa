#pragma once

#include <functional>
#include <vector>

#include "bergman/domain.hpp"
#include "bergman/mc_types.hpp"

namespace bergman::geometry {

using domains::DomainSpec;
using domains::WeightParams;

/// Ball in the Bergman distance.
struct MetricBall {
    CPoint center;
    double radius = 1.0;
};

struct WholeDomain {};

struct VolumeEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// Hermitian tensor g_{i jbar} = d^2 log K(z,z) / dz_i dzbar_j as a dense
/// row-major matrix. Disk factor: 2/(1-|z|^2)^2.
std::vector<std::vector<Complex>> metric_tensor(const DomainSpec& spec, const CPoint& z);

/// Distance of the metric above. Disk: sqrt(2) artanh |(z-w)/(1-zbar w)|;
/// ball: sqrt(d+1) artanh |psi_z(w)|; polydisk: l2 combination of the
/// factor distances (product-metric geodesics).
double bergman_distance(const DomainSpec& spec, const CPoint& z, const CPoint& w);

bool in_metric_ball(const DomainSpec& spec, const MetricBall& ball, const CPoint& w);

/// Euclidean radius of the transported parameter ball: membership in
/// B(a, r) is exactly |u| <= tanh(r/sqrt(d+1)) after moving a to 0.
double transport_radius(const DomainSpec& spec, double metric_radius);

/// Integrates f over a metric ball against dV_beta. Samples the Euclidean
/// parameter region exactly (Moebius transport); the polydisk additionally
/// rejects by the exact product distance, which the parameter moduli give
/// in closed form.
mc::McEstimate integrate_over_ball(const DomainSpec& spec, const WeightParams& wp,
                                   const MetricBall& ball,
                                   const std::function<Complex(const CPoint&)>& f,
                                   const mc::McConfig& cfg, std::uint32_t stream = 2);

VolumeEstimate vol_beta(const DomainSpec& spec, const WeightParams& wp, const MetricBall& ball,
                        const mc::McConfig& cfg);
VolumeEstimate vol_beta(const DomainSpec& spec, const WeightParams& wp, WholeDomain,
                        const mc::McConfig& cfg);

}  // namespace bergman::geometry
