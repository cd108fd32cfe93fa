#pragma once

#include <string>

#include "bergman/errors.hpp"
#include "bergman/point.hpp"
#include "bergman/siegel.hpp"

namespace bergman::domains {

enum class DomainKind {
    UnitBall,               // B^d
    Polydisk,               // D^m
    SymmetricConstants,     // bounded symmetric domain, structure data only
    VinbergRepresentative,  // representative domain of the Vinberg-cone tube, structure data only
};

/// A supported domain together with its capability flags. The two
/// constants-only families answer structure queries but refuse kernel,
/// metric and sampling requests.
struct DomainSpec {
    DomainKind kind = DomainKind::UnitBall;
    int dim = 1;   // ball dimension d / polydisk factor count m
    int rank = 1;  // symmetric-domain rank r
    int a = 0;     // symmetric-domain multiplicities
    int b = 0;

    static DomainSpec unit_ball(int d);
    static DomainSpec polydisk(int m);
    static DomainSpec symmetric(int r, int a, int b);
    static DomainSpec vinberg();

    /// CLI form: "ball:<d>", "polydisk:<m>", "symmetric:r=<r>,a=<a>,b=<b>", "vinberg".
    static DomainSpec parse(const std::string& text);
    std::string str() const;

    bool kernel_evaluable() const {
        return kind == DomainKind::UnitBall || kind == DomainKind::Polydisk;
    }
    bool metric_evaluable() const { return kernel_evaluable(); }
    bool samplable() const { return kernel_evaluable(); }

    /// Dimension of the ambient C^d; only defined for evaluable domains.
    int ambient_dim() const;
};

/// Structure data of the Siegel realization for every supported family.
SiegelStructure structure_of(const DomainSpec& spec);

/// Strict interior margin: |z| < 1 - kInteriorMargin per factor keeps the
/// kernel away from its boundary blow-up.
inline constexpr double kInteriorMargin = 1e-12;

bool contains(const DomainSpec& spec, const CPoint& z, double margin = kInteriorMargin);
void require_inside(const DomainSpec& spec, const CPoint& z, const char* what);

/// Lebesgue volume: pi^d/d! for the ball, pi^m for the polydisk.
double volume(const DomainSpec& spec);

/// sum_j z_j * conj(w_j)
Complex herm_inner(const CPoint& z, const CPoint& w);

/// log K(z,w) with the principal branch taken factor by factor; the factor
/// bases 1 - <z,w> stay in the right half plane, so this is continuous.
Complex log_kernel(const DomainSpec& spec, const CPoint& z, const CPoint& w);
Complex kernel(const DomainSpec& spec, const CPoint& z, const CPoint& w);

/// log K(z,z), real.
double log_kernel_diag(const DomainSpec& spec, const CPoint& z);

/// Normalizing constant of the weighted kernel, Vol(U)^{1+beta} / Vol_beta(U),
/// in closed form: (2 beta + 1)^m on the polydisk and a Gamma ratio on the
/// ball. The Monte Carlo volume estimate is kept as an independent check in
/// the test suites.
double c_beta(const DomainSpec& spec, double beta);

/// Closed-form Vol_beta(U) = Vol(U)^{1+beta} / C_beta.
double volume_beta_closed(const DomainSpec& spec, double beta);

struct WeightParams {
    double beta = 0.0;
    double c_beta = 1.0;

    /// Validates beta > beta_min(spec) and fills in the constant.
    static WeightParams make(const DomainSpec& spec, double beta);
};

/// C_beta * K(z,w)^{1+beta}, principal powers on the factor bases.
Complex weighted_kernel(const DomainSpec& spec, const WeightParams& wp, const CPoint& z,
                        const CPoint& w);

/// k_z^{(beta)}(w) = K^{(beta)}(w,z) / sqrt(K^{(beta)}(z,z)); unit norm in L^2(dV_beta).
Complex normalized_kernel(const DomainSpec& spec, const WeightParams& wp, const CPoint& z,
                          const CPoint& w);

struct MapImage {
    CPoint image;
    Complex jac_det;
};

/// Biholomorphism onto the Siegel realization. Disk factor:
/// w = i(1+z)/(1-z) with derivative 2i/(1-z)^2; ball: (i(1+z1)/(1-z1),
/// z'/(1-z1)) onto { Im xi > |eta|^2 } with determinant 2i/(1-z1)^{d+1}.
MapImage cayley(const DomainSpec& spec, const CPoint& z);

/// log |det J(Phi, z)| without forming the possibly huge determinant.
double log_abs_cayley_jac(const DomainSpec& spec, const CPoint& z);

/// Moebius automorphism of the ball sending a to 0 (identity when a = 0);
/// on the disk (z - a)/(1 - conj(a) z). Its inverse sends 0 to a and -a to 0.
MapImage ball_automorphism(const CPoint& a, const CPoint& z);

/// Inverse transport: the automorphism taking 0 to a, evaluated at u.
/// For the polydisk this acts factor by factor. Used by the metric-ball
/// sampler and the boundary-stable integrators.
MapImage mobius_from_origin(const DomainSpec& spec, const CPoint& a, const CPoint& u);

}  // namespace bergman::domains
