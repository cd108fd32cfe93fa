#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/holomap.hpp"
#include "bergman/mc.hpp"

namespace bergman::compop {

using domains::DomainSpec;
using domains::WeightParams;
using mc::McConfig;
using mc::McEstimate;

struct SelfMapValidation {
    bool passed = false;
    std::uint64_t samples_checked = 0;
    std::optional<CPoint> witness;        // preimage whose image escaped
    std::optional<CPoint> witness_image;  // the offending image (if finite)
    std::string note;                     // sampling-evidence disclaimer
};

/// Evaluates the map on uniform samples plus boundary-shell samples and
/// checks that every image stays strictly inside. Sampling evidence, not a
/// proof; the note says so.
SelfMapValidation validate_self_map(const DomainSpec& spec, const HoloMap& phi,
                                    const McConfig& cfg);

/// K(phi(z), phi(z)) / K(z, z). Throws ImageOutsideDomain if phi(z) escapes.
double kernel_ratio(const DomainSpec& spec, const HoloMap& phi, const CPoint& z);

/// Geometric ladder of shell depths from 0.5 down to `deepest`.
std::vector<double> default_shell_depths(int count = 8, double deepest = 1e-4);

struct SupRatioEstimate {
    double sup = 0.0;  // includes a core stratum, not only the boundary shells
    std::vector<std::pair<double, double>> shell_max;  // (depth, max ratio on shell)
    bool growth_suspected = false;
};

/// Stratified maximum of the kernel ratio. A finite stable value is
/// necessary-condition evidence for boundedness; maxima that keep growing
/// toward the boundary set growth_suspected.
SupRatioEstimate boundedness_bound(const DomainSpec& spec, const HoloMap& phi,
                                   const std::vector<double>& depths, const McConfig& cfg);

struct AdjointCheck {
    McEstimate mc_side;        // int |K^{(b)}(w, phi(z))|^2 dV_b(w) / K^{(b)}(z,z)
    double closed_side = 0.0;  // (K(phi(z),phi(z)) / K(z,z))^{1+beta}
    double rel_deviation = 0.0;
};

/// The adjoint sends the unit kernel element at z to a kernel element at
/// phi(z); its squared norm has the closed ratio form that the Monte Carlo
/// side must reproduce.
AdjointCheck adjoint_norm_check(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                                const CPoint& z, const McConfig& cfg);

/// Berezin symbol of the pull-back measure:
/// mu~(z) = int |k_z^{(b)}(phi(u))|^2 dV_b(u).
McEstimate berezin_pullback(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                            const CPoint& z, const McConfig& cfg);

/// Averaging function mu^(z) = mu(B(z,r)) / Vol_b(B(z,r)). Numerator and
/// denominator share one sample stream, so the identity map gives exactly 1
/// and an empty preimage mass gives exactly 0.
McEstimate averaging_pullback(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                              const CPoint& z, double r, const McConfig& cfg);

/// F_{r,b}(z) = int_{B(z,r)} |k_z^{(b)}|^2 d(pull-back measure); shares the
/// sample stream of berezin_pullback, so F <= mu~ holds sample by sample.
McEstimate f_r_beta(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                    const CPoint& z, double r, const McConfig& cfg);

struct CarlesonPoint {
    CPoint z;
    double depth = 0.0;
    McEstimate mu_tilde;
    McEstimate mu_hat;
    McEstimate f_r;
};

/// One-pass evaluation of all three diagnostics at a point.
CarlesonPoint carleson_at(const DomainSpec& spec, const WeightParams& wp, const HoloMap& phi,
                          const CPoint& z, double r, const McConfig& cfg);

enum class Verdict { CompactConsistent, NotCompact, BoundedOnly, UnboundedSuspected, Inconclusive };
const char* verdict_str(Verdict v);

struct ShellStats {
    double depth = 0.0;
    double max_ratio = 0.0;
    double mean_mu_hat = 0.0;
    double mean_mu_tilde = 0.0;
    double mean_f = 0.0;
};

/// Heuristic decision thresholds; configurable, defaults documented in the
/// CLI help.
struct DiagnosticsThresholds {
    double theta_lo = 0.05;     // deepest-shell ratio below this + monotone decay => compact-consistent
    double theta_hi = 0.5;      // deepest-shell ratio at/above this, stable => not-compact
    double growth_factor = 4.0; // monotone growth beyond this across the deepest shells => unbounded-suspected
    double decay_slack = 1.1;   // tolerated wobble when requiring monotone decay
    double stable_factor = 2.0; // deepest two maxima within this factor count as stable
};

struct DiagnosticsReport {
    double beta0 = 0.0;
    double beta = 0.0;
    double sup_ratio = 0.0;
    std::vector<ShellStats> shell_profile;  // depths strictly decreasing toward 0
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> warnings;
};

/// Full boundary diagnosis. Requires beta0 > beta_min; beta below
/// beta0 + beta_int is allowed with a warning as long as beta >= beta0
/// (boundedness/compactness still transfer upward), anything below beta0 is
/// rejected. Shell statistics use profile_samples per point.
DiagnosticsReport diagnose(const DomainSpec& spec, const HoloMap& phi, double beta0, double beta,
                           const std::vector<double>& depths, double r, const McConfig& cfg,
                           const DiagnosticsThresholds& th = {},
                           std::uint64_t profile_samples = 20000, int profile_points = 3);

struct ShellAggregate {
    double depth = 0.0;
    double mean_mu_tilde = 0.0;
    double mean_mu_hat = 0.0;
    double mean_f = 0.0;
    double fitted_c = 0.0;  // max over points of mu^ / mu~ (the existential comparison constant)
};

struct CarlesonProfile {
    std::vector<CarlesonPoint> points;
    std::vector<ShellAggregate> shells;
};

CarlesonProfile carleson_profile(const DomainSpec& spec, const WeightParams& wp,
                                 const HoloMap& phi, double r, const std::vector<double>& depths,
                                 int points_per_shell, const McConfig& cfg);

}  // namespace bergman::compop
