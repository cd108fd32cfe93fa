#pragma once

// Independent oracles used by the test suites: a power-series route to the
// disk kernel, finite-difference Jacobians and metric tensors, a
// geodesic-integration route to the distance, and closed-form hyperbolic
// disk geometry. These deliberately avoid the code paths they check.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <json.hpp>

#include "bergman/domain.hpp"
#include "bergman/geometry.hpp"

namespace oracle {

using bergman::Complex;
using bergman::CPoint;

inline constexpr double kPi = 3.14159265358979323846;

/// Disk kernel via its eigenfunction series sum_k (k+1) (z wbar)^k / pi.
inline Complex disk_kernel_series(Complex z, Complex w) {
    Complex q = z * std::conj(w);
    Complex acc(0.0, 0.0);
    Complex pw(1.0, 0.0);
    for (int k = 0; k < 400; ++k) {
        acc += static_cast<double>(k + 1) * pw;
        pw *= q;
    }
    return acc / kPi;
}

/// Complex Jacobian matrix by central differences along real axes
/// (holomorphic maps: d/dx = derivative).
inline std::vector<std::vector<Complex>> numeric_jacobian(
    const std::function<CPoint(const CPoint&)>& f, const CPoint& z, double h = 1e-6) {
    std::size_t d = z.dim();
    std::vector<std::vector<Complex>> jac(d, std::vector<Complex>(d));
    for (std::size_t j = 0; j < d; ++j) {
        CPoint zp = z, zm = z;
        zp[j] += h;
        zm[j] -= h;
        CPoint fp = f(zp), fm = f(zm);
        for (std::size_t i = 0; i < d; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
    return jac;
}

/// Determinant by Gaussian elimination with partial pivoting (small d).
inline Complex det(std::vector<std::vector<Complex>> m) {
    std::size_t n = m.size();
    Complex result(1.0, 0.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            result = -result;
        }
        if (std::abs(m[col][col]) == 0.0) return Complex(0.0, 0.0);
        result *= m[col][col];
        for (std::size_t row = col + 1; row < n; ++row) {
            Complex factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
        }
    }
    return result;
}

/// Hermitian tensor of log K(z,z) by second central differences in the
/// underlying real coordinates: d^2/dz_i dzbar_j = ((f_xx + f_yy) + i (f_xy - f_yx))/4.
inline std::vector<std::vector<Complex>> numeric_metric_tensor(
    const bergman::domains::DomainSpec& spec, const CPoint& z, double h = 1e-4) {
    using bergman::domains::log_kernel_diag;
    std::size_t d = z.dim();
    auto eval = [&](const CPoint& p) { return log_kernel_diag(spec, p); };
    auto bump = [&](const CPoint& p, std::size_t axis, double dh) {
        CPoint q = p;
        std::size_t j = axis / 2;
        q[j] += axis % 2 == 0 ? Complex(dh, 0.0) : Complex(0.0, dh);
        return q;
    };
    auto second = [&](std::size_t a, std::size_t b) {
        double fpp = eval(bump(bump(z, a, h), b, h));
        double fpm = eval(bump(bump(z, a, h), b, -h));
        double fmp = eval(bump(bump(z, a, -h), b, h));
        double fmm = eval(bump(bump(z, a, -h), b, -h));
        return (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    };
    std::vector<std::vector<Complex>> g(d, std::vector<Complex>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            double fxx = second(2 * i, 2 * j);
            double fyy = second(2 * i + 1, 2 * j + 1);
            double fxy = second(2 * i, 2 * j + 1);
            double fyx = second(2 * i + 1, 2 * j);
            g[i][j] = 0.25 * Complex(fxx + fyy, fxy - fyx);
        }
    return g;
}

/// Length of the transported radial path from z to w, integrated against
/// the metric tensor (the path is the geodesic; only metric_tensor is used
/// to measure it).
inline double geodesic_length(const bergman::domains::DomainSpec& spec, const CPoint& z,
                              const CPoint& w, int steps = 20000) {
    using namespace bergman;
    CPoint u = domains::ball_automorphism(z, w).image;  // w transported to the chart at z
    double len = 0.0;
    for (int s = 0; s < steps; ++s) {
        double t0 = (s + 0.5) / steps;
        CPoint ut(u.dim());
        for (std::size_t j = 0; j < u.dim(); ++j) ut[j] = t0 * u[j];
        auto back = domains::mobius_from_origin(spec, z, CPoint{ut});
        // velocity of t -> m_z(t u) by finite differences
        double dt = 0.5 / steps;
        CPoint up(u.dim()), um(u.dim());
        for (std::size_t j = 0; j < u.dim(); ++j) {
            up[j] = (t0 + dt) * u[j];
            um[j] = (t0 - dt) * u[j];
        }
        CPoint fp = domains::mobius_from_origin(spec, z, up).image;
        CPoint fm = domains::mobius_from_origin(spec, z, um).image;
        std::vector<Complex> vel(u.dim());
        for (std::size_t j = 0; j < u.dim(); ++j) vel[j] = (fp[j] - fm[j]) / (2.0 * dt);
        auto g = geometry::metric_tensor(spec, back.image);
        Complex quad(0.0, 0.0);
        for (std::size_t i = 0; i < u.dim(); ++i)
            for (std::size_t j = 0; j < u.dim(); ++j)
                quad += std::conj(vel[i]) * g[i][j] * vel[j];
        len += std::sqrt(std::abs(quad)) / steps;
    }
    return len;
}

/// Euclidean center and radius of the hyperbolic disk B(a, r) in the unit disk.
struct EuclidDisk {
    Complex center;
    double radius;
};

inline EuclidDisk hyperbolic_disk(Complex a, double metric_radius) {
    double rho = std::tanh(metric_radius / std::sqrt(2.0));
    double a2 = std::norm(a);
    double denom = 1.0 - rho * rho * a2;
    return {a * ((1.0 - rho * rho) / denom), rho * (1.0 - a2) / denom};
}

/// Minimal structural JSON-schema check: type / required / properties /
/// items / enum. Returns an empty string or the first violation.
inline std::string schema_violation(const nlohmann::json& schema, const nlohmann::json& value,
                                    const std::string& path = "$") {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        auto matches = [&](const std::string& ty) {
            if (ty == "object") return value.is_object();
            if (ty == "array") return value.is_array();
            if (ty == "string") return value.is_string();
            if (ty == "number") return value.is_number() || value.is_null();  // NaN serializes as null
            if (ty == "integer") return value.is_number_integer() || value.is_number_unsigned();
            if (ty == "boolean") return value.is_boolean();
            if (ty == "null") return value.is_null();
            return false;
        };
        bool ok = false;
        if (t.is_string()) ok = matches(t.get<std::string>());
        else
            for (const auto& ty : t) ok = ok || matches(ty.get<std::string>());
        if (!ok) return path + ": type mismatch";
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& e : schema["enum"]) ok = ok || e == value;
        if (!ok) return path + ": not in enum";
    }
    if (schema.contains("required"))
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>()))
                return path + ": missing required key " + key.get<std::string>();
    if (schema.contains("properties") && value.is_object())
        for (auto& [key, sub] : schema["properties"].items())
            if (value.contains(key)) {
                auto err = schema_violation(sub, value[key], path + "." + key);
                if (!err.empty()) return err;
            }
    if (schema.contains("items") && value.is_array())
        for (std::size_t i = 0; i < value.size(); ++i) {
            auto err = schema_violation(schema["items"], value[i],
                                        path + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
        }
    return "";
}

}  // namespace oracle
