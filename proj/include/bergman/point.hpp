#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;

/// A point of the ambient space C^d.
struct CPoint {
    std::vector<Complex> coords;

    CPoint() = default;
    explicit CPoint(std::size_t dim) : coords(dim, Complex(0.0, 0.0)) {}
    CPoint(std::initializer_list<Complex> cs) : coords(cs) {}
    explicit CPoint(std::vector<Complex> cs) : coords(std::move(cs)) {}

    std::size_t dim() const { return coords.size(); }
    Complex& operator[](std::size_t i) { return coords[i]; }
    const Complex& operator[](std::size_t i) const { return coords[i]; }

    /// Squared Euclidean norm.
    double norm_sq() const {
        double s = 0.0;
        for (const auto& c : coords) s += std::norm(c);
        return s;
    }

    /// Parses the textual form "0.5+0i,0.1-0.2i". Plain reals and pure
    /// imaginary components ("0.3", "-0.2i") are accepted too.
    static CPoint parse(const std::string& text);

    /// Inverse of parse; shortest round-trip decimal digits.
    std::string str() const;
};

std::string format_complex(Complex c);

}  // namespace bergman
