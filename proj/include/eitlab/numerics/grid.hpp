#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "eitlab/error.hpp"

namespace eitlab::numerics {

using cdouble = std::complex<double>;

/// Uniform, centered sampling grid. Sample (i, j) sits at
/// ((i - nx/2) * dx, (j - ny/2) * dy); storage is row-major in y.
class Grid2D {
public:
    Grid2D(std::size_t nx, std::size_t ny, double dx, double dy) : nx_(nx), ny_(ny), dx_(dx), dy_(dy) {
        require(nx >= 2 && ny >= 2, "Grid2D: nx and ny must be >= 2");
        require(nx % 2 == 0 && ny % 2 == 0, "Grid2D: nx and ny must be even");
        require(std::isfinite(dx) && std::isfinite(dy) && dx > 0.0 && dy > 0.0,
                "Grid2D: dx and dy must be positive");
    }

    /// Square grid of n x n samples spanning `extent` per side.
    static Grid2D square(std::size_t n, double extent) {
        require(n >= 2, "Grid2D: n must be >= 2");
        return {n, n, extent / static_cast<double>(n), extent / static_cast<double>(n)};
    }

    [[nodiscard]] std::size_t nx() const noexcept { return nx_; }
    [[nodiscard]] std::size_t ny() const noexcept { return ny_; }
    [[nodiscard]] double dx() const noexcept { return dx_; }
    [[nodiscard]] double dy() const noexcept { return dy_; }
    [[nodiscard]] std::size_t size() const noexcept { return nx_ * ny_; }
    [[nodiscard]] double cell_area() const noexcept { return dx_ * dy_; }

    [[nodiscard]] double x(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(nx_ / 2)) * dx_;
    }
    [[nodiscard]] double y(std::size_t j) const noexcept {
        return (static_cast<double>(j) - static_cast<double>(ny_ / 2)) * dy_;
    }
    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j) const noexcept { return j * nx_ + i; }

    /// Half-widths of the sampled window.
    [[nodiscard]] double half_extent_x() const noexcept { return 0.5 * static_cast<double>(nx_) * dx_; }
    [[nodiscard]] double half_extent_y() const noexcept { return 0.5 * static_cast<double>(ny_) * dy_; }

    friend bool operator==(const Grid2D&, const Grid2D&) = default;

private:
    std::size_t nx_;
    std::size_t ny_;
    double dx_;
    double dy_;
};

/// Sampled scalar optical amplitude carrying its own wavelength.
class ComplexField {
public:
    ComplexField(Grid2D grid, double wavelength, std::vector<cdouble> samples)
        : grid_(grid), wavelength_(wavelength), samples_(std::move(samples)) {
        require(samples_.size() == grid_.size(), "ComplexField: sample count must equal nx*ny");
        require(std::isfinite(wavelength) && wavelength > 0.0, "ComplexField: wavelength must be positive");
    }

    static ComplexField zeros(Grid2D grid, double wavelength) {
        return {grid, wavelength, std::vector<cdouble>(grid.size())};
    }

    [[nodiscard]] const Grid2D& grid() const noexcept { return grid_; }
    [[nodiscard]] double wavelength() const noexcept { return wavelength_; }
    [[nodiscard]] std::span<const cdouble> samples() const noexcept { return samples_; }
    [[nodiscard]] cdouble at(std::size_t i, std::size_t j) const { return samples_[grid_.index(i, j)]; }

    /// Releases the sample buffer; used by transforms that build a new field.
    [[nodiscard]] std::vector<cdouble> take_samples() && { return std::move(samples_); }

private:
    Grid2D grid_;
    double wavelength_;
    std::vector<cdouble> samples_;
};

inline bool same_layout(const ComplexField& f, const ComplexField& g) {
    return f.grid() == g.grid() && f.wavelength() == g.wavelength();
}

inline void check_same_layout(const ComplexField& f, const ComplexField& g) {
    if (!same_layout(f, g)) throw Error(ErrorKind::GridMismatch, "fields differ in grid or wavelength");
}

/// Sum of conj(f) * g * dx * dy.
inline cdouble inner_product(const ComplexField& f, const ComplexField& g) {
    check_same_layout(f, g);
    auto a = f.samples();
    auto b = g.samples();
    cdouble acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc * f.grid().cell_area();
}

inline double power(const ComplexField& f) {
    double acc = 0.0;
    for (const auto& s : f.samples()) acc += std::norm(s);
    return acc * f.grid().cell_area();
}

inline std::vector<double> intensity(const ComplexField& f) {
    std::vector<double> out;
    out.reserve(f.samples().size());
    for (const auto& s : f.samples()) out.push_back(std::norm(s));
    return out;
}

/// Linear combination a*f + b*g on a shared layout.
inline ComplexField combine(cdouble a, const ComplexField& f, cdouble b, const ComplexField& g) {
    check_same_layout(f, g);
    std::vector<cdouble> out(f.samples().size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * f.samples()[k] + b * g.samples()[k];
    return {f.grid(), f.wavelength(), std::move(out)};
}

inline ComplexField scale(const ComplexField& f, cdouble a) {
    std::vector<cdouble> out(f.samples().begin(), f.samples().end());
    for (auto& s : out) s *= a;
    return {f.grid(), f.wavelength(), std::move(out)};
}

}  // namespace eitlab::numerics
