#pragma once

#include <cmath>
#include <numbers>

#include "eitlab/numerics/fft.hpp"
#include "eitlab/numerics/grid.hpp"

namespace eitlab::numerics {

/// Continuous-normalized angular spectrum: coefficients are dx*dy*DFT(f) in
/// FFT bin order, so power = sum |F|^2 dkx dky / (2 pi)^2.
struct AngularSpectrum {
    Grid2D grid;
    double wavelength;
    std::vector<cdouble> coeffs;

    [[nodiscard]] double dkx() const { return 2.0 * std::numbers::pi / (static_cast<double>(grid.nx()) * grid.dx()); }
    [[nodiscard]] double dky() const { return 2.0 * std::numbers::pi / (static_cast<double>(grid.ny()) * grid.dy()); }
    [[nodiscard]] double kx(std::size_t i) const { return fft_frequency(i, grid.nx(), grid.dx()); }
    [[nodiscard]] double ky(std::size_t j) const { return fft_frequency(j, grid.ny(), grid.dy()); }

    [[nodiscard]] double power() const {
        double acc = 0.0;
        for (const auto& c : coeffs) acc += std::norm(c);
        return acc * dkx() * dky() / (4.0 * std::numbers::pi * std::numbers::pi);
    }
};

inline AngularSpectrum to_spectrum(const ComplexField& f) {
    std::vector<cdouble> data(f.samples().begin(), f.samples().end());
    fft2(data, f.grid().nx(), f.grid().ny(), FftDirection::Forward);
    const double area = f.grid().cell_area();
    for (auto& c : data) c *= area;
    return {f.grid(), f.wavelength(), std::move(data)};
}

inline ComplexField from_spectrum(AngularSpectrum s) {
    fft2(s.coeffs, s.grid.nx(), s.grid.ny(), FftDirection::Inverse);
    const double norm = 1.0 / (static_cast<double>(s.grid.size()) * s.grid.cell_area());
    for (auto& c : s.coeffs) c *= norm;
    return {s.grid, s.wavelength, std::move(s.coeffs)};
}

/// Free-space transfer function of the angular-spectrum method. Evanescent
/// components decay as exp(-|distance| * kappa) for either sign of distance.
inline cdouble free_space_transfer(double kx, double ky, double wavelength, double distance) {
    const double k = 2.0 * std::numbers::pi / wavelength;
    const double kt2 = kx * kx + ky * ky;
    const double k2 = k * k;
    if (kt2 <= k2) {
        const double kz = std::sqrt(k2 - kt2);
        return std::polar(1.0, distance * kz);
    }
    return {std::exp(-std::abs(distance) * std::sqrt(kt2 - k2)), 0.0};
}

inline ComplexField propagate(const ComplexField& f, double distance) {
    require(std::isfinite(distance), "propagate: distance must be finite");
    auto s = to_spectrum(f);
    const auto nx = s.grid.nx();
    const auto ny = s.grid.ny();
    for (std::size_t j = 0; j < ny; ++j) {
        const double ky = s.ky(j);
        for (std::size_t i = 0; i < nx; ++i) {
            s.coeffs[j * nx + i] *= free_space_transfer(s.kx(i), ky, s.wavelength, distance);
        }
    }
    return from_spectrum(std::move(s));
}

}  // namespace eitlab::numerics
