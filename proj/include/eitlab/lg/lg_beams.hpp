#pragma once

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "eitlab/error.hpp"
#include "eitlab/numerics/grid.hpp"
#include "eitlab/numerics/laguerre.hpp"

namespace eitlab::lg {

using numerics::cdouble;
using numerics::ComplexField;
using numerics::Grid2D;

/// Laguerre-Gauss mode: azimuthal index ell, radial index p, waist w0 and
/// wavelength (meters).
struct LGMode {
    int ell = 0;
    int p = 0;
    double w0 = 1e-3;
    double wavelength = 795e-9;

    LGMode() = default;
    LGMode(int ell_, int p_, double w0_, double wavelength_) : ell(ell_), p(p_), w0(w0_), wavelength(wavelength_) {
        validate();
    }

    void validate() const {
        require(p >= 0, "LGMode: p must be non-negative");
        require(std::isfinite(w0) && w0 > 0.0, "LGMode: w0 must be positive");
        require(std::isfinite(wavelength) && wavelength > 0.0, "LGMode: wavelength must be positive");
    }

    [[nodiscard]] double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
    [[nodiscard]] double rayleigh_range() const { return std::numbers::pi * w0 * w0 / wavelength; }
    [[nodiscard]] double beam_radius(double z) const {
        const double s = z / rayleigh_range();
        return w0 * std::sqrt(1.0 + s * s);
    }

    friend bool operator==(const LGMode&, const LGMode&) = default;
};

namespace detail {

inline double lg_norm(int ell, int p) {
    const int l = std::abs(ell);
    return std::sqrt(2.0 / std::numbers::pi) * std::exp(0.5 * (std::lgamma(p + 1.0) - std::lgamma(p + l + 1.0)));
}

}  // namespace detail

/// Radial factor of a mode at axial position z: everything except exp(i ell phi).
class RadialProfile {
public:
    RadialProfile(const LGMode& mode, double z) : l_(std::abs(mode.ell)), p_(mode.p) {
        mode.validate();
        const double zr = mode.rayleigh_range();
        w_ = mode.beam_radius(z);
        prefactor_ = detail::lg_norm(mode.ell, mode.p) / w_;
        // k r^2 / (2 R(z)) with R(z) = z (1 + (zR/z)^2); zero curvature at z = 0.
        curvature_ = mode.wavenumber() * z / (2.0 * (z * z + zr * zr));
        gouy_ = -(2.0 * p_ + l_ + 1.0) * std::atan2(z, zr);
    }

    [[nodiscard]] cdouble operator()(double r) const {
        const double s = r / w_;
        const double mag = prefactor_ * std::pow(std::numbers::sqrt2 * s, l_) *
                           numerics::laguerre_poly(p_, l_, 2.0 * s * s) * std::exp(-s * s);
        return std::polar(mag, curvature_ * r * r + gouy_);
    }

    /// |amplitude|^2 at radius r.
    [[nodiscard]] double intensity(double r) const { return std::norm((*this)(r)); }

    [[nodiscard]] double beam_radius() const { return w_; }

private:
    int l_;
    int p_;
    double w_{};
    double prefactor_{};
    double curvature_{};
    double gouy_{};
};

/// Unit-power Laguerre-Gauss amplitude with exp(+i ell phi) and arctan Gouy
/// convention.
inline cdouble lg_amplitude(const LGMode& mode, double r, double phi, double z) {
    require(r >= 0.0, "lg_amplitude: r must be non-negative");
    return RadialProfile(mode, z)(r) * std::polar(1.0, mode.ell * phi);
}

/// Continuous power of the mode falling outside the sampled window of `grid`.
inline double clipped_power(const LGMode& mode, const Grid2D& grid, double z) {
    const RadialProfile radial(mode, z);
    const double hx = grid.half_extent_x();
    const double hy = grid.half_extent_y();
    const double corner = std::hypot(hx, hy);
    auto outside_angle = [&](double r) {
        double a = 0.0;
        if (r > hx) a += 4.0 * std::acos(std::min(1.0, hx / r));
        if (r > hy) a += 4.0 * std::acos(std::min(1.0, hy / r));
        return std::min(a, 2.0 * std::numbers::pi);
    };
    auto integrand = [&](double r) { return radial.intensity(r) * r * outside_angle(r); };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double lo = std::min(hx, hy);
    const double mid = std::max(hx, hy);
    const double w = radial.beam_radius();
    const double far = std::max(corner, 0.0) + 40.0 * w;
    double total = 0.0;
    if (mid > lo) total += Quad::integrate(integrand, lo, mid, 12, 1e-12);
    total += Quad::integrate(integrand, mid, corner, 12, 1e-12);
    total += Quad::integrate([&](double r) { return radial.intensity(r) * r * 2.0 * std::numbers::pi; }, corner, far, 15,
                             1e-12);
    return total;
}

/// Samples the mode on the grid without the clipping check.
inline ComplexField sample_mode(const LGMode& mode, const Grid2D& grid, double z) {
    const RadialProfile radial(mode, z);
    std::vector<cdouble> out(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.y(j);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double x = grid.x(i);
            out[grid.index(i, j)] = radial(std::hypot(x, y)) * std::polar(1.0, mode.ell * std::atan2(y, x));
        }
    }
    return {grid, mode.wavelength, std::move(out)};
}

inline constexpr double kMaxClippedPower = 1e-6;

/// Samples the mode; throws GridTooSmall when more than 1e-6 of the power
/// falls outside the grid.
inline ComplexField render_mode(const LGMode& mode, const Grid2D& grid, double z) {
    mode.validate();
    const double clipped = clipped_power(mode, grid, z);
    if (!(clipped < kMaxClippedPower)) {
        throw Error(ErrorKind::GridTooSmall, "clipped power " + std::to_string(clipped) + " exceeds 1e-6");
    }
    return sample_mode(mode, grid, z);
}

/// <mode | field> using the mode sampled on the field's grid.
inline cdouble mode_overlap(const ComplexField& field, const LGMode& mode, double z) {
    mode.validate();
    if (mode.wavelength != field.wavelength()) {
        throw Error(ErrorKind::GridMismatch, "mode and field wavelengths differ");
    }
    return numerics::inner_product(sample_mode(mode, field.grid(), z), field);
}

/// Repeated overlaps of one field against many LG modes. Samples are grouped
/// by (|i - nx/2|, |j - ny/2|), which share a radius, and the azimuthal factor
/// is folded in once per ell, so each overlap costs one radial evaluation per
/// group while equalling mode_overlap up to rounding.
class ModeProjector {
public:
    ModeProjector(const ComplexField& field, int max_ell) : wavelength_(field.wavelength()), max_ell_(max_ell) {
        require(max_ell >= 0, "ModeProjector: max_ell must be non-negative");
        const Grid2D& g = field.grid();
        const std::size_t cx = g.nx() / 2;
        const std::size_t cy = g.ny() / 2;
        gx_ = cx + 1;
        const std::size_t gy = cy + 1;
        radius_.resize(gx_ * gy);
        for (std::size_t b = 0; b < gy; ++b)
            for (std::size_t a = 0; a < gx_; ++a)
                radius_[b * gx_ + a] = std::hypot(static_cast<double>(a) * g.dx(), static_cast<double>(b) * g.dy());
        const auto n_ell = static_cast<std::size_t>(2 * max_ell + 1);
        sums_.assign(n_ell, std::vector<cdouble>(gx_ * gy));
        std::vector<cdouble> harmonic(n_ell);
        for (std::size_t j = 0; j < g.ny(); ++j) {
            const double y = g.y(j);
            const std::size_t b = j >= cy ? j - cy : cy - j;
            for (std::size_t i = 0; i < g.nx(); ++i) {
                const double x = g.x(i);
                const std::size_t a = i >= cx ? i - cx : cx - i;
                const cdouble value = field.at(i, j) * g.cell_area();
                const cdouble step = std::polar(1.0, -std::atan2(y, x));
                // harmonic[ell + L] = exp(-i ell phi)
                harmonic[max_ell] = 1.0;
                for (int l = 1; l <= max_ell; ++l) {
                    harmonic[max_ell + l] = harmonic[max_ell + l - 1] * step;
                    harmonic[max_ell - l] = std::conj(harmonic[max_ell + l]);
                }
                const std::size_t idx = b * gx_ + a;
                for (std::size_t k = 0; k < n_ell; ++k) sums_[k][idx] += harmonic[k] * value;
            }
        }
    }

    [[nodiscard]] int max_ell() const noexcept { return max_ell_; }

    [[nodiscard]] cdouble overlap(const LGMode& mode, double z = 0.0) const {
        require(std::abs(mode.ell) <= max_ell_, "ModeProjector: |ell| exceeds projector range");
        if (mode.wavelength != wavelength_) throw Error(ErrorKind::GridMismatch, "mode and field wavelengths differ");
        const RadialProfile radial(mode, z);
        const auto& s = sums_[static_cast<std::size_t>(mode.ell + max_ell_)];
        cdouble acc{0.0, 0.0};
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] == cdouble{}) continue;
            acc += std::conj(radial(radius_[k])) * s[k];
        }
        return acc;
    }

private:
    double wavelength_;
    int max_ell_;
    std::size_t gx_{};
    std::vector<double> radius_;
    std::vector<std::vector<cdouble>> sums_;
};

/// Power fractions of azimuthal harmonics exp(i ell phi), ell in [-L, L].
struct OamSpectrum {
    std::map<int, double> fractions;
    double mean_ell = 0.0;
    /// Sum of the fractions; close to 1 for band-limited inputs.
    double captured = 0.0;
};

namespace detail {

inline cdouble bilinear(const ComplexField& f, double x, double y) {
    const Grid2D& g = f.grid();
    const double fi = x / g.dx() + static_cast<double>(g.nx() / 2);
    const double fj = y / g.dy() + static_cast<double>(g.ny() / 2);
    const double i0f = std::floor(fi);
    const double j0f = std::floor(fj);
    if (i0f < 0 || j0f < 0 || i0f + 1 >= static_cast<double>(g.nx()) || j0f + 1 >= static_cast<double>(g.ny()))
        return {0.0, 0.0};
    const auto i0 = static_cast<std::size_t>(i0f);
    const auto j0 = static_cast<std::size_t>(j0f);
    const double tx = fi - i0f;
    const double ty = fj - j0f;
    return (1 - tx) * (1 - ty) * f.at(i0, j0) + tx * (1 - ty) * f.at(i0 + 1, j0) + (1 - tx) * ty * f.at(i0, j0 + 1) +
           tx * ty * f.at(i0 + 1, j0 + 1);
}

}  // namespace detail

/// Azimuthal decomposition on concentric rings. Rings are spaced one grid cell
/// apart and each ring is resampled by bilinear interpolation.
inline OamSpectrum oam_spectrum(const ComplexField& field, int max_ell = 8) {
    require(max_ell >= 0, "oam_spectrum: max_ell must be non-negative");
    if (!(numerics::power(field) > 0.0)) throw Error(ErrorKind::ZeroPowerField, "field carries no power");
    const Grid2D& g = field.grid();
    const double dr = std::min(g.dx(), g.dy());
    const double r_max = std::min(g.half_extent_x(), g.half_extent_y()) - 2.0 * dr;
    const auto n_ell = static_cast<std::size_t>(2 * max_ell + 1);
    std::vector<double> harmonic_power(n_ell, 0.0);
    double total = 0.0;
    std::vector<cdouble> ring;
    std::vector<cdouble> step_pow;
    for (std::size_t m = 0; (static_cast<double>(m) + 0.5) * dr < r_max; ++m) {
        const double r = (static_cast<double>(m) + 0.5) * dr;
        const auto n_phi = static_cast<std::size_t>(
            std::max<double>(8.0 * max_ell + 8.0, 4.0 * std::ceil(std::numbers::pi * r / dr)));
        ring.resize(n_phi);
        double ring_power = 0.0;
        for (std::size_t k = 0; k < n_phi; ++k) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi);
            ring[k] = detail::bilinear(field, r * std::cos(phi), r * std::sin(phi));
            ring_power += std::norm(ring[k]);
        }
        const double weight = 2.0 * std::numbers::pi * r * dr;
        total += weight * ring_power / static_cast<double>(n_phi);
        for (int l = -max_ell; l <= max_ell; ++l) {
            cdouble c{0.0, 0.0};
            for (std::size_t k = 0; k < n_phi; ++k) {
                const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi);
                c += ring[k] * std::polar(1.0, -l * phi);
            }
            c /= static_cast<double>(n_phi);
            harmonic_power[static_cast<std::size_t>(l + max_ell)] += weight * std::norm(c);
        }
    }
    if (!(total > 0.0)) throw Error(ErrorKind::ZeroPowerField, "no power on the analysis rings");
    OamSpectrum out;
    double weighted = 0.0;
    double captured = 0.0;
    for (int l = -max_ell; l <= max_ell; ++l) {
        const double frac = harmonic_power[static_cast<std::size_t>(l + max_ell)] / total;
        out.fractions[l] = frac;
        captured += frac;
        weighted += l * frac;
    }
    out.captured = captured;
    out.mean_ell = captured > 0.0 ? weighted / captured : 0.0;
    return out;
}

/// Azimuthally averaged intensity on rings of width dr, starting at r = 0.
inline std::vector<double> radial_profile(const ComplexField& field, double dr) {
    require(dr > 0.0, "radial_profile: dr must be positive");
    const Grid2D& g = field.grid();
    const double cell = std::min(g.dx(), g.dy());
    const double r_max = std::min(g.half_extent_x(), g.half_extent_y()) - 2.0 * std::max(g.dx(), g.dy());
    std::vector<double> out;
    for (std::size_t m = 0; static_cast<double>(m) * dr < r_max; ++m) {
        const double r = static_cast<double>(m) * dr;
        const auto n_phi = static_cast<std::size_t>(std::max(16.0, 4.0 * std::ceil(std::numbers::pi * r / cell)));
        double acc = 0.0;
        for (std::size_t k = 0; k < n_phi; ++k) {
            const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_phi);
            acc += std::norm(detail::bilinear(field, r * std::cos(phi), r * std::sin(phi)));
        }
        out.push_back(acc / static_cast<double>(n_phi));
    }
    return out;
}

/// Radius of maximum azimuthally averaged intensity, resolved to a tenth of a cell.
inline double peak_radius(const ComplexField& field) {
    const double dr = 0.1 * std::min(field.grid().dx(), field.grid().dy());
    const auto profile = radial_profile(field, dr);
    const auto it = std::max_element(profile.begin(), profile.end());
    return static_cast<double>(std::distance(profile.begin(), it)) * dr;
}

}  // namespace eitlab::lg
