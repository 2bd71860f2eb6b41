#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "eitlab/error.hpp"
#include "eitlab/lg/lg_beams.hpp"
#include "eitlab/numerics/grid.hpp"
#include "eitlab/numerics/propagate.hpp"

namespace eitlab::holo {

using numerics::cdouble;
using numerics::ComplexField;
using numerics::Grid2D;

enum class HologramKind { AmplitudeSinusoidal, AmplitudeBinary, Phase };

inline std::string_view to_string(HologramKind kind) {
    switch (kind) {
        case HologramKind::AmplitudeSinusoidal: return "amplitude-sinusoidal";
        case HologramKind::AmplitudeBinary: return "amplitude-binary";
        case HologramKind::Phase: return "phase";
    }
    return "unknown";
}

inline HologramKind hologram_kind_from_string(std::string_view name) {
    if (name == "amplitude-sinusoidal") return HologramKind::AmplitudeSinusoidal;
    if (name == "amplitude-binary") return HologramKind::AmplitudeBinary;
    if (name == "phase") return HologramKind::Phase;
    throw std::invalid_argument("unknown hologram kind: " + std::string(name));
}

inline bool is_amplitude(HologramKind kind) { return kind != HologramKind::Phase; }

/// Real transmission (amplitude kinds, in [0, 1]) or phase (in [0, 2 pi)) mask.
class HologramPattern {
public:
    HologramPattern(Grid2D grid, HologramKind kind, std::vector<double> values, int charge, double period)
        : grid_(grid), kind_(kind), values_(std::move(values)), charge_(charge), period_(period) {
        require(values_.size() == grid_.size(), "HologramPattern: value count must equal nx*ny");
        if (!(period > 2.0 * grid_.dx())) throw Error(ErrorKind::PeriodTooSmall, "period must exceed two samples");
        for (double v : values_) {
            if (is_amplitude(kind_))
                require(v >= 0.0 && v <= 1.0, "HologramPattern: transmission outside [0, 1]");
            else
                require(v >= 0.0 && v < 2.0 * std::numbers::pi, "HologramPattern: phase outside [0, 2pi)");
        }
    }

    [[nodiscard]] const Grid2D& grid() const noexcept { return grid_; }
    [[nodiscard]] HologramKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values_[grid_.index(i, j)]; }
    [[nodiscard]] int charge() const noexcept { return charge_; }
    [[nodiscard]] double period() const noexcept { return period_; }

private:
    Grid2D grid_;
    HologramKind kind_;
    std::vector<double> values_;
    int charge_;
    double period_;
};

/// Fork grating with `charge` dislocations at the origin. The grating phase is
/// 2 pi x / period + charge * phi, so that order +1 carries exp(+i charge phi).
/// At the singular sample itself the azimuthal term is replaced by its mean,
/// which leaves the amplitude kinds at transmission 1/2.
inline HologramPattern fork_grating(int charge, double period, HologramKind kind, const Grid2D& grid) {
    if (!(std::isfinite(period) && period > 2.0 * grid.dx()))
        throw Error(ErrorKind::PeriodTooSmall, "period must exceed two grid samples");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> values(grid.size());
    for (std::size_t j = 0; j < grid.ny(); ++j) {
        const double y = grid.y(j);
        for (std::size_t i = 0; i < grid.nx(); ++i) {
            const double x = grid.x(i);
            const bool singular = charge != 0 && x == 0.0 && y == 0.0;
            const double theta = two_pi * x / period + charge * std::atan2(y, x);
            double v = 0.0;
            switch (kind) {
                case HologramKind::AmplitudeSinusoidal:
                    v = singular ? 0.5 : 0.5 * (1.0 + std::cos(theta));
                    break;
                case HologramKind::AmplitudeBinary:
                    v = singular ? 0.5 : (std::cos(theta) >= 0.0 ? 1.0 : 0.0);
                    break;
                case HologramKind::Phase:
                    v = std::fmod(theta, two_pi);
                    if (v < 0.0) v += two_pi;
                    if (v >= two_pi) v = 0.0;
                    break;
            }
            values[grid.index(i, j)] = v;
        }
    }
    return {grid, kind, std::move(values), charge, period};
}

inline ComplexField apply_mask(const ComplexField& field, const HologramPattern& pattern) {
    if (!(field.grid() == pattern.grid())) throw Error(ErrorKind::GridMismatch, "mask and field grids differ");
    std::vector<cdouble> out(field.samples().begin(), field.samples().end());
    const auto v = pattern.values();
    if (is_amplitude(pattern.kind())) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] *= v[k];
    } else {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] *= std::polar(1.0, v[k]);
    }
    return {field.grid(), field.wavelength(), std::move(out)};
}

/// Isolates diffraction order `order` of a grating of the given period: keeps a
/// disc of radius pi/period around kx = 2 pi order / period in the angular
/// spectrum and shifts it back to zero transverse frequency.
inline ComplexField extract_order(const ComplexField& masked, int order, double period) {
    require(std::isfinite(period) && period > 0.0, "extract_order: period must be positive");
    if (!(std::abs(order) * masked.wavelength() / period < 1.0))
        throw Error(ErrorKind::EvanescentOrder, "order " + std::to_string(order) + " does not propagate");
    auto s = numerics::to_spectrum(masked);
    const double k_center = 2.0 * std::numbers::pi * order / period;
    const double radius = std::numbers::pi / period;
    const auto nx = s.grid.nx();
    for (std::size_t j = 0; j < s.grid.ny(); ++j) {
        const double ky = s.ky(j);
        for (std::size_t i = 0; i < nx; ++i) {
            if (std::hypot(s.kx(i) - k_center, ky) > radius) s.coeffs[j * nx + i] = 0.0;
        }
    }
    auto windowed = numerics::from_spectrum(std::move(s));
    const Grid2D grid = windowed.grid();
    const double wavelength = windowed.wavelength();
    auto out = std::move(windowed).take_samples();
    for (std::size_t i = 0; i < nx; ++i) {
        const cdouble shift = std::polar(1.0, -k_center * grid.x(i));
        for (std::size_t j = 0; j < grid.ny(); ++j) out[grid.index(i, j)] *= shift;
    }
    return {grid, wavelength, std::move(out)};
}

/// Maximizes f on [lo, hi] by golden-section search to an absolute tolerance.
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Field in the back focal plane of a thin lens of the given focal length
/// placed at the field plane: U(u) = F(k) / (i lambda f) with u = lambda f k / (2 pi).
/// The field is zero-padded by `pad` before the transform; the returned grid has
/// the input's sample counts and spacing lambda f / (pad n dx), centered on the axis.
inline ComplexField focal_plane(const ComplexField& field, double focal_length, std::size_t pad = 4) {
    require(std::isfinite(focal_length) && focal_length > 0.0, "focal_plane: focal length must be positive");
    require(pad >= 1, "focal_plane: pad must be >= 1");
    const Grid2D& g = field.grid();
    const std::size_t nx = g.nx() * pad;
    const std::size_t ny = g.ny() * pad;
    const std::size_t ox = (nx - g.nx()) / 2;
    const std::size_t oy = (ny - g.ny()) / 2;
    std::vector<cdouble> buf(nx * ny);
    for (std::size_t j = 0; j < g.ny(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) buf[(j + oy) * nx + (i + ox)] = field.at(i, j);
    numerics::fft2(buf, nx, ny, numerics::FftDirection::Forward);

    const double lf = field.wavelength() * focal_length;
    const Grid2D out_grid(g.nx(), g.ny(), lf / (static_cast<double>(nx) * g.dx()), lf / (static_cast<double>(ny) * g.dy()));
    const cdouble factor = g.cell_area() / (cdouble{0.0, 1.0} * lf);
    std::vector<cdouble> out(out_grid.size());
    for (std::size_t j = 0; j < g.ny(); ++j) {
        const long mj = static_cast<long>(j) - static_cast<long>(g.ny() / 2);
        const std::size_t bj = static_cast<std::size_t>(mj < 0 ? mj + static_cast<long>(ny) : mj);
        for (std::size_t i = 0; i < g.nx(); ++i) {
            const long mi = static_cast<long>(i) - static_cast<long>(g.nx() / 2);
            const std::size_t bi = static_cast<std::size_t>(mi < 0 ? mi + static_cast<long>(nx) : mi);
            const bool odd = ((mi + mj) % 2) != 0;
            out[out_grid.index(i, j)] = buf[bj * nx + bi] * (odd ? -factor : factor);
        }
    }
    return {out_grid, field.wavelength(), std::move(out)};
}

struct GenerationOptions {
    /// Lens used to form the camera-plane image of the selected order.
    double focal_length = 0.5;
    std::size_t pad = 4;
    int max_ell = 4;
    int max_p = 3;
};

struct GenerationResult {
    /// Selected order, recentered and collimated, in the hologram plane.
    ComplexField field;
    /// The same order in the focal plane of the imaging lens.
    ComplexField focal_field;
    HologramPattern pattern;
    /// Power of the extracted order over the power of the input Gaussian.
    double order_efficiency = 0.0;
    double purity = 0.0;
    lg::LGMode dominant_mode;
};

struct PurityFit {
    double purity = 0.0;
    lg::LGMode mode;
};

/// Best single-mode description of `field` over |ell| <= max_ell, p <= max_p,
/// each candidate's waist fitted in [0.2, 3] * waist_hint to 1e-3 * waist_hint.
inline PurityFit fit_dominant_mode(const ComplexField& field, double waist_hint, int max_ell = 4, int max_p = 3) {
    const double total = numerics::power(field);
    if (!(total > 0.0)) throw Error(ErrorKind::ZeroPowerField, "extracted field carries no power");
    const lg::ModeProjector projector(field, max_ell);
    PurityFit best;
    best.purity = -1.0;
    for (int ell = -max_ell; ell <= max_ell; ++ell) {
        for (int p = 0; p <= max_p; ++p) {
            auto purity_at = [&](double w) {
                return std::norm(projector.overlap(lg::LGMode(ell, p, w, field.wavelength()))) / total;
            };
            const double w = golden_section_maximize(purity_at, 0.2 * waist_hint, 3.0 * waist_hint, 1e-3 * waist_hint);
            const double purity = purity_at(w);
            if (purity > best.purity) {
                best.purity = purity;
                best.mode = lg::LGMode(ell, p, w, field.wavelength());
            }
        }
    }
    return best;
}

/// Gaussian input -> fork grating -> order +1 -> modal analysis and camera image.
inline GenerationResult simulate_generation(double waist, double wavelength, int charge, double period,
                                            HologramKind kind, const Grid2D& grid,
                                            const GenerationOptions& options = {}) {
    const auto input = lg::render_mode(lg::LGMode(0, 0, waist, wavelength), grid, 0.0);
    auto pattern = fork_grating(charge, period, kind, grid);
    auto extracted = extract_order(apply_mask(input, pattern), 1, period);
    const double efficiency = numerics::power(extracted) / numerics::power(input);
    const auto fit = fit_dominant_mode(extracted, waist, options.max_ell, options.max_p);
    auto focal = focal_plane(extracted, options.focal_length, options.pad);
    return {std::move(extracted), std::move(focal), std::move(pattern), efficiency, fit.purity, fit.mode};
}

/// Intensity at the grid center relative to the brightest sample.
inline double on_axis_ratio(const ComplexField& field) {
    double peak = 0.0;
    for (const auto& s : field.samples()) peak = std::max(peak, std::norm(s));
    if (!(peak > 0.0)) throw Error(ErrorKind::ZeroPowerField, "field carries no power");
    return std::norm(field.at(field.grid().nx() / 2, field.grid().ny() / 2)) / peak;
}

}  // namespace eitlab::holo
