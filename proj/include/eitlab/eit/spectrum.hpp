#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "eitlab/eit/steady_state.hpp"
#include "eitlab/numerics/parallel.hpp"

namespace eitlab::eit {

/// First-order (weak-probe) probe coherence with the whole population in |b>:
/// rho_ab = (i omega_p / 2) / (gamma/2 - i delta_p + (omega_c^2 / 4) / (gamma_bc - i (delta_p - delta_c))).
inline cdouble weak_probe_coherence(const LambdaSystem& sys, double delta_p) {
    sys.validate();
    const cdouble i{0.0, 1.0};
    const cdouble gamma_ab = 0.5 * sys.gamma;
    const cdouble two_photon = sys.gamma_bc - i * (delta_p - sys.delta_c);
    const double coupling = 0.25 * sys.omega_c * sys.omega_c;
    if (two_photon == cdouble{}) {
        // Exact two-photon resonance without ground-state dephasing: full transparency.
        if (coupling > 0.0) return {0.0, 0.0};
        return i * (0.5 * sys.omega_p) / (gamma_ab - i * delta_p);
    }
    return i * (0.5 * sys.omega_p) / (gamma_ab - i * delta_p + coupling / two_photon);
}

enum class SpectrumMethod { SteadyState, WeakProbe };

inline std::string_view to_string(SpectrumMethod m) {
    return m == SpectrumMethod::SteadyState ? "steady-state" : "weak-probe";
}

inline SpectrumMethod spectrum_method_from_string(std::string_view s) {
    if (s == "steady-state") return SpectrumMethod::SteadyState;
    if (s == "weak-probe") return SpectrumMethod::WeakProbe;
    throw std::invalid_argument("unknown spectrum method: " + std::string(s));
}

/// Probe absorption Im(rho_ab) / omega_p on a uniform detuning grid.
struct AbsorptionSpectrum {
    std::vector<double> detunings;
    std::vector<double> absorption;
    LambdaSystem system;
};

/// Values in [-1e-12, 0) are rounding noise and are clipped to zero.
inline constexpr double kAbsorptionClip = 1e-12;

inline double probe_absorption(const LambdaSystem& sys, SpectrumMethod method) {
    require(sys.omega_p > 0.0, "probe_absorption: omega_p must be positive");
    const double im = method == SpectrumMethod::SteadyState ? steady_state(sys)(A, B).imag()
                                                            : weak_probe_coherence(sys, sys.delta_p).imag();
    const double a = im / sys.omega_p;
    return (a < 0.0 && a >= -kAbsorptionClip) ? 0.0 : a;
}

inline AbsorptionSpectrum absorption_spectrum(const LambdaSystem& sys, double delta_min, double delta_max,
                                              std::size_t n_points,
                                              SpectrumMethod method = SpectrumMethod::SteadyState,
                                              unsigned threads = 1) {
    sys.validate();
    require(n_points >= 3, "absorption_spectrum: n_points must be >= 3");
    require(std::isfinite(delta_min) && std::isfinite(delta_max) && delta_min < delta_max,
            "absorption_spectrum: delta_min must be below delta_max");
    AbsorptionSpectrum out;
    out.system = sys;
    out.detunings.resize(n_points);
    out.absorption.resize(n_points);
    const double step = (delta_max - delta_min) / static_cast<double>(n_points - 1);
    for (std::size_t k = 0; k < n_points; ++k) out.detunings[k] = delta_min + static_cast<double>(k) * step;
    out.detunings.back() = delta_max;
    numerics::parallel_for(n_points, threads, [&](std::size_t k) {
        out.absorption[k] = probe_absorption(sys.with_probe_detuning(out.detunings[k]), method);
    });
    return out;
}

enum class WidthConvention {
    /// Interval below half of the spectrum's absolute maximum.
    AbsoluteHalfMax,
    /// Interval below the midpoint between the maximum and the dip floor.
    HalfDepth,
};

inline std::string_view to_string(WidthConvention c) {
    return c == WidthConvention::AbsoluteHalfMax ? "absolute-half-max" : "half-depth";
}

inline WidthConvention width_convention_from_string(std::string_view s) {
    if (s == "absolute-half-max") return WidthConvention::AbsoluteHalfMax;
    if (s == "half-depth") return WidthConvention::HalfDepth;
    throw std::invalid_argument("unknown width convention: " + std::string(s));
}

struct TransparencyWidth {
    double width = 0.0;
    /// False when the spectrum has no interior local minimum (NoDip).
    bool has_dip = false;
    double left = 0.0;
    double right = 0.0;
    double threshold = 0.0;
};

namespace detail {

inline double interpolate(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) return ys.front();
    if (it == xs.end()) return ys.back();
    const auto k = static_cast<std::size_t>(std::distance(xs.begin(), it));
    const double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
    return ys[k - 1] + t * (ys[k] - ys[k - 1]);
}

inline double crossing(double x0, double y0, double x1, double y1, double level) {
    if (y1 == y0) return x0;
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace detail

/// Width of the transparency window around two-photon resonance
/// (delta_p = delta_c), located by linear interpolation between samples.
/// Zero when the dip does not fall below the threshold.
inline TransparencyWidth transparency_width(const AbsorptionSpectrum& spec,
                                            WidthConvention convention = WidthConvention::AbsoluteHalfMax) {
    const auto& x = spec.detunings;
    const auto& a = spec.absorption;
    require(x.size() == a.size() && x.size() >= 3, "transparency_width: malformed spectrum");
    const double center = spec.system.delta_c;
    if (center < x.front() || center > x.back())
        throw Error(ErrorKind::SpectrumTooNarrow, "two-photon resonance lies outside the spectrum");

    TransparencyWidth out;
    const double a_max = *std::max_element(a.begin(), a.end());

    // Interior local minimum closest to the two-photon resonance.
    std::size_t dip = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k + 1 < a.size(); ++k) {
        if (a[k] < a[k - 1] && a[k] <= a[k + 1] && std::abs(x[k] - center) < best) {
            best = std::abs(x[k] - center);
            dip = k;
        }
    }
    out.has_dip = dip != 0;
    if (!out.has_dip) return out;

    out.threshold = convention == WidthConvention::AbsoluteHalfMax ? 0.5 * a_max : 0.5 * (a_max + a[dip]);
    const double at_center = detail::interpolate(x, a, center);
    if (at_center >= out.threshold) return out;

    // Walk outwards from the resonance until the absorption climbs back to the threshold.
    const auto upper = static_cast<std::size_t>(std::distance(x.begin(), std::upper_bound(x.begin(), x.end(), center)));
    std::size_t r = upper;
    while (r < x.size() && a[r] < out.threshold) ++r;
    if (r == x.size()) throw Error(ErrorKind::SpectrumTooNarrow, "no threshold crossing above resonance");
    std::size_t l = upper == 0 ? 0 : upper - 1;
    bool found_left = false;
    for (std::size_t k = l + 1; k-- > 0;) {
        if (a[k] >= out.threshold) {
            l = k;
            found_left = true;
            break;
        }
    }
    if (!found_left) throw Error(ErrorKind::SpectrumTooNarrow, "no threshold crossing below resonance");

    const double xr0 = r == upper ? center : x[r - 1];
    const double yr0 = r == upper ? at_center : a[r - 1];
    out.right = detail::crossing(xr0, yr0, x[r], a[r], out.threshold);
    const double xl1 = l + 1 == upper ? center : x[l + 1];
    const double yl1 = l + 1 == upper ? at_center : a[l + 1];
    out.left = detail::crossing(x[l], a[l], xl1, yl1, out.threshold);
    out.width = out.right - out.left;
    return out;
}

struct SpectrumSettings {
    double delta_min = -5.0;
    double delta_max = 5.0;
    std::size_t n_points = 2001;
    SpectrumMethod method = SpectrumMethod::SteadyState;
    WidthConvention convention = WidthConvention::AbsoluteHalfMax;
};

/// Transparency width against control intensity omega_c^2.
struct WindowScan {
    double gamma_bc = 0.0;
    std::vector<double> control_intensities;
    std::vector<double> widths;
    std::vector<bool> has_dip;

    /// Smallest scanned intensity with a non-zero width, or NaN if none.
    [[nodiscard]] double first_open_intensity() const {
        for (std::size_t k = 0; k < widths.size(); ++k)
            if (widths[k] > 0.0) return control_intensities[k];
        return std::numeric_limits<double>::quiet_NaN();
    }
};

inline constexpr double kWidthMonotonicSlack = 1e-6;

inline WindowScan width_scan(const LambdaSystem& base, double gamma_bc, const std::vector<double>& intensities,
                             const SpectrumSettings& settings = {}, unsigned threads = 1) {
    require(intensities.size() >= 2, "width_scan: at least two intensities are required");
    for (std::size_t k = 0; k < intensities.size(); ++k) {
        require(std::isfinite(intensities[k]) && intensities[k] >= 0.0, "width_scan: intensities must be >= 0");
        if (k > 0) require(intensities[k] > intensities[k - 1], "width_scan: intensities must be strictly increasing");
    }
    LambdaSystem sys = base;
    sys.gamma_bc = gamma_bc;
    sys.validate();

    WindowScan out;
    out.gamma_bc = gamma_bc;
    out.control_intensities = intensities;
    out.widths.resize(intensities.size());
    std::vector<char> dips(intensities.size());
    numerics::parallel_for(intensities.size(), threads, [&](std::size_t k) {
        LambdaSystem s = sys;
        s.omega_c = std::sqrt(intensities[k]);
        const auto spec = absorption_spectrum(s, settings.delta_min, settings.delta_max, settings.n_points,
                                              settings.method, 1);
        const auto w = transparency_width(spec, settings.convention);
        out.widths[k] = w.width;
        dips[k] = w.has_dip ? 1 : 0;
    });
    out.has_dip.assign(dips.begin(), dips.end());
    for (std::size_t k = 1; k < out.widths.size(); ++k) {
        if (out.widths[k] < out.widths[k - 1] - kWidthMonotonicSlack) {
            throw Error(ErrorKind::NonMonotonicScan,
                        "width decreases between intensities " + std::to_string(intensities[k - 1]) + " and " +
                            std::to_string(intensities[k]));
        }
    }
    return out;
}

}  // namespace eitlab::eit
