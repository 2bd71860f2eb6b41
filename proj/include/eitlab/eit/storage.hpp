#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "eitlab/eit/evolve.hpp"

namespace eitlab::eit {

/// Write / store / read timeline, all times in units of 1/gamma.
///
/// The probe is a sin^2 pulse on [0, 2 pulse_width]. The control sits at
/// omega_c_peak, ramps down with a cos^2 edge that ends together with the probe
/// at t1 = 2 pulse_width, stays off for storage_time, ramps back up with a sin^2
/// edge starting at t2 = t1 + storage_time, and stays on for retrieval_time.
/// Both fields are exactly zero on [t1, t2].
struct StorageProtocol {
    double omega_p_peak = 0.05;
    double omega_c_peak = 1.0;
    double pulse_width = 5.0;
    double ramp_time = 5.0;
    double storage_time = 10.0;
    double retrieval_time = 20.0;
    double sample_interval = 0.05;

    void validate() const {
        require(std::isfinite(omega_p_peak) && omega_p_peak > 0.0, "storage: omega_p_peak must be positive");
        require(std::isfinite(omega_c_peak) && omega_c_peak > 0.0, "storage: omega_c_peak must be positive");
        require(std::isfinite(pulse_width) && pulse_width > 0.0, "storage: pulse_width must be positive");
        require(std::isfinite(ramp_time) && ramp_time > 0.0, "storage: ramp_time must be positive");
        require(ramp_time <= 2.0 * pulse_width, "storage: ramp_time must not exceed the probe duration");
        require(std::isfinite(storage_time) && storage_time >= 0.0, "storage: storage_time must be non-negative");
        require(std::isfinite(retrieval_time) && retrieval_time > 0.0, "storage: retrieval_time must be positive");
        require(std::isfinite(sample_interval) && sample_interval > 0.0, "storage: sample_interval must be positive");
    }

    [[nodiscard]] double store_time() const { return 2.0 * pulse_width; }
    [[nodiscard]] double release_time() const { return store_time() + storage_time; }
    [[nodiscard]] double end_time() const { return release_time() + ramp_time + retrieval_time; }

    [[nodiscard]] double probe(double t) const {
        if (t <= 0.0 || t >= store_time()) return 0.0;
        const double s = std::sin(std::numbers::pi * t / store_time());
        return omega_p_peak * s * s;
    }

    [[nodiscard]] double control(double t) const {
        const double t1 = store_time();
        const double t2 = release_time();
        if (t <= t1 - ramp_time) return omega_c_peak;
        if (t < t1) {
            const double c = std::cos(0.5 * std::numbers::pi * (t - (t1 - ramp_time)) / ramp_time);
            return omega_c_peak * c * c;
        }
        if (t <= t2) return 0.0;
        if (t < t2 + ramp_time) {
            const double s = std::sin(0.5 * std::numbers::pi * (t - t2) / ramp_time);
            return omega_c_peak * s * s;
        }
        return omega_c_peak;
    }
};

struct StorageResult {
    Trajectory trajectory;
    double t1 = 0.0;
    double t2 = 0.0;
    /// |rho_bc| when both fields have switched off.
    double stored_coherence = 0.0;
    /// |rho_bc| when the control starts to return.
    double coherence_at_release = 0.0;
    /// coherence_at_release / stored_coherence.
    double survival = 0.0;
    /// Largest |rho_bc(t)| / (|rho_bc(t1)| exp(-gamma_bc (t - t1))) - 1 over the storage interval.
    double decay_law_deviation = 0.0;
    /// Peak |rho_ab| while writing (t <= t1).
    double write_peak = 0.0;
    /// Peak |rho_ab| after the control returns (t >= t2).
    double retrieved_peak = 0.0;
    /// retrieved_peak / write_peak.
    double efficiency = 0.0;
};

/// Runs the write-store-read cycle from |b><b|. Static omega_p and omega_c in
/// `sys` are ignored; the protocol supplies both envelopes.
inline StorageResult store_and_retrieve(const LambdaSystem& sys, const StorageProtocol& protocol,
                                        const EvolveOptions& base_options = {}) {
    sys.validate();
    protocol.validate();
    Controls controls;
    controls.omega_p = [&](double t) { return protocol.probe(t); };
    controls.omega_c = [&](double t) { return protocol.control(t); };
    const double t1 = protocol.store_time();
    const double t2 = protocol.release_time();
    controls.breakpoints = {t1 - protocol.ramp_time, t1, t2, t2 + protocol.ramp_time};

    EvolveOptions options = base_options;
    options.sample_interval = protocol.sample_interval;
    StorageResult out;
    out.t1 = t1;
    out.t2 = t2;
    out.trajectory = evolve(sys, DensityMatrix3::basis(B), protocol.end_time(), controls, options);

    const auto& times = out.trajectory.times;
    const auto& states = out.trajectory.states;
    auto index_of = [&](double t) {
        const auto it = std::min_element(times.begin(), times.end(),
                                         [&](double u, double v) { return std::abs(u - t) < std::abs(v - t); });
        return static_cast<std::size_t>(std::distance(times.begin(), it));
    };
    const std::size_t i1 = index_of(t1);
    const std::size_t i2 = index_of(t2);
    out.stored_coherence = std::abs(states[i1](B, C));
    out.coherence_at_release = std::abs(states[i2](B, C));
    out.survival = out.stored_coherence > 0.0 ? out.coherence_at_release / out.stored_coherence : 0.0;
    for (std::size_t k = i1; k <= i2; ++k) {
        const double expected = out.stored_coherence * std::exp(-sys.gamma_bc * (times[k] - t1));
        if (expected > 0.0)
            out.decay_law_deviation = std::max(out.decay_law_deviation, std::abs(std::abs(states[k](B, C)) / expected - 1.0));
    }
    for (std::size_t k = 0; k <= i1; ++k) out.write_peak = std::max(out.write_peak, std::abs(states[k](A, B)));
    for (std::size_t k = i2; k < states.size(); ++k)
        out.retrieved_peak = std::max(out.retrieved_peak, std::abs(states[k](A, B)));
    out.efficiency = out.write_peak > 0.0 ? out.retrieved_peak / out.write_peak : 0.0;
    return out;
}

}  // namespace eitlab::eit
