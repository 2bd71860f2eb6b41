#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "eitlab/error.hpp"

namespace eitlab::eit {

using cdouble = std::complex<double>;

/// Basis ordering of the three-level atom: excited |a>, ground |b> (probe
/// transition) and ground |c> (control transition).
enum Level : int { A = 0, B = 1, C = 2 };

/// Lambda-system parameters. All rates, Rabi frequencies and detunings share
/// one unit (gamma = 1 by convention).
struct LambdaSystem {
    double gamma = 1.0;     ///< population decay rate of |a>
    double gamma_bc = 0.0;  ///< dephasing rate of the b-c coherence
    double branch_b = 0.5;  ///< fraction of |a> decay into |b>
    double branch_c = 0.5;  ///< fraction of |a> decay into |c>
    double omega_p = 0.0;   ///< probe Rabi frequency, a <-> b
    double omega_c = 0.0;   ///< control Rabi frequency, a <-> c
    double delta_p = 0.0;
    double delta_c = 0.0;

    void validate() const {
        require(std::isfinite(gamma) && gamma > 0.0, "LambdaSystem: gamma must be positive");
        require(std::isfinite(gamma_bc) && gamma_bc >= 0.0, "LambdaSystem: gamma_bc must be non-negative");
        require(branch_b >= 0.0 && branch_c >= 0.0 && std::abs(branch_b + branch_c - 1.0) < 1e-12,
                "LambdaSystem: branching fractions must be non-negative and sum to 1");
        require(std::isfinite(omega_p) && omega_p >= 0.0, "LambdaSystem: omega_p must be non-negative");
        require(std::isfinite(omega_c) && omega_c >= 0.0, "LambdaSystem: omega_c must be non-negative");
        require(std::isfinite(delta_p) && std::isfinite(delta_c), "LambdaSystem: detunings must be finite");
    }

    [[nodiscard]] LambdaSystem with_probe_detuning(double d) const {
        LambdaSystem s = *this;
        s.delta_p = d;
        return s;
    }
    [[nodiscard]] LambdaSystem with_fields(double probe, double control) const {
        LambdaSystem s = *this;
        s.omega_p = probe;
        s.omega_c = control;
        return s;
    }
};

struct StateTolerances {
    double hermiticity = 1e-12;
    double trace = 1e-9;
    double positivity = 1e-9;
};

/// 3x3 density matrix in the (a, b, c) basis.
class DensityMatrix3 {
public:
    using Matrix = Eigen::Matrix3cd;

    DensityMatrix3() : m_(Matrix::Zero()) { m_(B, B) = 1.0; }
    explicit DensityMatrix3(const Matrix& m) : m_(m) {}

    static DensityMatrix3 basis(Level level) {
        Matrix m = Matrix::Zero();
        m(level, level) = 1.0;
        return DensityMatrix3(m);
    }

    /// Projector onto the normalized pure state with the given amplitudes.
    static DensityMatrix3 pure(const Eigen::Vector3cd& psi) {
        const Eigen::Vector3cd v = psi.normalized();
        return DensityMatrix3(v * v.adjoint());
    }

    /// Dark state of the resonant system, proportional to omega_c |b> - omega_p |c>.
    static DensityMatrix3 dark_state(double omega_p, double omega_c) {
        return pure(Eigen::Vector3cd(0.0, omega_c, -omega_p));
    }

    [[nodiscard]] cdouble operator()(Level i, Level j) const { return m_(i, j); }
    [[nodiscard]] const Matrix& matrix() const noexcept { return m_; }

    [[nodiscard]] double population(Level i) const { return m_(i, i).real(); }
    [[nodiscard]] cdouble trace() const { return m_.trace(); }

    [[nodiscard]] double hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }
    [[nodiscard]] double trace_error() const { return std::abs(m_.trace() - 1.0); }
    [[nodiscard]] double min_eigenvalue() const {
        const Matrix h = 0.5 * (m_ + m_.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    [[nodiscard]] bool is_valid(const StateTolerances& tol = {}) const {
        return hermiticity_error() <= tol.hermiticity && trace_error() <= tol.trace &&
               min_eigenvalue() >= -tol.positivity;
    }

private:
    Matrix m_;
};

}  // namespace eitlab::eit
