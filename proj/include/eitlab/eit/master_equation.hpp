#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "eitlab/eit/lambda_system.hpp"

namespace eitlab::eit {

using Liouvillian = Eigen::Matrix<cdouble, 9, 9>;
using StateVector = Eigen::Matrix<cdouble, 9, 1>;

/// Rotating-frame Hamiltonian with couplings -Omega/2. The resonant dark state
/// is omega_c |b> - omega_p |c>.
inline Eigen::Matrix3cd hamiltonian(const LambdaSystem& sys) {
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(A, A) = -sys.delta_p;
    h(C, C) = -(sys.delta_p - sys.delta_c);
    h(A, B) = h(B, A) = -0.5 * sys.omega_p;
    h(A, C) = h(C, A) = -0.5 * sys.omega_c;
    return h;
}

/// d(rho)/dt = -i[H, rho] + sum_k (L_k rho L_k^+ - {L_k^+ L_k, rho}/2) with
/// L_1 = sqrt(branch_b gamma)|b><a|, L_2 = sqrt(branch_c gamma)|c><a| and
/// L_3 = sqrt(2 gamma_bc)|c><c|. The last channel damps rho_bc at exactly
/// gamma_bc and leaves the probe coherence rho_ab untouched.
inline Eigen::Matrix3cd apply_generator(const LambdaSystem& sys, const Eigen::Matrix3cd& rho) {
    const Eigen::Matrix3cd h = hamiltonian(sys);
    const cdouble minus_i{0.0, -1.0};
    Eigen::Matrix3cd out = minus_i * (h * rho - rho * h);

    const double rate_b = sys.branch_b * sys.gamma;
    const double rate_c = sys.branch_c * sys.gamma;
    const cdouble raa = rho(A, A);
    // Spontaneous decay out of |a>.
    out(B, B) += rate_b * raa;
    out(C, C) += rate_c * raa;
    const double g = sys.gamma;
    out(A, A) -= g * raa;
    for (int k : {B, C}) {
        out(A, k) -= 0.5 * g * rho(A, k);
        out(k, A) -= 0.5 * g * rho(k, A);
    }
    // Dephasing of |c>: off-diagonal elements touching c (other than c-c) damp at gamma_bc.
    const double d = sys.gamma_bc;
    for (int k : {A, B}) {
        out(k, C) -= d * rho(k, C);
        out(C, k) -= d * rho(C, k);
    }
    return out;
}

inline StateVector vectorize(const Eigen::Matrix3cd& m) {
    StateVector v;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v(3 * i + j) = m(i, j);
    return v;
}

inline Eigen::Matrix3cd unvectorize(const StateVector& v) {
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = v(3 * i + j);
    return m;
}

/// The generator as a 9x9 matrix acting on row-major vectorized rho.
inline Liouvillian liouvillian(const LambdaSystem& sys) {
    sys.validate();
    Liouvillian l;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
            e(i, j) = 1.0;
            l.col(3 * i + j) = vectorize(apply_generator(sys, e));
        }
    }
    return l;
}

}  // namespace eitlab::eit
