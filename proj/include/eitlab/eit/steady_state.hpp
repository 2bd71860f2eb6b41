#pragma once

#include <Eigen/Dense>

#include "eitlab/eit/master_equation.hpp"

namespace eitlab::eit {

/// Singular-direction threshold relative to the largest pivot.
inline constexpr double kKernelThreshold = 1e-12;

/// Unique solution of L(rho) = 0 with unit trace. The most linearly dependent
/// equation (last pivot of a column-pivoted QR of L^T) is replaced by the trace
/// condition before a dense LU solve.
inline DensityMatrix3 steady_state(const LambdaSystem& sys) {
    const Liouvillian l = liouvillian(sys);
    Eigen::ColPivHouseholderQR<Liouvillian> qr(l.transpose());
    qr.setThreshold(kKernelThreshold);
    if (qr.rank() < 8) {
        throw Error(ErrorKind::NonUniqueSteadyState,
                    "generator kernel has dimension " + std::to_string(9 - qr.rank()));
    }
    const int dependent = qr.colsPermutation().indices()(8);

    Liouvillian system = l;
    system.row(dependent).setZero();
    system(dependent, 3 * A + A) = 1.0;
    system(dependent, 3 * B + B) = 1.0;
    system(dependent, 3 * C + C) = 1.0;
    StateVector rhs = StateVector::Zero();
    rhs(dependent) = 1.0;

    const StateVector x = system.partialPivLu().solve(rhs);
    Eigen::Matrix3cd rho = unvectorize(x);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return DensityMatrix3(rho);
}

/// Max-norm of L(rho).
inline double generator_residual(const LambdaSystem& sys, const DensityMatrix3& rho) {
    return apply_generator(sys, rho.matrix()).cwiseAbs().maxCoeff();
}

}  // namespace eitlab::eit
