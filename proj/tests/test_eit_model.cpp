#include <gtest/gtest.h>

#include <random>

#include "eitlab/eit/evolve.hpp"
#include "eitlab/eit/spectrum.hpp"
#include "eitlab/eit/steady_state.hpp"
#include "support.hpp"

using namespace eitlab;
using namespace eitlab::eit;
using testing_support::uniform;

namespace {

LambdaSystem random_system(std::mt19937_64& rng) {
    LambdaSystem s;
    s.gamma_bc = uniform(rng, 0.0, 0.5);
    s.branch_b = uniform(rng, 0.2, 0.8);
    s.branch_c = 1.0 - s.branch_b;
    s.omega_p = uniform(rng, 0.0, 1.0);
    s.omega_c = uniform(rng, 0.0, 2.0);
    s.delta_p = uniform(rng, -2.0, 2.0);
    s.delta_c = uniform(rng, -2.0, 2.0);
    return s;
}

Eigen::Matrix3cd random_density(std::mt19937_64& rng) {
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    Eigen::Matrix3cd rho = m * m.adjoint();
    return rho / rho.trace();
}

/// Two-level steady state with decay gamma and Rabi frequency omega: Im(rho_ab) / omega.
double two_level_absorption(double gamma, double omega, double delta) {
    return 0.25 * gamma / (delta * delta + 0.25 * gamma * gamma + 0.5 * omega * omega);
}

void expect_valid_trajectory(const Trajectory& t) {
    for (const auto& rho : t.states) {
        EXPECT_LT(rho.trace_error(), 1e-9);
        EXPECT_LT(rho.hermiticity_error(), 1e-10);
        EXPECT_GE(rho.min_eigenvalue(), -1e-9);
    }
}

}  // namespace

TEST(LambdaSystem, Validation) {
    LambdaSystem s;
    EXPECT_NO_THROW(s.validate());
    s.branch_b = 0.6;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.branch_c = 0.4;
    EXPECT_NO_THROW(s.validate());
    s.gamma_bc = -0.1;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s.gamma_bc = 0.0;
    s.omega_c = std::nan("");
    EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(DensityMatrix, Constructors) {
    EXPECT_EQ(DensityMatrix3().population(B), 1.0);
    EXPECT_EQ(DensityMatrix3::basis(A).population(A), 1.0);
    const auto d = DensityMatrix3::dark_state(0.3, 0.4);
    EXPECT_NEAR(d.population(B), 0.64, 1e-15);
    EXPECT_NEAR(d(B, C).real(), -0.48, 1e-15);
    EXPECT_TRUE(d.is_valid());
    Eigen::Matrix3cd bad = Eigen::Matrix3cd::Zero();
    bad(A, A) = 1.5;
    bad(B, B) = -0.5;
    EXPECT_FALSE(DensityMatrix3(bad).is_valid());
}

TEST(Liouvillian, MatchesDirectGenerator) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto sys = random_system(rng);
        const auto rho = random_density(rng);
        const StateVector lhs = liouvillian(sys) * vectorize(rho);
        EXPECT_LT((unvectorize(lhs) - apply_generator(sys, rho)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Liouvillian, TracePreservingAndHermiticityPreserving) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        const auto sys = random_system(rng);
        const Eigen::Matrix3cd out = apply_generator(sys, random_density(rng));
        EXPECT_LT(std::abs(out.trace()), 1e-14);
        EXPECT_LT((out - out.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Liouvillian, PureDecayOfMaximallyMixedState) {
    LambdaSystem s;
    const Eigen::Matrix3cd rho = Eigen::Matrix3cd::Identity() / 3.0;
    const Eigen::Matrix3cd out = apply_generator(s, rho);
    EXPECT_NEAR(out(A, A).real(), -s.gamma / 3.0, 1e-15);
    EXPECT_NEAR(out(B, B).real(), s.branch_b * s.gamma / 3.0, 1e-15);
    EXPECT_NEAR(out(C, C).real(), s.branch_c * s.gamma / 3.0, 1e-15);
}

TEST(Liouvillian, GroundCoherenceDephasesAtGammaBc) {
    LambdaSystem s;
    s.gamma_bc = 0.37;
    Eigen::Matrix3cd rho = Eigen::Matrix3cd::Zero();
    rho(B, B) = rho(C, C) = 0.5;
    rho(B, C) = {0.3, 0.2};
    rho(C, B) = std::conj(rho(B, C));
    const Eigen::Matrix3cd out = apply_generator(s, rho);
    EXPECT_NEAR(std::abs(out(B, C) + s.gamma_bc * rho(B, C)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out(B, B)), 0.0, 1e-15);
}

TEST(SteadyState, DarkStateAtTwoPhotonResonance) {
    LambdaSystem s;
    s.omega_p = 0.2;
    s.omega_c = 0.7;
    s.delta_c = 0.4;
    s.delta_p = 0.4;
    const auto rho = steady_state(s);
    const auto dark = DensityMatrix3::dark_state(s.omega_p, s.omega_c);
    EXPECT_LT((rho.matrix() - dark.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(rho.population(A), 1e-12);
    EXPECT_LT(std::abs(rho(A, B).imag()), 1e-12);
}

TEST(SteadyState, ResidualAndValidityOnRandomSystems) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_system(rng);
        s.omega_p = uniform(rng, 1e-3, 1.0);
        s.omega_c = uniform(rng, 1e-2, 2.0);
        const auto rho = steady_state(s);
        EXPECT_LT(generator_residual(s, rho), 1e-10);
        EXPECT_TRUE(rho.is_valid());
    }
}

TEST(SteadyState, DegenerateKernelRejected) {
    LambdaSystem s;
    try {
        static_cast<void>(steady_state(s));
        FAIL() << "expected NonUniqueSteadyState";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonUniqueSteadyState);
    }
}

TEST(SteadyState, AgreesWithLongEvolutionForStrongFields) {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 8; ++trial) {
        auto s = random_system(rng);
        s.omega_p = uniform(rng, 0.3, 1.0);
        s.omega_c = uniform(rng, 0.5, 2.0);
        s.gamma_bc = uniform(rng, 0.05, 0.5);
        const auto traj = evolve(s, DensityMatrix3(), 200.0);
        EXPECT_LT((traj.final_state().matrix() - steady_state(s).matrix()).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(SteadyState, OpticalPumpingEmptiesTheProbeGroundState) {
    LambdaSystem s;
    s.omega_p = 1e-3;
    const auto rho = steady_state(s);
    EXPECT_NEAR(rho.population(C), 1.0, 1e-12);
    EXPECT_NEAR(rho(A, B).imag(), 0.0, 1e-15);
}

TEST(Evolve, TwoLevelLimitMatchesClosedForm) {
    LambdaSystem s;
    s.branch_b = 1.0;
    s.branch_c = 0.0;
    for (double omega : {1e-3, 0.3, 1.2}) {
        for (double delta : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
            s.omega_p = omega;
            s.delta_p = delta;
            const auto traj = evolve(s, DensityMatrix3::basis(B), 200.0);
            const double got = traj.final_state()(A, B).imag() / omega;
            EXPECT_NEAR(got / two_level_absorption(s.gamma, omega, delta), 1.0, 1e-6) << omega << " " << delta;
            expect_valid_trajectory(traj);
        }
    }
}

TEST(Evolve, GroundStateWithoutCouplingIsStationary) {
    const auto traj = evolve(LambdaSystem{}, DensityMatrix3::basis(B), 50.0, {}, {1e-9, 1e-12, 1.0});
    for (const auto& rho : traj.states) EXPECT_LT((rho.matrix() - DensityMatrix3::basis(B).matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Evolve, ExcitedStateDecaysExponentially) {
    const auto traj = evolve(LambdaSystem{}, DensityMatrix3::basis(A), 10.0, {}, {1e-9, 1e-12, 0.5});
    ASSERT_EQ(traj.times.size(), 21u);
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        EXPECT_NEAR(traj.states[k].population(A), std::exp(-traj.times[k]), 1e-8);
    expect_valid_trajectory(traj);
}

TEST(Evolve, DarkStateIsStationary) {
    LambdaSystem s;
    s.omega_p = 0.4;
    s.omega_c = 0.9;
    const auto dark = DensityMatrix3::dark_state(s.omega_p, s.omega_c);
    const auto traj = evolve(s, dark, 50.0, {}, {1e-9, 1e-12, 1.0});
    for (const auto& rho : traj.states) EXPECT_LT((rho.matrix() - dark.matrix()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Evolve, LandsOnSamplesAndBreakpoints) {
    LambdaSystem s;
    Controls c;
    c.omega_p = [](double t) { return t < 1.3 ? 0.5 : 0.0; };
    c.breakpoints = {1.3, 7.0};
    const auto traj = evolve(s, DensityMatrix3(), 2.0, c, {1e-9, 1e-12, 0.5});
    const std::vector<double> expected{0.0, 0.5, 1.0, 1.3, 1.5, 2.0};
    EXPECT_EQ(traj.times, expected);
    expect_valid_trajectory(traj);
}

TEST(Evolve, StepSizeUnderflowReported) {
    LambdaSystem s;
    s.omega_p = 1e4;
    EvolveOptions o;
    o.min_step = 0.1;
    try {
        static_cast<void>(evolve(s, DensityMatrix3(), 10.0, {}, o));
        FAIL() << "expected StepSizeUnderflow";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::StepSizeUnderflow);
    }
    EXPECT_THROW(evolve(s, DensityMatrix3(), 0.0), std::invalid_argument);
}

TEST(WeakProbe, PerfectTransparencyAndLorentzianLimit) {
    LambdaSystem s;
    s.omega_p = 1e-3;
    s.omega_c = 0.8;
    s.delta_c = 0.3;
    EXPECT_EQ(weak_probe_coherence(s, 0.3), cdouble(0.0, 0.0));
    s.omega_c = 0.0;
    for (double d : {-3.0, 0.0, 0.2, 4.0}) {
        const cdouble expected = cdouble{0.0, 0.5 * s.omega_p} / (cdouble{0.5, 0.0} - cdouble{0.0, d});
        EXPECT_NEAR(std::abs(weak_probe_coherence(s, d) - expected), 0.0, 1e-18);
    }
}

TEST(WeakProbe, AbsorptionNonNegative) {
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 500; ++trial) {
        auto s = random_system(rng);
        EXPECT_GE(weak_probe_coherence(s, uniform(rng, -5.0, 5.0)).imag(), 0.0);
    }
}

TEST(WeakProbe, ErrorAgainstFullSolverGrowsWithProbeStrength) {
    LambdaSystem s;
    s.omega_c = 1.0;
    s.gamma_bc = 0.15;
    double previous = 0.0;
    for (double omega : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
        s.omega_p = omega;
        double worst = 0.0;
        for (int k = 0; k <= 100; ++k) {
            const double d = -5.0 + 0.1 * k;
            const double full = steady_state(s.with_probe_detuning(d))(A, B).imag();
            const double weak = weak_probe_coherence(s, d).imag();
            worst = std::max(worst, std::abs(weak - full) / std::abs(full));
        }
        EXPECT_GT(worst, previous) << omega;
        previous = worst;
    }
}
