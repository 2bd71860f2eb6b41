#include <gtest/gtest.h>

#include <numbers>

#include "eitlab/holography/holography.hpp"
#include "support.hpp"

using namespace eitlab;
using namespace eitlab::holo;
using numerics::ComplexField;
using numerics::Grid2D;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kW0 = 1e-3;
constexpr double kLambda = 795e-9;
constexpr double kPeriod = 100e-6;

double order_fraction(const ComplexField& input, const HologramPattern& pattern, int order) {
    return numerics::power(extract_order(apply_mask(input, pattern), order, pattern.period())) / numerics::power(input);
}

ComplexField gaussian_input(const Grid2D& g) { return lg::render_mode(lg::LGMode(0, 0, kW0, kLambda), g, 0.0); }

}  // namespace

TEST(HologramKind, StringRoundTrip) {
    for (auto k : {HologramKind::AmplitudeSinusoidal, HologramKind::AmplitudeBinary, HologramKind::Phase})
        EXPECT_EQ(hologram_kind_from_string(to_string(k)), k);
    EXPECT_THROW(hologram_kind_from_string("hologram"), std::invalid_argument);
}

TEST(ForkGrating, PeriodMustExceedTwoSamples) {
    const auto g = Grid2D::square(64, 6.4e-3);
    try {
        static_cast<void>(fork_grating(1, 2.0 * g.dx(), HologramKind::Phase, g));
        FAIL() << "expected PeriodTooSmall";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PeriodTooSmall);
    }
    EXPECT_NO_THROW(fork_grating(1, 2.01 * g.dx(), HologramKind::Phase, g));
}

TEST(ForkGrating, ValueRanges) {
    const auto g = Grid2D::square(128, 4e-3);
    for (int charge : {-2, 0, 3}) {
        for (auto kind : {HologramKind::AmplitudeSinusoidal, HologramKind::AmplitudeBinary, HologramKind::Phase}) {
            const auto p = fork_grating(charge, kPeriod, kind, g);
            for (double v : p.values()) {
                EXPECT_GE(v, 0.0);
                EXPECT_LT(v, is_amplitude(kind) ? 1.0 + 1e-15 : 2.0 * kPi);
            }
            if (kind == HologramKind::AmplitudeBinary) {
                for (std::size_t k = 0; k < p.values().size(); ++k)
                    if (k != g.index(64, 64) || charge == 0) {
                        EXPECT_TRUE(p.values()[k] == 0.0 || p.values()[k] == 1.0);
                    }
            }
        }
    }
}

TEST(ForkGrating, PlainGratingWithoutCharge) {
    const auto g = Grid2D::square(128, 4e-3);
    const auto p = fork_grating(0, kPeriod, HologramKind::AmplitudeSinusoidal, g);
    for (std::size_t j = 0; j < g.ny(); j += 7)
        for (std::size_t i = 0; i < g.nx(); ++i)
            EXPECT_NEAR(p.at(i, j), 0.5 * (1.0 + std::cos(2.0 * kPi * g.x(i) / kPeriod)), 1e-14);
}

TEST(ForkGrating, SingularSampleIsHalfTransmitting) {
    const auto g = Grid2D::square(128, 4e-3);
    EXPECT_EQ(fork_grating(1, kPeriod, HologramKind::AmplitudeSinusoidal, g).at(64, 64), 0.5);
    EXPECT_EQ(fork_grating(2, kPeriod, HologramKind::AmplitudeBinary, g).at(64, 64), 0.5);
}

TEST(ForkGrating, PhaseWindsByChargeAroundDislocation) {
    const auto g = Grid2D::square(256, 4e-3);
    for (int charge : {-2, 1, 3}) {
        const auto p = fork_grating(charge, kPeriod, HologramKind::Phase, g);
        double total = 0.0;
        double prev = 0.0;
        const int steps = 720;
        const double radius = 1e-3;
        for (int s = 0; s <= steps; ++s) {
            const double phi = 2.0 * kPi * s / steps;
            const auto i = static_cast<std::size_t>(std::lround(radius * std::cos(phi) / g.dx())) + g.nx() / 2;
            const auto j = static_cast<std::size_t>(std::lround(radius * std::sin(phi) / g.dy())) + g.ny() / 2;
            const double v = p.at(i, j) - 2.0 * kPi * g.x(i) / kPeriod;
            if (s > 0) total += std::remainder(v - prev, 2.0 * kPi);
            prev = v;
        }
        EXPECT_NEAR(total, 2.0 * kPi * charge, 1e-9) << charge;
    }
}

TEST(ApplyMask, GridMismatch) {
    const auto p = fork_grating(1, kPeriod, HologramKind::Phase, Grid2D::square(128, 4e-3));
    const auto f = ComplexField::zeros(Grid2D::square(128, 5e-3), kLambda);
    try {
        static_cast<void>(apply_mask(f, p));
        FAIL() << "expected GridMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::GridMismatch);
    }
}

TEST(ExtractOrder, EvanescentOrderRejected) {
    const auto g = Grid2D::square(64, 64 * 0.2e-6);
    const auto f = ComplexField(g, kLambda, std::vector<cdouble>(g.size(), 1.0));
    try {
        static_cast<void>(extract_order(f, 1, 0.7e-6));
        FAIL() << "expected EvanescentOrder";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::EvanescentOrder);
    }
    EXPECT_NO_THROW(extract_order(f, 0, 0.7e-6));
}

TEST(ExtractOrder, SinusoidalOrderBookkeeping) {
    const auto g = Grid2D::square(256, 8e-3);
    const auto in = gaussian_input(g);
    const auto p = fork_grating(0, kPeriod, HologramKind::AmplitudeSinusoidal, g);
    const double f0 = order_fraction(in, p, 0);
    const double fp = order_fraction(in, p, 1);
    const double fm = order_fraction(in, p, -1);
    EXPECT_NEAR(f0, 0.25, 1e-6);
    EXPECT_NEAR(fp, 1.0 / 16.0, 1e-6);
    EXPECT_NEAR(fm, 1.0 / 16.0, 1e-6);
    EXPECT_LT(order_fraction(in, p, 2), 1e-6);
    EXPECT_LT(order_fraction(in, p, -2), 1e-6);
    EXPECT_NEAR(f0 + fp + fm, 0.375, 1e-6);
}

TEST(ExtractOrder, BinaryGratingFirstOrder) {
    const auto g = Grid2D::square(1024, 8e-3);
    const auto p = fork_grating(0, kPeriod, HologramKind::AmplitudeBinary, g);
    EXPECT_NEAR(order_fraction(gaussian_input(g), p, 1) * kPi * kPi, 1.0, 0.02);
}

TEST(ExtractOrder, BlazedPhaseGratingIsEfficient) {
    const auto g = Grid2D::square(256, 8e-3);
    const auto p = fork_grating(0, kPeriod, HologramKind::Phase, g);
    EXPECT_GT(order_fraction(gaussian_input(g), p, 1), 0.85);
}

TEST(FocalPlane, GaussianFocusesToDiffractionLimitedSpot) {
    const auto g = Grid2D::square(256, 8e-3);
    const double f = 0.5;
    const auto focus = focal_plane(gaussian_input(g), f);
    EXPECT_NEAR(numerics::power(focus), 1.0, 1e-9);
    const double wf = kLambda * f / (kPi * kW0);
    const auto& h = focus.grid();
    std::vector<cdouble> expected(h.size());
    for (std::size_t j = 0; j < h.ny(); ++j)
        for (std::size_t i = 0; i < h.nx(); ++i) {
            const double r2 = h.x(i) * h.x(i) + h.y(j) * h.y(j);
            expected[h.index(i, j)] = cdouble{0.0, -1.0} * std::sqrt(2.0 / kPi) / wf * std::exp(-r2 / (wf * wf));
        }
    EXPECT_LT(testing_support::relative_rms(focus, ComplexField(h, kLambda, std::move(expected))), 1e-6);
}

TEST(GoldenSection, FindsMaximum) {
    const double x = golden_section_maximize([](double v) { return -(v - 0.3) * (v - 0.3); }, -1.0, 2.0, 1e-9);
    EXPECT_NEAR(x, 0.3, 1e-8);
}

TEST(SimulateGeneration, DominantModeFollowsCharge) {
    const auto g = Grid2D::square(256, 8e-3);
    for (int charge : {0, 1, -1, 2}) {
        const auto r = simulate_generation(kW0, kLambda, charge, kPeriod, HologramKind::AmplitudeSinusoidal, g);
        EXPECT_EQ(r.dominant_mode.ell, charge);
        EXPECT_EQ(r.dominant_mode.p, 0);
        EXPECT_GT(r.purity, 0.8);
        if (charge != 0) {
            EXPECT_LT(on_axis_ratio(r.focal_field), 1e-4);
        } else {
            EXPECT_GT(r.purity, 0.99);
            EXPECT_NEAR(r.order_efficiency, 1.0 / 16.0, 1e-6);
        }
    }
}

TEST(SimulateGeneration, PurityConvergesWithResolution) {
    const auto coarse = simulate_generation(kW0, kLambda, 1, kPeriod, HologramKind::AmplitudeSinusoidal,
                                            Grid2D::square(256, 8e-3));
    const auto fine = simulate_generation(kW0, kLambda, 1, kPeriod, HologramKind::AmplitudeSinusoidal,
                                          Grid2D::square(512, 8e-3));
    EXPECT_NEAR(coarse.purity / fine.purity, 1.0, 0.01);
}

TEST(SimulateGeneration, PhaseHologramProducesVortex) {
    const auto r = simulate_generation(kW0, kLambda, 2, kPeriod, HologramKind::Phase, Grid2D::square(256, 8e-3));
    EXPECT_EQ(r.dominant_mode.ell, 2);
    EXPECT_GT(r.order_efficiency, 0.8);
}
