#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "eitlab/numerics/grid.hpp"

namespace testing_support {

/// ||f - g|| / ||g|| over all samples.
inline double relative_rms(const eitlab::numerics::ComplexField& f, const eitlab::numerics::ComplexField& g) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < g.samples().size(); ++k) {
        num += std::norm(f.samples()[k] - g.samples()[k]);
        den += std::norm(g.samples()[k]);
    }
    return std::sqrt(num / den);
}

/// Sum_{m=0}^{p} (-1)^m C(p + alpha, p - m) x^m / m!
inline double laguerre_explicit(int p, int alpha, double x) {
    double sum = 0.0;
    for (int m = 0; m <= p; ++m) {
        const double binom = std::exp(std::lgamma(p + alpha + 1.0) - std::lgamma(p - m + 1.0) - std::lgamma(alpha + m + 1.0));
        sum += (m % 2 ? -1.0 : 1.0) * binom * std::pow(x, m) / std::tgamma(m + 1.0);
    }
    return sum;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace testing_support
