#pragma once

#include "eitlab/error.hpp"

namespace eitlab::numerics {

/// Generalized Laguerre polynomial L_p^alpha(x) by upward three-term recurrence.
inline double laguerre_poly(int p, int alpha, double x) {
    require(p >= 0 && alpha >= 0, "laguerre_poly: p and alpha must be non-negative");
    double prev = 1.0;
    if (p == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 2; k <= p; ++k) {
        const double next = ((2.0 * k - 1.0 + alpha - x) * cur - (k - 1.0 + alpha) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace eitlab::numerics
