// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace bdlab
{
//! Logarithmic mean (a - b)/(log a - log b), continuously extended by
//! Lambda(a, a) = a and Lambda(0, b) = Lambda(a, 0) = 0.
inline double log_mean(double a, double b)
{
    if (a <= 0.0 || b <= 0.0)
        return 0.0;
    double const d = a - b;
    if (std::fabs(d) <= 1e-8 * (a + b))
    {
        double const m = 0.5 * (a + b);
        double const r = d / m;
        double const r2 = r * r;
        return m * (1.0 - r2 / 12.0 - r2 * r2 / 180.0);
    }
    if (a < 2.0 * b && b < 2.0 * a)
        return d / std::log1p(d / b);
    return d / (std::log(a) - std::log(b));
}

}  // namespace bdlab
