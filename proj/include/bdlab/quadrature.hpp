// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bdlab
{
struct QuadratureResult
{
    double value{0};
    double error{0};  //!< |Simpson - trapezoid|, a conservative estimate
};

/*!
 * Integrate samples f(t_i) over strictly increasing, possibly nonuniform t_i.
 *
 * Pairs of intervals use the nonuniform Simpson rule; a trailing odd interval
 * uses the trapezoid rule.
 */
QuadratureResult integrate_samples(std::span<double const> t, std::span<double const> f);

//! Trapezoid rule on the same samples.
double trapezoid(std::span<double const> t, std::span<double const> f);

/*!
 * Piecewise integration over segments delimited by break indices.
 *
 * Sample i belongs to segment k when breaks[k-1] <= i < breaks[k]; each
 * segment is integrated independently, which keeps the rule from spanning a
 * jump. Consecutive segments must share their boundary time.
 */
QuadratureResult integrate_segments(std::span<double const> t,
                                    std::span<double const> f,
                                    std::span<std::size_t const> breaks);

}  // namespace bdlab
