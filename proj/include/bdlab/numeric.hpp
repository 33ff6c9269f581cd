// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace bdlab
{
//! Compensated (Neumaier) running sum.
class NeumaierSum
{
  public:
    NeumaierSum& operator+=(double x)
    {
        double const t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_{0};
    double comp_{0};
};

//! log(sum exp(v)) over a span; -inf for an empty span.
inline double log_sum_exp(std::span<double const> v)
{
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v)
        m = std::fmax(m, x);
    if (!std::isfinite(m))
        return m;
    NeumaierSum s;
    for (double x : v)
        s += std::exp(x - m);
    return m + std::log(s.value());
}

//! log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b)
{
    if (a < b)
        std::swap(a, b);
    if (a == -std::numeric_limits<double>::infinity())
        return a;
    return a + std::log1p(std::exp(b - a));
}

inline double infinity()
{
    return std::numeric_limits<double>::infinity();
}

}  // namespace bdlab
