// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "bdlab/numeric.hpp"

namespace bdlab
{
namespace
{
void check(std::span<double const> t, std::span<double const> f)
{
    if (t.size() != f.size())
        throw std::invalid_argument("quadrature: size mismatch");
}
}  // namespace

double trapezoid(std::span<double const> t, std::span<double const> f)
{
    check(t, f);
    NeumaierSum s;
    for (std::size_t i = 1; i < t.size(); ++i)
        s += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return s.value();
}

QuadratureResult integrate_samples(std::span<double const> t, std::span<double const> f)
{
    check(t, f);
    NeumaierSum s;
    std::size_t i = 0;
    while (i + 2 < t.size())
    {
        double const h1 = t[i + 1] - t[i];
        double const h2 = t[i + 2] - t[i + 1];
        if (!(h1 > 0.0) || !(h2 > 0.0))
            throw std::invalid_argument("quadrature: times must be strictly increasing");
        // The three-point weights degrade for very lopsided pairs.
        if (h2 > 10.0 * h1 || h1 > 10.0 * h2)
        {
            s += 0.5 * h1 * (f[i] + f[i + 1]);
            ++i;
            continue;
        }
        double const H = h1 + h2;
        s += H / 6.0
             * ((2.0 - h2 / h1) * f[i] + H * H / (h1 * h2) * f[i + 1]
                + (2.0 - h1 / h2) * f[i + 2]);
        i += 2;
    }
    if (i + 1 < t.size())
        s += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
    double const trap = trapezoid(t, f);
    return {s.value(), std::fabs(s.value() - trap)};
}

QuadratureResult integrate_segments(std::span<double const> t,
                                    std::span<double const> f,
                                    std::span<std::size_t const> breaks)
{
    check(t, f);
    QuadratureResult total;
    NeumaierSum v;
    std::size_t begin = 0;
    auto run = [&](std::size_t end) {
        if (end > begin + 1)
        {
            auto const r = integrate_samples(t.subspan(begin, end - begin),
                                             f.subspan(begin, end - begin));
            v += r.value;
            total.error += r.error;
        }
        begin = end;
    };
    for (std::size_t b : breaks)
        if (b > begin && b <= t.size())
            run(b);
    run(t.size());
    total.value = v.value();
    return total;
}

}  // namespace bdlab
