// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"
#include "bdlab/rates.hpp"

namespace bdlab
{
namespace
{
// (x^{1-2g} - 1)/(1 - 2g), or log x on the singular branch
double second_order_term(RateParams const& p, double x)
{
    if (p.log_branch())
        return std::log(x);
    double const e = 1.0 - 2.0 * p.gamma;
    return std::expm1(e * std::log(x)) / e;
}

// int_2^L log(1 + c x^-gamma) dx, integrated in s = log x
double integral_to(RateParams const& p, double L)
{
    double const c = p.q / p.z_s;
    auto f = [&](double s) {
        double const x = std::exp(s);
        return std::log1p(c * std::exp(-p.gamma * s)) * x;
    };
    using boost::math::quadrature::gauss_kronrod;
    double const a = std::log(2.0);
    double const b = std::log(L);
    // Panels of unit width in s keep each Kronrod rule well resolved.
    int const panels = std::max(1, static_cast<int>(std::ceil(b - a)));
    NeumaierSum total;
    for (int i = 0; i < panels; ++i)
    {
        double const lo = a + (b - a) * i / panels;
        double const hi = a + (b - a) * (i + 1) / panels;
        total += gauss_kronrod<double, 61>::integrate(f, lo, hi, 10, 1e-15);
    }
    return total.value();
}
}  // namespace

double exact_log_scaled_q(RateParams const& params, std::size_t l)
{
    if (l < 1)
        throw std::invalid_argument("exact_log_scaled_q: l must be >= 1");
    double const c = params.q / params.z_s;
    NeumaierSum s;
    for (std::size_t j = 2; j <= l; ++j)
        s += std::log1p(c * std::pow(static_cast<double>(j), -params.gamma));
    return -s.value();
}

double asymptotic_log_scaled_q(RateParams const& params,
                               AsymptoticConstants const& consts,
                               std::size_t l)
{
    if (l < 2)
        throw std::invalid_argument("asymptotic_log_scaled_q: l must be >= 2");
    double const c = params.q / params.z_s;
    double const g = params.gamma;
    double const x = static_cast<double>(l);
    return consts.F0 - c * std::pow(x, 1.0 - g) / (1.0 - g)
           + 0.5 * c * c * second_order_term(params, x);
}

AsymptoticConstants compute_asymptotic_constants(RateParams const& params,
                                                 std::size_t L_limit,
                                                 double target_tol)
{
    params.validate();
    if (L_limit < 2)
        throw std::invalid_argument("compute_asymptotic_constants: L_limit must be >= 2");
    double const c = params.q / params.z_s;
    double const g = params.gamma;
    double const L = static_cast<double>(L_limit);
    AsymptoticConstants out;
    out.remainder_bound = c * std::pow(L, -g);
    if (c == 0.0)
        return out;
    if (out.remainder_bound > target_tol)
        throw ConvergenceError(fmt::format(
            "compute_asymptotic_constants: remainder bound {} at L={} exceeds {}",
            out.remainder_bound, L_limit, target_tol));

    // d_L = S_L - I_L decreases to C1 and C1 lies in [d_L - f(L), d_L];
    // the Euler-Maclaurin correction moves the estimate to the midpoint.
    double const d = -exact_log_scaled_q(params, L_limit) - integral_to(params, L);
    double const fL = std::log1p(c * std::pow(L, -g));
    double const y = c * std::pow(L, -g);
    double const dfL = -g * y / (L * (1.0 + y));
    out.C1 = d - 0.5 * fL - dfL / 12.0;

    out.F0 = c * std::pow(2.0, 1.0 - g) / (1.0 - g)
             - 0.5 * c * c * second_order_term(params, 2.0) - out.C1;
    return out;
}

}  // namespace bdlab
