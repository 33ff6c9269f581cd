// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"
#include "bdlab/rates.hpp"

using namespace bdlab;

namespace
{
RateParams defaults() { return RateParams{}; }

RateParams with(double alpha, double gamma, double z_s, double q)
{
    return RateParams{alpha, gamma, z_s, q};
}

// Independent brute-force sum of l omega_l(z) with the product taken directly.
double brute_mass(RateParams const& p, double z, std::size_t L)
{
    double log_q = 0.0;
    NeumaierSum s;
    for (std::size_t l = 1; l <= L; ++l)
    {
        if (l > 1)
        {
            double const j = static_cast<double>(l - 1);
            log_q += p.alpha * std::log(j)
                     - std::log(std::pow(j + 1, p.alpha) * (p.z_s + p.q * std::pow(j + 1, -p.gamma)));
        }
        s += static_cast<double>(l) * std::exp(static_cast<double>(l) * std::log(z) + log_q);
    }
    return s.value();
}
}  // namespace

TEST_CASE("coagulation and fragmentation rates")
{
    CHECK(coag_rate(with(0, 0.5, 1, 1), 17) == 1.0);
    CHECK(coag_rate(with(0.5, 0.5, 1, 1), 4) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(coag_rate(with(0.3, 0.5, 1, 1), 10) == doctest::Approx(std::pow(10.0, 0.3)).epsilon(1e-15));

    CHECK(frag_rate(defaults(), 4) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(frag_rate(defaults(), 2) == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(frag_rate(with(0.5, 0.5, 2, 0), 9) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK_THROWS_AS(frag_rate(defaults(), 1), std::invalid_argument);
}

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(with(0, 0.5, 0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(with(0, 0.5, 1, -1).validate(), std::invalid_argument);
    CHECK_NOTHROW(with(0, 0.5, 1, 0).validate());
    CHECK_NOTHROW(defaults().validate());
}

TEST_CASE("partition coefficients")
{
    auto const t = partition_coeffs(defaults(), 10);
    CHECK(t.log_q(1) == 0.0);
    CHECK(std::exp(t.log_q(2)) == doctest::Approx(1.0 / (1.0 + 1.0 / std::sqrt(2.0))).epsilon(1e-14));
    CHECK(std::exp(t.log_q(2)) == doctest::Approx(0.585786).epsilon(1e-6));

    auto const flat = partition_coeffs(with(0, 0.5, 1, 0), 50);
    for (std::size_t l = 1; l <= 50; ++l)
        CHECK(flat.log_q(l) == doctest::Approx(0.0).epsilon(1e-15));

    auto const big = partition_coeffs(defaults(), 100'000);
    bool finite = true;
    for (std::size_t l = 1; l <= big.size(); ++l)
        finite = finite && std::isfinite(big.log_q(l));
    CHECK(finite);
}

TEST_CASE("equilibrium family")
{
    auto const t = partition_coeffs(defaults(), 64);
    auto const w = equilibrium(t, 0.37);
    CHECK(w[0] == doctest::Approx(0.37).epsilon(1e-15));
    CHECK(equilibrium(t, 1.0)[1] == doctest::Approx(0.585786).epsilon(1e-6));

    auto const flat = partition_coeffs(with(0, 0.5, 1, 0), 20);
    auto const wf = equilibrium(flat, 0.5);
    for (std::size_t l = 1; l <= 20; ++l)
        CHECK(wf[l - 1] == doctest::Approx(std::pow(0.5, static_cast<double>(l))).epsilon(1e-14));

    CHECK_THROWS_AS(equilibrium(t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(equilibrium(t, 1.5), std::invalid_argument);
}

TEST_CASE("detailed balance holds for every admissible fugacity")
{
    for (auto const& p : {defaults(), with(0.4, 0.7, 2.0, 3.0), with(0.0, 0.5, 0.5, 0.25)})
    {
        auto const t = partition_coeffs(p, 10'000);
        for (double f : {1e-3, 0.2, 0.5, 0.9, 1.0})
            CHECK(detailed_balance_residual(t, f * p.z_s) <= 1e-12);
    }
}

TEST_CASE("equilibrium mass is strictly increasing in z")
{
    auto const t = partition_coeffs(defaults(), 2000);
    double prev = 0.0;
    for (int k = 1; k <= 50; ++k)
    {
        double const m = equilibrium_mass(t, 0.02 * k);
        CHECK(m > prev);
        prev = m;
    }
}

TEST_CASE("saturation mass")
{
    auto const sat = saturation_mass(defaults());
    CHECK(sat.rho_s >= 1.0);
    CHECK(sat.tail_bound <= 1e-12 * sat.rho_s);

    // Oracle: brute force with L doubled until two sums agree to 1e-13.
    std::size_t L = 1024;
    double prev = brute_mass(defaults(), 1.0, L);
    double cur = 0.0;
    for (;;)
    {
        L *= 2;
        cur = brute_mass(defaults(), 1.0, L);
        if (std::fabs(cur - prev) <= 1e-13 * cur)
            break;
        prev = cur;
    }
    CHECK(sat.rho_s == doctest::Approx(cur).epsilon(1e-11));

    CHECK(saturation_mass(with(0, 0.5, 1, 1.5)).rho_s < sat.rho_s);
    CHECK_THROWS_AS(saturation_mass(with(0, 0.5, 1, 0)), ConvergenceError);
}

TEST_CASE("fugacity solve")
{
    auto const p = defaults();
    double const rho_s = saturation_mass(p).rho_s;
    CHECK(solve_fugacity(p, rho_s) == doctest::Approx(1.0).epsilon(1e-9));

    double const z = solve_fugacity(p, 0.5 * rho_s);
    CHECK(z > 0.0);
    CHECK(z < 1.0);
    CHECK(brute_mass(p, z, 20'000) == doctest::Approx(0.5 * rho_s).epsilon(1e-9));

    CHECK(solve_fugacity(p, 1e-9) < 1e-8);
    CHECK_THROWS_AS(solve_fugacity(p, 1.01 * rho_s), SupersaturatedError);
}

TEST_CASE("asymptotic constants")
{
    auto const zero = compute_asymptotic_constants(with(0, 0.5, 1, 0), 1000);
    CHECK(zero.C1 == 0.0);
    CHECK(zero.F0 == 0.0);

    auto const c = compute_asymptotic_constants(defaults(), 1'000'000, 2e-3);
    CHECK(c.remainder_bound == doctest::Approx(1e-3).epsilon(1e-12));

    auto const c4 = compute_asymptotic_constants(defaults(), 4'000'000, 2e-3);
    CHECK(std::fabs(c.C1 - c4.C1) <= c.remainder_bound);

    CHECK_THROWS_AS(compute_asymptotic_constants(defaults(), 100, 1e-3), ConvergenceError);
}

TEST_CASE("large-size expansion of Q_l")
{
    for (auto const& p : {defaults(), with(0, 0.7, 1, 1), with(0.3, 0.6, 2, 1.5)})
    {
        CAPTURE(p.gamma);
        auto const c = compute_asymptotic_constants(p, std::size_t{1} << 22, 1.0);
        double prev_err = infinity();
        double max_scaled = 0.0;
        for (std::size_t l = 64; l <= 16384; l *= 2)
        {
            double const exact = exact_log_scaled_q(p, l);
            double const err = std::fabs(asymptotic_log_scaled_q(p, c, l) / exact - 1.0);
            CHECK(err < prev_err);
            prev_err = err;
            max_scaled = std::max(max_scaled, err * std::pow(static_cast<double>(l), p.gamma));
        }
        CHECK(max_scaled < 10.0);
    }

    auto const t = partition_coeffs(defaults(), 4);
    CHECK(exact_log_scaled_q(defaults(), 2) == doctest::Approx(t.log_q(2)).epsilon(1e-15));
    CHECK_THROWS_AS(asymptotic_log_scaled_q(defaults(), {}, 1), std::invalid_argument);
}
