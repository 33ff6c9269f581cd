// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/checks.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "bdlab/reaction_network.hpp"

namespace bdlab
{
ClusterState random_positive_state(EquilibriumTable const& table,
                                   std::size_t L,
                                   std::mt19937_64& rng,
                                   double spread)
{
    std::uniform_real_distribution<double> U(-spread, spread);
    double const lz = std::log(table.z());
    ClusterState s;
    s.n.resize(L);
    for (std::size_t l = 1; l <= L; ++l)
        s.n[l - 1] = std::max(1e-200, std::exp(table.log_omega_from_log_z(l, lz) + U(rng)));
    return s;
}

ParticleEnsemble random_ensemble(std::size_t count, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> logl(std::log(0.1), std::log(10.0));
    std::uniform_real_distribution<double> m(0.1, 1.0);
    ParticleEnsemble e;
    for (std::size_t i = 0; i < count; ++i)
    {
        double const l = std::exp(logl(rng));
        e.add(l, m(rng));
    }
    return e;
}

namespace
{
double max_abs(std::vector<double> const& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::fabs(x));
    return m;
}
}  // namespace

std::vector<CheckResult> invariant_suite(RateParams const& p, std::uint64_t seed)
{
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);

    for (std::size_t L : {8, 64, 256})
    {
        auto const table = partition_coeffs(p, L + 1);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k)
        {
            auto const s = random_positive_state(table, L, rng);
            double const scale = 1.0 + max_abs(bd_rhs(table, s));
            worst = std::max(worst, gradient_flow_residual(table, s) / scale);
        }
        out.push_back({fmt::format("gradient identity L={}", L), worst, 1e-10, worst <= 1e-10});
    }

    {
        auto const table = partition_coeffs(p, 10'000);
        double worst = 0.0;
        for (double f : {0.1, 0.3, 0.5, 0.8, 1.0})
            worst = std::max(worst, detailed_balance_residual(table, f * p.z_s));
        out.push_back({"detailed balance l<1e4", worst, 1e-12, worst <= 1e-12});
    }

    {
        std::size_t const L = 32;
        auto const table = partition_coeffs(p, L + 1);
        auto const net = bd_network(table, L);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k)
        {
            auto const s = random_positive_state(table, L, rng);
            auto const r1 = bd_rhs(table, s);
            auto const r2 = rn_rhs(net, s.n);
            double const scale = 1.0 + max_abs(r1);
            for (std::size_t i = 0; i < L; ++i)
                worst = std::max(worst, std::fabs(r1[i] - r2[i]) / scale);
            double const F1 = free_energy(table, s, p.z_s);
            double const F2 = rn_free_energy(net, s.n);
            worst = std::max(worst, std::fabs(F1 - F2) / (1.0 + std::fabs(F1)));
            double const D1 = dissipation(table, s);
            double const D2 = rn_dissipation(net, s.n);
            worst = std::max(worst, std::fabs(D1 - D2) / (1.0 + std::fabs(D1)));
        }
        out.push_back({"network equivalence", worst, 1e-12, worst <= 1e-12});
    }

    {
        std::size_t const L = 64;
        auto const table = partition_coeffs(p, L + 1);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k)
        {
            auto const s = random_positive_state(table, L, rng);
            double const scale = 1.0 + max_abs(modified_bd_rhs(table, s));
            worst = std::max(worst, modified_gradient_residual(table, s) / scale);
        }
        out.push_back({"modified gradient identity", worst, 1e-10, worst <= 1e-10});
    }

    {
        LSWParams const lp = LSWParams::from(p, 1.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k)
        {
            auto const e = random_ensemble(40, rng);
            double const u = mean_field_u(lp, e);
            double const Du = lsw_dissipation_at(lp, e, u);
            double best = Du;
            for (int i = 0; i <= 20'000; ++i)
            {
                double const c = u - 1.0 + 1e-4 * static_cast<double>(i);
                best = std::min(best, lsw_dissipation_at(lp, e, c));
            }
            worst = std::max(worst, Du - best);
        }
        out.push_back({"u minimises the dissipation", worst, 1e-8, worst <= 1e-8});
    }
    return out;
}

std::vector<QlRow> ql_expansion_table(RateParams const& p, std::vector<std::size_t> const& ls)
{
    std::size_t const L_limit = std::size_t{1} << 22;
    auto const consts = compute_asymptotic_constants(p, L_limit, 1.0);
    std::vector<QlRow> rows;
    for (std::size_t l : ls)
    {
        double const exact = exact_log_scaled_q(p, l);
        double const pred = asymptotic_log_scaled_q(p, consts, l);
        double const rel = std::fabs(pred - exact) / std::fabs(exact);
        rows.push_back({l, exact, pred, rel, rel * std::pow(static_cast<double>(l), p.gamma)});
    }
    return rows;
}

}  // namespace bdlab
