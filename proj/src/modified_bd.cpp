// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"
#include "bdlab/reaction_network.hpp"

namespace bdlab
{
double cluster_number(ClusterState const& s)
{
    NeumaierSum N;
    for (double v : s.n)
        N += v;
    return N.value();
}

std::vector<double> modified_fluxes(EquilibriumTable const& table, ClusterState const& s)
{
    double const N = cluster_number(s);
    std::vector<double> J(s.size() - 1);
    for (std::size_t r = 1; r < s.size(); ++r)
        J[r - 1] = table.a(r) * s(1) * s(r) - table.b(r + 1) * N * s(r + 1);
    return J;
}

namespace
{
std::vector<double> assemble(std::vector<double> const& J)
{
    std::size_t const L = J.size() + 1;
    std::vector<double> dn(L, 0.0);
    NeumaierSum total;
    for (double j : J)
        total += j;
    dn[0] = -J[0] - total.value();
    for (std::size_t l = 2; l <= L; ++l)
        dn[l - 1] = J[l - 2] - (l < L ? J[l - 1] : 0.0);
    return dn;
}
}  // namespace

std::vector<double> modified_bd_rhs(EquilibriumTable const& table, ClusterState const& s)
{
    return assemble(modified_fluxes(table, s));
}

double modified_bd_energy(EquilibriumTable const& table, ClusterState const& s)
{
    double const N = cluster_number(s);
    if (!(N > 0.0))
        throw std::invalid_argument("modified_bd_energy: N(n) must be positive");
    double const logN = std::log(N);
    double const lz = std::log(table.z());
    NeumaierSum F;
    for (std::size_t l = 1; l <= s.size(); ++l)
    {
        double const lw = table.log_omega_from_log_z(l, lz);
        double const nl = s(l);
        F += std::exp(lw);
        if (nl > 0.0)
            F += nl * (std::log(nl) - lw - logN);
    }
    return F.value();
}

std::vector<double> modified_bd_gradient(EquilibriumTable const& table, ClusterState const& s)
{
    double const logN = std::log(cluster_number(s));
    double const lz = std::log(table.z());
    std::vector<double> g(s.size());
    for (std::size_t l = 1; l <= s.size(); ++l)
        g[l - 1] = s(l) > 0.0 ? std::log(s(l)) - table.log_omega_from_log_z(l, lz) - logN
                              : -infinity();
    return g;
}

std::vector<double> modified_onsager_apply(EquilibriumTable const& table,
                                           ClusterState const& s,
                                           std::vector<double> const& phi)
{
    double const N = cluster_number(s);
    std::vector<double> J(s.size() - 1, 0.0);
    for (std::size_t r = 1; r < s.size(); ++r)
    {
        double const w = log_mean(table.a(r) * s(1) * s(r), table.b(r + 1) * N * s(r + 1));
        if (w == 0.0)
            continue;
        double const g = nabla(phi, r);
        if (!std::isfinite(g))
            throw MaskedCovectorError(
                fmt::format("modified_onsager_apply: masked covector on edge {}", r));
        J[r - 1] = w * g;
    }
    // K phi = -sum w nabla phi (e^1 + e^r - e^{r+1})
    return assemble(J);
}

double modified_gradient_residual(EquilibriumTable const& table, ClusterState const& s)
{
    auto const rhs = modified_bd_rhs(table, s);
    auto const k = modified_onsager_apply(table, s, modified_bd_gradient(table, s));
    double r = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i)
        r = std::max(r, std::fabs(rhs[i] + k[i]));
    return r;
}

ModifiedRun integrate_modified_bd(EquilibriumTable const& table,
                                  ClusterState const& state0,
                                  double T,
                                  StepControls const& controls)
{
    if (!(T > 0.0))
        throw std::invalid_argument("integrate_modified_bd: T must be positive");
    ModifiedRun run;
    double const m0 = state0.mass();
    double F_now = modified_bd_energy(table, state0);
    double F_pending = F_now;
    run.times.push_back(0.0);
    run.energy.push_back(F_now);

    OdeHooks hooks;
    hooks.rhs = [&](double, std::vector<double> const& y, std::vector<double>& dy) {
        dy = modified_bd_rhs(table, ClusterState{y});
    };
    hooks.admissible = [&](double, std::vector<double> const&, std::vector<double>& y) {
        double const ymax = *std::max_element(y.begin(), y.end());
        bool modified = false;
        for (auto& v : y)
        {
            if (v >= 0.0)
                continue;
            if (v < -10.0 * std::numeric_limits<double>::epsilon() * ymax)
                return StepVerdict::reject;
            v = 0.0;
            modified = true;
        }
        double const F_new = modified_bd_energy(table, ClusterState{y});
        if (F_new > F_now + 1e-10 * (1.0 + std::fabs(F_now)))
            return StepVerdict::reject;
        F_pending = F_new;
        return modified ? StepVerdict::accept_modified : StepVerdict::accept;
    };
    hooks.on_accept = [&](double t, std::vector<double>& y) {
        F_now = F_pending;
        run.times.push_back(t);
        run.energy.push_back(F_now);
        run.mass_drift = std::max(run.mass_drift, std::fabs(ClusterState{y}.mass() - m0) / m0);
        return false;
    };
    DormandPrince dp(controls, std::move(hooks));
    std::vector<double> y = state0.n;
    double t = 0.0;
    dp.integrate(y, t, T);
    run.stats = dp.stats();
    return run;
}

}  // namespace bdlab
