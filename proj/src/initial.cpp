// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/initial.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <fmt/format.h>

#include "bdlab/numeric.hpp"

namespace bdlab
{
double bump_profile(double lambda, double lo, double hi)
{
    double const s = (2.0 * lambda - lo - hi) / (hi - lo);
    if (!(std::fabs(s) < 1.0))
        return 0.0;
    return std::exp(-1.0 / (1.0 - s * s));
}

ClusterState equilibrium_plus_bump(EquilibriumTable const& table,
                                   std::size_t L,
                                   RescaleParams const& rp,
                                   double rho_bar,
                                   double lo,
                                   double hi)
{
    if (L < rp.l0)
        throw std::invalid_argument(fmt::format("equilibrium_plus_bump: L={} < l0={}", L, rp.l0));
    if (rp.eps * static_cast<double>(L) < hi)
        throw std::invalid_argument(fmt::format(
            "equilibrium_plus_bump: bump support {} exceeds eps L = {}", hi, rp.eps * L));
    ClusterState s;
    s.n.assign(L, 0.0);
    double const lz = std::log(table.z());
    std::vector<double> bump(L + 1, 0.0);
    NeumaierSum moment;
    for (std::size_t l = rp.l0; l <= L; ++l)
    {
        bump[l] = rp.eps * rp.eps * bump_profile(rp.eps * static_cast<double>(l), lo, hi);
        moment += static_cast<double>(l) * bump[l];
    }
    if (rho_bar > 0.0 && !(moment.value() > 0.0))
        throw std::invalid_argument("equilibrium_plus_bump: bump misses every l >= l0");
    double const C = rho_bar > 0.0 ? rho_bar / moment.value() : 0.0;
    for (std::size_t l = 1; l <= L; ++l)
        s.n[l - 1] = std::exp(table.log_omega_from_log_z(l, lz)) + C * bump[l];
    return s;
}

ClusterState pure_monomer(double rho0, std::size_t L)
{
    if (!(rho0 > 0.0) || L < 2)
        throw std::invalid_argument("pure_monomer: need rho0 > 0 and L >= 2");
    ClusterState s;
    s.n.assign(L, 0.0);
    s.n[0] = rho0;
    return s;
}

InitialState make_initial(InitialSpec const& spec,
                          EquilibriumTable const& table,
                          RescaleParams const& rp,
                          std::size_t L,
                          std::optional<ClusterState> const& source)
{
    if (spec.family == "equilibrium+bump")
        return equilibrium_plus_bump(table, L, rp, spec.rho_bar, spec.bump_lo, spec.bump_hi);
    if (spec.family == "pure-monomer")
        return pure_monomer(spec.rho0, L);
    if (spec.family == "log-uniform-particles")
        return log_uniform_particles(
            spec.particles, spec.particle_lo, spec.particle_hi, spec.rho_bar, spec.seed);
    if (spec.family == "bd-projected")
    {
        ClusterState const s = source
                                   ? *source
                                   : equilibrium_plus_bump(table, L, rp, spec.rho_bar,
                                                           spec.bump_lo, spec.bump_hi);
        return project_mac(s, rp.eps, rp.l0);
    }
    throw std::invalid_argument(fmt::format("unknown initial family '{}'", spec.family));
}

}  // namespace bdlab
