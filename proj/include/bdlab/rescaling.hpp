// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file rescaling.hpp
//! Scale-eps projection of cluster states onto macroscopic measures and the
//! diagnostics that compare the two descriptions.
#pragma once

#include <cstddef>
#include <vector>

#include "bdlab/bd_core.hpp"
#include "bdlab/lsw.hpp"

namespace bdlab
{
/*!
 * Scale parameter eps, cutoff exponent x and the cutoff size
 * l0 = floor(eps^-x) separating small from large clusters.
 */
struct RescaleParams
{
    double eps{0.1};
    double x{0.49};
    std::size_t l0{3};

    //! Validates eps in (0,1), x in (0,1/2) and l0 >= 2.
    static RescaleParams make(double eps, double x = 0.49);

    //! eps^{-(1 - alpha + gamma)}: rate multiplier of the macroscopic clock.
    double time_scale(RateParams const& p) const;
    //! z_s eps^{-gamma}
    double energy_scale(RateParams const& p) const;
    //! z_s eps^{-(1 - alpha + 2 gamma)}
    double dissipation_scale(RateParams const& p) const;
};

//! Atoms (eps l, n_l / eps) for l >= l0 with n_l > 0.
ParticleEnsemble project_mac(ClusterState const& s, double eps, std::size_t l0);

struct EnergySplit
{
    double F_mic{0};  //!< z_s eps^-gamma sum_{l<l0} omega psi
    double F_mac{0};  //!< z_s eps^-gamma sum_{l>=l0} omega psi
    double F_total{0};
    double F_l0{0};  //!< unscaled sum_{l>=l0} omega psi
    double F_l0_lsw{0};  //!< (q / (z_s (1-gamma))) sum_{l>=l0} l^{1-gamma} n_l
};

EnergySplit rescaled_energies(EquilibriumTable const& table,
                              ClusterState const& s,
                              RescaleParams const& rp);

//! (n_1 - z_s) / eps^gamma
double monomer_excess(ClusterState const& s, double eps, double gamma, double z_s);

/*!
 * Macroscopic counterpart of the monomer excess,
 * sum_{l>=l0} (b_{l+1} n_{l+1} - z_s a_l n_l) / (eps^gamma sum_{l>=l0} a_l n_l)
 * with n_{L+1} = 0. `literal` drops the z_s factor in the numerator.
 * Throws std::domain_error when the denominator vanishes.
 */
double macroscopic_u_eps(EquilibriumTable const& table,
                         ClusterState const& s,
                         double eps,
                         std::size_t l0,
                         bool literal = false);

struct RescaledActionDissipation
{
    double A{0};
    double D{0};
    double D_mic{0};
    double D_mac{0};
    bool D_infinite{false};
};

//! Scale action and dissipation by z_s eps^{-(1-alpha+2gamma)}, split at l0.
RescaledActionDissipation rescaled_action_dissipation(EquilibriumTable const& table,
                                                      ClusterState const& s,
                                                      std::vector<double> const& phi,
                                                      RescaleParams const& rp);

//! sum_{l<l0} omega_l(n_1) psi(n_l / omega_l(n_1)), omega_l(z) = z^l Q_l.
double quasistationary_entropy(EquilibriumTable const& table,
                               ClusterState const& s,
                               std::size_t l0);

//! 4 sum_{l<l0} a_l n_1 omega_l(n_1) (sqrt(n_l/omega_l) - sqrt(n_{l+1}/omega_{l+1}))^2
double microscopic_dissipation_lower(EquilibriumTable const& table,
                                     ClusterState const& s,
                                     std::size_t l0);

struct CsiszarPinsker
{
    double ratio_43{0};
    double residual_44{0};
    bool guarded{false};  //!< F(n) = 0, ratio reported as 0
};

//! ratio sum l^{1-gamma}|n_l - omega_l| / sqrt(F) and the large-cluster
//! mass residual |sum_{l>=l0} l n_l - (rho - rho_s)|.
CsiszarPinsker csiszar_pinsker_diagnostics(EquilibriumTable const& table,
                                           ClusterState const& s,
                                           std::size_t l0,
                                           double rho_s);

struct LsiBound
{
    double C_LSI{0};
    double C_EED{0};
    //! l0 = 2: the microscopic block is the monomer alone and the entropy vanishes.
    bool trivial{false};
};

LsiBound lsi_bound(EquilibriumTable const& table, ClusterState const& s, std::size_t l0);

//! W_l(z) = sum_{j=l}^{l0-1} omega_j(z), l = 1..l0-1, in log form.
std::vector<double> log_tail_sums(EquilibriumTable const& table, double z, std::size_t l0);

struct FluxMeasures
{
    std::vector<double> lambda;  //!< eps l for l >= l0
    std::vector<double> mu;  //!< s w_l nabla_l phi
    std::vector<double> mu_hat;  //!< s J_l
};

/*!
 * Atoms of the flux and dissipation-flux measures on the large clusters,
 * both carrying the macroscopic time scale s = eps^{-(1-alpha+gamma)}, so
 * mu = mu_hat when phi = -DF.
 */
FluxMeasures rescaled_flux_measures(EquilibriumTable const& table,
                                    ClusterState const& s,
                                    std::vector<double> const& phi,
                                    double eps,
                                    std::size_t l0);

//! max_l | d/dt (n_l/eps) + (mu_l - mu_{l-1}) / eps | over l > l0, with the
//! time derivative taken from two nearby states.
double continuity_residual(EquilibriumTable const& table,
                           ClusterState const& before,
                           ClusterState const& after,
                           double dt,
                           double eps,
                           std::size_t l0);

}  // namespace bdlab
