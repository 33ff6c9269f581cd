// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file initial.hpp
//! Named families of initial data.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "bdlab/bd_core.hpp"
#include "bdlab/config.hpp"
#include "bdlab/lsw.hpp"
#include "bdlab/rescaling.hpp"

namespace bdlab
{
//! C-infinity bump exp(-1/(1 - s^2)) on (lo, hi), s the affine map to (-1, 1).
double bump_profile(double lambda, double lo, double hi);

/*!
 * n_l = omega_l(z_s) + [l >= l0] C eps^2 g(eps l) for l <= L, with C chosen
 * so that the bump carries first moment sum_{l>=l0} l C eps^2 g(eps l) = rho_bar.
 */
ClusterState equilibrium_plus_bump(EquilibriumTable const& table,
                                   std::size_t L,
                                   RescaleParams const& rp,
                                   double rho_bar,
                                   double lo,
                                   double hi);

//! n_1 = rho0, all other sizes empty.
ClusterState pure_monomer(double rho0, std::size_t L);

using InitialState = std::variant<ClusterState, ParticleEnsemble>;

/*!
 * Dispatch on spec.family. "bd-projected" needs `source`, the cluster state
 * to project; it is built from equilibrium+bump when absent.
 */
InitialState make_initial(InitialSpec const& spec,
                          EquilibriumTable const& table,
                          RescaleParams const& rp,
                          std::size_t L,
                          std::optional<ClusterState> const& source = std::nullopt);

}  // namespace bdlab
