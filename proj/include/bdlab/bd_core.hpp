// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file bd_core.hpp
//! Truncated Becker-Doring system: fluxes, right-hand side, Onsager operator
//! and the free energy / dissipation / action functionals.
#pragma once

#include <cstddef>
#include <vector>

#include "bdlab/log_mean.hpp"
#include "bdlab/rates.hpp"

namespace bdlab
{
//---------------------------------------------------------------------------//
/*!
 * Densities n_1..n_L of a truncated state, stored 0-based (n[0] = n_1).
 */
struct ClusterState
{
    std::vector<double> n;

    std::size_t size() const { return n.size(); }
    //! 1-based access by cluster size
    double operator()(std::size_t l) const { return n[l - 1]; }
    double mass() const;
};

//! J_l = a_l n_1 n_l - b_{l+1} n_{l+1} for l = 1..L-1 (0-based storage).
std::vector<double> fluxes(EquilibriumTable const& table, ClusterState const& s);

//! Time derivative with closure J_L = 0, multiplied by time_scale.
std::vector<double> bd_rhs(EquilibriumTable const& table,
                           ClusterState const& s,
                           double time_scale = 1.0);

//! Lambda(a_l n_1 n_l, b_{l+1} n_{l+1}), equal to k^l times the
//! omega-normalised logarithmic mean.
double edge_weight(EquilibriumTable const& table, ClusterState const& s, std::size_t l);
std::vector<double> edge_weights(EquilibriumTable const& table, ClusterState const& s);

//! phi_{l+1} - phi_l - phi_1 for a 0-based covector.
inline double nabla(std::vector<double> const& phi, std::size_t l)
{
    return phi[l] - phi[l - 1] - phi[0];
}

/*!
 * K(n) phi = sum_l w_l (phi_1 + phi_l - phi_{l+1}) (e^1 + e^l - e^{l+1}).
 *
 * Edges with zero weight are skipped, so masked (non-finite) covector
 * entries are tolerated there; a masked entry against a positive weight
 * throws MaskedCovectorError.
 */
std::vector<double> onsager_apply(EquilibriumTable const& table,
                                  ClusterState const& s,
                                  std::vector<double> const& phi);

//! sum_l omega_l(z) psi(n_l / omega_l(z)) with psi(a) = a log a - a + 1.
double free_energy(EquilibriumTable const& table, ClusterState const& s, double z);
//! Same sum restricted to sizes l in [lo, hi].
double free_energy_range(EquilibriumTable const& table,
                         ClusterState const& s,
                         double z,
                         std::size_t lo,
                         std::size_t hi);

//! (DF)_l = log n_l - log omega_l(z); -inf marks n_l = 0.
std::vector<double>
energy_gradient(EquilibriumTable const& table, ClusterState const& s, double z);

//! sum_l (x_l - y_l)(log x_l - log y_l); +inf when one side of a nonzero
//! flux vanishes.
double dissipation(EquilibriumTable const& table, ClusterState const& s);
//! Per-edge dissipation terms, l = 1..L-1 (0-based storage).
std::vector<double> dissipation_terms(EquilibriumTable const& table, ClusterState const& s);

//! sum_l w_l |nabla_l phi|^2.
double action(EquilibriumTable const& table,
              ClusterState const& s,
              std::vector<double> const& phi);
std::vector<double> action_terms(EquilibriumTable const& table,
                                 ClusterState const& s,
                                 std::vector<double> const& phi);

//! || bd_rhs(n) + K(n) DF(n) ||_inf at z = z_s.
double gradient_flow_residual(EquilibriumTable const& table, ClusterState const& s);

}  // namespace bdlab
