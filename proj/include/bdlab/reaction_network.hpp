// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file reaction_network.hpp
//! Reversible mass-action networks as entropic gradient flows, with the
//! cluster models as instances.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bdlab/bd_core.hpp"
#include "bdlab/integrate_bd.hpp"

namespace bdlab
{
//! Sparse stoichiometric vector: (species index, coefficient) pairs.
using Stoich = std::vector<std::pair<std::size_t, int>>;

struct Reaction
{
    Stoich x;
    Stoich y;
    double k_plus{1};
    double k_minus{1};
};

/*!
 * N species, R reactions and a positive reference state omega satisfying
 * k_+ omega^x = k_- omega^y for every reaction.
 */
class ReactionNetwork
{
  public:
    ReactionNetwork(std::size_t species,
                    std::vector<Reaction> reactions,
                    std::vector<double> omega,
                    double balance_tol = 1e-12);

    //! Parse and validate the JSON network description.
    static ReactionNetwork from_json_text(std::string const& text, double balance_tol = 1e-12);
    static ReactionNetwork load(std::string const& path, double balance_tol = 1e-12);

    std::size_t species() const { return omega_.size(); }
    std::size_t size() const { return reactions_.size(); }
    std::vector<Reaction> const& reactions() const { return reactions_; }
    std::vector<double> const& omega() const { return omega_; }
    std::vector<double> const& log_omega() const { return log_omega_; }
    //! log k^r with k^r = k_+ omega^x = k_- omega^y
    double log_k(std::size_t r) const { return log_k_[r]; }
    //! Dense x^r - y^r.
    std::vector<int> difference(std::size_t r) const;

  private:
    std::vector<Reaction> reactions_;
    std::vector<double> omega_;
    std::vector<double> log_omega_;
    std::vector<double> log_k_;
};

//! n^x / omega^x in log space; exactly 0 if some n_i = 0 has x_i > 0.
double normalized_monomial(ReactionNetwork const& net,
                           std::vector<double> const& n,
                           Stoich const& x);

std::vector<double> rn_rhs(ReactionNetwork const& net, std::vector<double> const& n);
std::vector<double> rn_energy_gradient(ReactionNetwork const& net, std::vector<double> const& n);
std::vector<double> rn_onsager_apply(ReactionNetwork const& net,
                                     std::vector<double> const& n,
                                     std::vector<double> const& phi);
double rn_free_energy(ReactionNetwork const& net, std::vector<double> const& n);
double rn_dissipation(ReactionNetwork const& net, std::vector<double> const& n);

//! Integer basis of S-perp (conservation laws) by exact rational
//! elimination; empty with `skipped` set when N exceeds max_species.
struct ConservationLaws
{
    std::vector<std::vector<double>> basis;
    bool skipped{false};
};
ConservationLaws conservation_laws(ReactionNetwork const& net, std::size_t max_species = 200);

//! Becker-Doring reactions l = 1..L-1 with omega = omega(z_s).
ReactionNetwork bd_network(EquilibriumTable const& table, std::size_t L);

using PairRate = std::function<double(std::size_t, std::size_t)>;

/*!
 * Coagulation/fragmentation reactions i + j <-> i + j for 1 <= i <= j,
 * i + j <= N_max. Pairs with both rates zero are omitted; a pair that
 * violates a_{ij} omega_i omega_j = b_{ij} omega_{i+j} beyond balance_tol
 * is rejected.
 */
ReactionNetwork build_smoluchowski(PairRate const& a,
                                   PairRate const& b,
                                   std::vector<double> const& omega,
                                   std::size_t N_max,
                                   double balance_tol = 1e-12);

//---------------------------------------------------------------------------//
// Modified system with mixing entropy over the total cluster number N(n).

double cluster_number(ClusterState const& s);

//! J~_r = a_r n_1 n_r - b_{r+1} N(n) n_{r+1}
std::vector<double> modified_fluxes(EquilibriumTable const& table, ClusterState const& s);
std::vector<double> modified_bd_rhs(EquilibriumTable const& table, ClusterState const& s);
//! sum_i n_i log(n_i / (omega_i N)) + omega_i at omega = omega(z_s)
double modified_bd_energy(EquilibriumTable const& table, ClusterState const& s);
std::vector<double> modified_bd_gradient(EquilibriumTable const& table, ClusterState const& s);
//! Weights Lambda(a n_1 n_r, b N n_{r+1}).
std::vector<double> modified_onsager_apply(EquilibriumTable const& table,
                                           ClusterState const& s,
                                           std::vector<double> const& phi);
double modified_gradient_residual(EquilibriumTable const& table, ClusterState const& s);

struct ModifiedRun
{
    std::vector<double> times;
    std::vector<double> energy;
    double mass_drift{0};
    OdeStats stats;
};

//! Integrate the modified system; rejects steps that increase the energy.
ModifiedRun integrate_modified_bd(EquilibriumTable const& table,
                                  ClusterState const& state0,
                                  double T,
                                  StepControls const& controls);

}  // namespace bdlab
