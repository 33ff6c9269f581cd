// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file checks.hpp
//! Invariant suite over random states and the Q_l expansion table.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bdlab/bd_core.hpp"
#include "bdlab/lsw.hpp"
#include "bdlab/rates.hpp"

namespace bdlab
{
struct CheckResult
{
    std::string name;
    double value;
    double bound;
    bool passed;
};

//! Strictly positive state with log n_l uniform around log omega_l(z_s),
//! clipped below at 1e-200.
ClusterState random_positive_state(EquilibriumTable const& table,
                                   std::size_t L,
                                   std::mt19937_64& rng,
                                   double spread = 2.0);

//! count atoms, lambda log-uniform in [0.1, 10], masses uniform in [0.1, 1].
ParticleEnsemble random_ensemble(std::size_t count, std::mt19937_64& rng);

std::vector<CheckResult> invariant_suite(RateParams const& p, std::uint64_t seed);

struct QlRow
{
    std::size_t l;
    double exact;
    double predicted;
    double rel_error;
    double scaled_error;  //!< rel_error * l^gamma
};

std::vector<QlRow> ql_expansion_table(RateParams const& p, std::vector<std::size_t> const& ls);

}  // namespace bdlab
