// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file scenarios.hpp
//! Scenario drivers and their run records.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bdlab/bd_core.hpp"
#include "bdlab/config.hpp"
#include "bdlab/lsw.hpp"

namespace bdlab
{
//! One row of the fixed-schema time series; absent values print blank.
struct SeriesRow
{
    double t{0};
    std::optional<double> mass, F, F_mic_eps, F_mac_eps, D_eps, D_mic_eps, D_mac_eps, h_eps,
        u_eps, E_lsw, D_lsw, J_partial;
};

struct ClusterSnapshot
{
    double t;
    ClusterState state;
};

struct EnsembleSnapshot
{
    double t;
    ParticleEnsemble ensemble;
};

//! Scalars of one run. Non-finite values are reported as null with a flag.
struct RunRecord
{
    std::string label;  //!< e.g. "eps=0.1" or "lsw"
    double eps{0};
    std::size_t l0{0};
    std::size_t L{0};
    std::vector<SeriesRow> series;
    std::vector<ClusterSnapshot> cluster_snapshots;
    std::vector<EnsembleSnapshot> ensemble_snapshots;
    //! Ordered scalar diagnostics (mass_drift, delta_F, int_D, J, ...).
    std::map<std::string, double> scalars;
    std::vector<std::string> flags;
    double wall_seconds{0};
};

struct Certificate
{
    std::string name;
    double value;
    double bound;
    bool passed;
};

struct TrendCheck
{
    std::string name;
    std::vector<double> values;  //!< one per eps, ladder order
    bool passed;
};

struct RunSummary
{
    Scenario scenario;
    std::vector<RunRecord> runs;
    std::vector<Certificate> certificates;
    std::vector<TrendCheck> trends;
    //! Per-eps convergence table: column name -> values in ladder order.
    std::vector<std::string> table_columns;
    std::vector<std::vector<double>> table_rows;
    double wall_seconds{0};

    bool certified() const;
};

//! Options not carried by the config file.
struct RunOptions
{
    bool quiet{false};
};

RunSummary run_scenario(ExperimentConfig const& config, RunOptions const& options = {});

//! Strictly decreasing along the sequence.
bool strictly_decreasing(std::vector<double> const& v);

}  // namespace bdlab
