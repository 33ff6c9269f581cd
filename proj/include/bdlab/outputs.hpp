// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file outputs.hpp
//! CSV time series, snapshots and the JSON run summary.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bdlab/config.hpp"
#include "bdlab/scenarios.hpp"

namespace bdlab
{
//! Fixed column order of every time-series file.
std::vector<std::string> const& series_columns();

std::string series_csv(std::vector<SeriesRow> const& rows);
std::string cluster_csv(ClusterState const& s);

//! Summary document; "timing" is the only field that varies between
//! identical runs.
nlohmann::ordered_json summary_json(RunSummary const& summary, ExperimentConfig const& config);

/*!
 * Write timeseries_<run>.csv, snapshot_<run>_<kind>_t<time>.csv and
 * summary.json below `dir` (created if needed). Returns the written paths.
 * Throws std::runtime_error naming the path on I/O failure.
 */
std::vector<std::string>
emit_outputs(RunSummary const& summary, ExperimentConfig const& config, std::string const& dir);

}  // namespace bdlab
