// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file config.hpp
//! Experiment configuration read from INI-style key = value files.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdlab/ode.hpp"
#include "bdlab/rates.hpp"

namespace bdlab
{
enum class Scenario
{
    bd_relax,
    bd_rescaled,
    lsw,
    converge,
    quasistat,
    network
};

Scenario parse_scenario(std::string const& tag);
std::string to_string(Scenario s);

struct InitialSpec
{
    //! equilibrium+bump | pure-monomer | log-uniform-particles | bd-projected
    std::string family{"equilibrium+bump"};
    double rho_bar{0.5};  //!< excess mass of the bump / particle ensemble
    double rho0{0.5};  //!< total mass for pure-monomer
    double bump_lo{0.5};  //!< bump support in lambda = eps l
    double bump_hi{2.0};
    std::size_t particles{200};
    double particle_lo{0.5};
    double particle_hi{2.0};
    std::uint64_t seed{1};
};

struct Certification
{
    double mass_drift{1e-8};
    //! |dF + int D| <= max(energy_abs, energy_rel |dF|)
    double energy_abs{1e-6};
    double energy_rel{1e-3};
    //! |J| <= j_rel (|dF| + int D)
    double j_rel{1e-4};
};

struct ExperimentConfig
{
    Scenario scenario{Scenario::bd_relax};
    RateParams rates;
    std::vector<double> ladder{0.2, 0.1, 0.05};
    double cutoff_x{0.49};
    //! Truncation; 0 selects max(L_min, ceil(lambda_cap / eps)).
    std::size_t L{0};
    std::size_t L_min{64};
    double lambda_cap{12.0};
    InitialSpec initial;
    double T{1.0};
    std::size_t samples{20};
    StepControls step;
    Certification certify;
    //! JSON network description; load_config resolves relative paths
    //! against the config file's directory.
    std::string network_file;
    double network_T{1.0};
    std::string out_dir{"out"};
    //! Original text, echoed into the summary.
    std::string source_text;

    //! Throws std::invalid_argument on inconsistent settings.
    void validate() const;
    std::size_t truncation_for(double eps) const;
};

ExperimentConfig parse_config_text(std::string const& text);
ExperimentConfig load_config(std::string const& path);

//! Comma- or space-separated list of doubles.
std::vector<double> parse_double_list(std::string const& s);

}  // namespace bdlab
