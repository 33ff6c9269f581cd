// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file lsw.hpp
//! Particle discretisation of the LSW coarsening equation.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bdlab/ode.hpp"
#include "bdlab/rates.hpp"

namespace bdlab
{
struct LSWParams
{
    double alpha{0.0};
    double gamma{0.5};
    double q{1.0};
    double rho_bar{1.0};

    void validate() const;
    //! The macroscopic limit theory needs alpha >= 1 - 3 gamma.
    bool limit_theory_applies() const { return alpha >= 1.0 - 3.0 * gamma; }

    static LSWParams from(RateParams const& p, double rho_bar);
};

//---------------------------------------------------------------------------//
/*!
 * Weighted atoms (lambda_i, m_i). Retired atoms keep their slot with
 * alive = 0 and are excluded from every sum.
 */
struct ParticleEnsemble
{
    std::vector<double> lambda;
    std::vector<double> mass;
    std::vector<unsigned char> alive;

    void add(double l, double m);
    std::size_t size() const { return lambda.size(); }
    std::size_t live_count() const;
    //! sum over live atoms of m_i lambda_i
    double first_moment() const;
    //! sum over live atoms of m_i
    double total_mass() const;
    //! Copy with retired atoms removed.
    ParticleEnsemble compacted() const;
};

//! q sum m lambda^{alpha-gamma} / sum m lambda^alpha over live atoms.
double mean_field_u(LSWParams const& p, ParticleEnsemble const& e);

//! v_i = lambda_i^alpha (u - q lambda_i^{-gamma}); zero for retired atoms.
std::vector<double>
particle_velocities(LSWParams const& p, ParticleEnsemble const& e, double u);

//! Relative violation |sum m lambda^alpha (u - q lambda^-gamma)| / sum m lambda^alpha.
double constraint_residual(LSWParams const& p, ParticleEnsemble const& e, double u);

//! (q / (1 - gamma)) sum m lambda^{1-gamma}
double lsw_energy(LSWParams const& p, ParticleEnsemble const& e);
//! sum m lambda^alpha (c - q lambda^-gamma)^2
double lsw_dissipation_at(LSWParams const& p, ParticleEnsemble const& e, double c);
//! lsw_dissipation_at with c = mean_field_u
double lsw_dissipation(LSWParams const& p, ParticleEnsemble const& e);
//! sum m lambda^alpha w^2 over live atoms
double lsw_action(LSWParams const& p, ParticleEnsemble const& e, std::vector<double> const& w);

//---------------------------------------------------------------------------//
struct LswControls
{
    StepControls step;
    //! Retirement threshold as a fraction of the initial mass-weighted mean lambda.
    double lambda_min_factor{1e-6};
    double max_relative_change{0.1};
    std::size_t sample_stride{1};
    std::vector<double> sample_times;
    //! Per-atom relative velocity noise xi_i. When set, atoms move with the
    //! projection of w (1 + xi) onto the constraint instead of the flow.
    std::vector<double> velocity_noise;
    double energy_slack{1e-12};
};

struct Retirement
{
    double t;
    std::size_t index;
    double lambda;
    double mass;
};

struct LSWCurveRecord
{
    std::vector<double> times;
    std::vector<ParticleEnsemble> ensembles;

    //! Per accepted step; a retirement appends a left-limit and a
    //! right-limit entry at the same time.
    std::vector<double> trace_t;
    std::vector<double> trace_E;
    std::vector<double> trace_D;
    std::vector<double> trace_A;
    std::vector<double> trace_u;
    std::vector<double> trace_moment;
    //! Trace indices where a new quadrature segment begins.
    std::vector<std::size_t> breaks;

    std::vector<Retirement> retirements;
    double lambda_min{0};
    double vanished_mass{0};  //!< sum of m lambda at retirement
    double vanished_energy{0};  //!< sum of E contributions at retirement
    double max_constraint_residual{0};
    OdeStats stats;
};

LSWCurveRecord integrate_lsw(LSWParams const& p,
                             ParticleEnsemble const& e0,
                             double T,
                             LswControls const& controls);

struct LswJResult
{
    double J{0};  //!< raw, with retired energy counted as a decrease
    double J_corrected{0};  //!< vanished energy added back
    double delta_E{0};
    double int_D{0};
    double int_A{0};
    double identity_residual{0};  //!< E(T) - E(0) + int D
    double identity_residual_corrected{0};
    double quadrature_error{0};
};

LswJResult lsw_curve_J(LSWCurveRecord const& curve);

//! Largest relative first-moment drift between consecutive retirements.
double max_moment_drift(LSWCurveRecord const& curve);

//---------------------------------------------------------------------------//
//! Equal-mass atoms log-uniform on [lo, hi] scaled to first moment rho_bar.
ParticleEnsemble log_uniform_particles(std::size_t count,
                                       double lo,
                                       double hi,
                                       double rho_bar,
                                       unsigned long long seed);

std::string ensemble_csv(ParticleEnsemble const& e);

}  // namespace bdlab
