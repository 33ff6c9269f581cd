// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file integrate_bd.hpp
//! Adaptive time integration of the truncated system and the J-functional.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "bdlab/bd_core.hpp"
#include "bdlab/ode.hpp"
#include "bdlab/quadrature.hpp"

namespace bdlab
{
struct BdControls
{
    StepControls step;
    //! Multiplies the right-hand side; eps^{-(1-alpha+gamma)} for the
    //! rescaled clock.
    double time_scale{1.0};
    //! Fugacity of the monitored free energy; 0 selects z_s.
    double z{0.0};
    //! Keep every k-th accepted state as a sample (the endpoints always).
    std::size_t sample_stride{1};
    //! Additional sample times the stepper lands on exactly.
    std::vector<double> sample_times;
    bool record_covectors{false};
    //! Optional per-edge flux multipliers m_l > 0 (l = 1..L-1). The curve then
    //! moves along -sum m_l J_l (e^1 + e^l - e^{l+1}) instead of the flow.
    std::vector<double> flux_multiplier;
    //! Relative slack of the energy-decrease acceptance test.
    double energy_slack{1e-10};
    //! Enforce the energy-decrease test (disable for non-gradient curves).
    bool enforce_energy_decrease{true};
};

/*!
 * Sampled trajectory plus a per-accepted-step trace of scalar functionals.
 *
 * D and A are stored on the integrator clock without the time_scale factor;
 * curve_J applies it.
 */
struct CurveRecord
{
    std::vector<double> times;
    std::vector<ClusterState> states;
    std::vector<std::vector<double>> covectors;

    //! One entry per accepted step (including t = 0).
    std::vector<double> trace_t;
    std::vector<double> trace_F;
    std::vector<double> trace_D;
    std::vector<double> trace_A;
    std::vector<double> trace_mass;

    double z{0};
    double time_scale{1};
    double truncation_metric{0};  //!< max_t L n_L
    bool initial_dissipation_infinite{false};
    OdeStats stats;
};

//! Observer called on the initial state and after every accepted step.
using BdObserver = std::function<void(double t, ClusterState const&)>;

CurveRecord integrate_bd(EquilibriumTable const& table,
                         ClusterState const& state0,
                         double T,
                         BdControls const& controls,
                         BdObserver const& observer = {});

struct JResult
{
    double J{0};
    double delta_F{0};
    double int_D{0};  //!< time_scale-weighted
    double int_A{0};  //!< time_scale-weighted
    double quadrature_error{0};
};

//! F(T) - F(0) + 1/2 s int D + 1/2 s int A over the accepted-step trace.
JResult curve_J(CurveRecord const& curve);

//! Energy-dissipation residual F(T) - F(0) + s int D.
double energy_dissipation_residual(CurveRecord const& curve);

//! Covector with phi_1 = 0 whose increments realise edge velocities g_l.
std::vector<double> covector_from_increments(std::vector<double> const& g);

}  // namespace bdlab
