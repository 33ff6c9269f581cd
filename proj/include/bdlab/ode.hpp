// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file ode.hpp
//! Adaptive Dormand-Prince 5(4) driver with admissibility hooks.
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace bdlab
{
//! Step-size controls shared by all integrators.
struct StepControls
{
    double dt_init{1e-4};
    double dt_min{1e-14};
    double dt_max{std::numeric_limits<double>::infinity()};
    double rel_tol{1e-8};
    double abs_tol{1e-12};
    std::size_t max_steps{50'000'000};
};

enum class StepVerdict
{
    accept,
    accept_modified,  //!< accepted after the hook changed the candidate
    reject  //!< inadmissible candidate; retry with half the step
};

struct OdeHooks
{
    using Vec = std::vector<double>;

    //! dy = f(t, y)
    std::function<void(double, Vec const&, Vec&)> rhs;
    //! May modify the candidate (e.g. clamp roundoff negatives).
    std::function<StepVerdict(double t, Vec const& y_old, Vec& y_new)> admissible;
    //! Called after each accepted step; returns true if it modified y, which
    //! invalidates the stored derivative.
    std::function<bool(double t, Vec& y)> on_accept;
};

struct OdeStats
{
    std::size_t accepted{0};
    std::size_t rejected_error{0};
    std::size_t rejected_admissibility{0};
    double last_dt{0};
};

/*!
 * Embedded 5(4) pair with first-same-as-last reuse.
 *
 * The error norm is max_i |err_i| / (abs_tol + rel_tol max(|y_i|, |y_new_i|)).
 * Step factors are 0.9 err^{-1/5} clamped to [0.2, 5]. Throws
 * IntegrationError when the step would drop below dt_min.
 */
class DormandPrince
{
  public:
    DormandPrince(StepControls controls, OdeHooks hooks);

    //! Advance y from t to t_end (inclusive of the endpoint).
    void integrate(std::vector<double>& y, double& t, double t_end);

    OdeStats const& stats() const { return stats_; }
    double dt() const { return dt_; }

  private:
    StepControls ctl_;
    OdeHooks hooks_;
    OdeStats stats_;
    double dt_;
    bool have_k1_{false};
    std::vector<double> k_[7];
    std::vector<double> tmp_, y_new_;
};

}  // namespace bdlab
