// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "bdlab/error.hpp"

namespace bdlab
{
namespace
{
// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace

DormandPrince::DormandPrince(StepControls controls, OdeHooks hooks)
    : ctl_(controls), hooks_(std::move(hooks)), dt_(controls.dt_init)
{
    if (!hooks_.rhs)
        throw std::invalid_argument("DormandPrince: rhs hook is required");
    if (!(ctl_.dt_init > 0.0) || !(ctl_.dt_min > 0.0))
        throw std::invalid_argument("DormandPrince: step sizes must be positive");
}

void DormandPrince::integrate(std::vector<double>& y, double& t, double t_end)
{
    std::size_t const n = y.size();
    for (auto& k : k_)
        k.resize(n);
    tmp_.resize(n);
    y_new_.resize(n);
    if (!have_k1_ || k_[0].size() != n)
    {
        hooks_.rhs(t, y, k_[0]);
        have_k1_ = true;
    }

    auto stage = [&](std::initializer_list<std::pair<int, double>> terms, double h) {
        for (std::size_t i = 0; i < n; ++i)
        {
            double acc = 0.0;
            for (auto const& [j, a] : terms)
                acc += a * k_[j][i];
            tmp_[i] = y[i] + h * acc;
        }
    };

    while (t < t_end)
    {
        if (stats_.accepted + stats_.rejected_error + stats_.rejected_admissibility
            >= ctl_.max_steps)
            throw IntegrationError("step budget exhausted", t);
        double const want = std::min(dt_, ctl_.dt_max);
        double h = std::min(want, t_end - t);
        bool const last = h >= t_end - t;
        bool const clipped = h < want;
        if (h < ctl_.dt_min && !last)
            throw IntegrationError(
                fmt::format("step size {} fell below dt_min {} at t = {}", h, ctl_.dt_min, t),
                t);

        stage({{0, a21}}, h);
        hooks_.rhs(t + c2 * h, tmp_, k_[1]);
        stage({{0, a31}, {1, a32}}, h);
        hooks_.rhs(t + c3 * h, tmp_, k_[2]);
        stage({{0, a41}, {1, a42}, {2, a43}}, h);
        hooks_.rhs(t + c4 * h, tmp_, k_[3]);
        stage({{0, a51}, {1, a52}, {2, a53}, {3, a54}}, h);
        hooks_.rhs(t + c5 * h, tmp_, k_[4]);
        stage({{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}}, h);
        hooks_.rhs(t + h, tmp_, k_[5]);
        for (std::size_t i = 0; i < n; ++i)
            y_new_[i] = y[i]
                        + h * (b1 * k_[0][i] + b3 * k_[2][i] + b4 * k_[3][i]
                               + b5 * k_[4][i] + b6 * k_[5][i]);
        hooks_.rhs(t + h, y_new_, k_[6]);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            double const e = h
                             * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i]
                                + e5 * k_[4][i] + e6 * k_[5][i] + e7 * k_[6][i]);
            double const sc = ctl_.abs_tol
                              + ctl_.rel_tol * std::max(std::fabs(y[i]), std::fabs(y_new_[i]));
            err = std::max(err, std::fabs(e) / sc);
        }
        if (!std::isfinite(err))
            err = 1e10;

        if (err > 1.0)
        {
            ++stats_.rejected_error;
            dt_ = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            if (dt_ < ctl_.dt_min)
                throw IntegrationError(
                    fmt::format("error control drove step below dt_min at t = {}", t), t);
            continue;
        }

        bool modified = false;
        if (hooks_.admissible)
        {
            auto const verdict = hooks_.admissible(t + h, y, y_new_);
            modified = verdict == StepVerdict::accept_modified;
            if (verdict == StepVerdict::reject)
            {
                ++stats_.rejected_admissibility;
                dt_ = 0.5 * h;
                if (dt_ < ctl_.dt_min)
                    throw IntegrationError(
                        fmt::format("admissibility drove step below dt_min at t = {}", t), t);
                continue;
            }
        }

        double const factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        t = last ? t_end : t + h;
        std::swap(y, y_new_);
        ++stats_.accepted;
        stats_.last_dt = h;
        // An endpoint-clipped step says little about the natural step size.
        dt_ = clipped ? std::max(dt_, h * factor) : h * factor;

        if (hooks_.on_accept && hooks_.on_accept(t, y))
            modified = true;
        if (modified)
            hooks_.rhs(t, y, k_[0]);
        else
            std::swap(k_[0], k_[6]);
    }
}

}  // namespace bdlab
