// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/integrate_bd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"

namespace bdlab
{
std::vector<double> covector_from_increments(std::vector<double> const& g)
{
    std::vector<double> phi(g.size() + 1, 0.0);
    for (std::size_t l = 1; l <= g.size(); ++l)
        phi[l] = phi[l - 1] + g[l - 1];
    return phi;
}

namespace
{
struct Evaluator
{
    EquilibriumTable const& table;
    BdControls const& ctl;
    double z;

    void rhs(std::vector<double> const& n, std::vector<double>& dn) const
    {
        ClusterState const s{n};
        if (ctl.flux_multiplier.empty())
        {
            dn = bd_rhs(table, s, ctl.time_scale);
            return;
        }
        auto J = fluxes(table, s);
        for (std::size_t i = 0; i < J.size(); ++i)
            J[i] *= ctl.flux_multiplier[i];
        std::size_t const L = n.size();
        dn.assign(L, 0.0);
        NeumaierSum total;
        for (double j : J)
            total += j;
        dn[0] = -J[0] - total.value();
        for (std::size_t l = 2; l <= L; ++l)
            dn[l - 1] = J[l - 2] - (l < L ? J[l - 1] : 0.0);
        for (auto& v : dn)
            v *= ctl.time_scale;
    }

    // (D, A) on the integrator clock without the time scale
    std::pair<double, double> dissipation_action(ClusterState const& s) const
    {
        auto const terms = dissipation_terms(table, s);
        NeumaierSum D, A;
        bool inf = false;
        for (std::size_t i = 0; i < terms.size(); ++i)
        {
            if (std::isinf(terms[i]))
            {
                inf = true;
                continue;
            }
            D += terms[i];
            double const m = ctl.flux_multiplier.empty() ? 1.0 : ctl.flux_multiplier[i];
            A += m * m * terms[i];
        }
        if (inf)
            return {infinity(), infinity()};
        return {D.value(), A.value()};
    }

    std::vector<double> covector(ClusterState const& s) const
    {
        if (ctl.flux_multiplier.empty())
        {
            auto phi = energy_gradient(table, s, z);
            for (auto& v : phi)
                v = -v;
            return phi;
        }
        auto const J = fluxes(table, s);
        auto const w = edge_weights(table, s);
        std::vector<double> g(J.size(), 0.0);
        for (std::size_t i = 0; i < J.size(); ++i)
            if (w[i] > 0.0)
                g[i] = ctl.flux_multiplier[i] * J[i] / w[i];
        return covector_from_increments(g);
    }
};
}  // namespace

CurveRecord integrate_bd(EquilibriumTable const& table,
                         ClusterState const& state0,
                         double T,
                         BdControls const& controls,
                         BdObserver const& observer)
{
    if (!(T > 0.0))
        throw std::invalid_argument("integrate_bd: T must be positive");
    if (state0.size() < 3)
        throw std::invalid_argument("integrate_bd: L must be >= 3");
    for (double v : state0.n)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("integrate_bd: initial densities must be finite and >= 0");
    if (!controls.flux_multiplier.empty()
        && controls.flux_multiplier.size() != state0.size() - 1)
        throw std::invalid_argument("integrate_bd: flux_multiplier must have L-1 entries");

    double const z = controls.z > 0.0 ? controls.z : table.z();
    Evaluator const ev{table, controls, z};
    std::size_t const L = state0.size();

    CurveRecord rec;
    rec.z = z;
    rec.time_scale = controls.time_scale;

    double F_now = free_energy(table, state0, z);
    double F_pending = F_now;

    auto record_trace = [&](double t, ClusterState const& s, double F) {
        auto const [D, A] = ev.dissipation_action(s);
        rec.trace_t.push_back(t);
        rec.trace_F.push_back(F);
        rec.trace_D.push_back(D);
        rec.trace_A.push_back(A);
        rec.trace_mass.push_back(s.mass());
        rec.truncation_metric
            = std::max(rec.truncation_metric, static_cast<double>(L) * s.n.back());
    };
    auto record_sample = [&](double t, ClusterState const& s) {
        rec.times.push_back(t);
        rec.states.push_back(s);
        if (controls.record_covectors)
            rec.covectors.push_back(ev.covector(s));
    };

    record_trace(0.0, state0, F_now);
    rec.initial_dissipation_infinite = std::isinf(rec.trace_D.front());
    record_sample(0.0, state0);
    if (observer)
        observer(0.0, state0);

    std::vector<double> stops;
    for (double ts : controls.sample_times)
        if (ts > 0.0 && ts < T)
            stops.push_back(ts);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    stops.push_back(T);

    std::size_t step_count = 0;
    double next_stop = stops.front();

    OdeHooks hooks;
    hooks.rhs = [&](double, std::vector<double> const& y, std::vector<double>& dy) {
        ev.rhs(y, dy);
    };
    hooks.admissible = [&](double, std::vector<double> const&, std::vector<double>& y) {
        double ymax = 0.0;
        double ymin = 0.0;
        for (double v : y)
        {
            ymax = std::max(ymax, v);
            ymin = std::min(ymin, v);
        }
        bool modified = false;
        if (ymin < 0.0)
        {
            if (ymin < -10.0 * std::numeric_limits<double>::epsilon() * ymax)
                return StepVerdict::reject;
            for (auto& v : y)
                v = std::max(v, 0.0);
            modified = true;
        }
        double const F_new = free_energy(table, ClusterState{y}, z);
        if (controls.enforce_energy_decrease
            && F_new > F_now + controls.energy_slack * (1.0 + std::fabs(F_now)))
            return StepVerdict::reject;
        F_pending = F_new;
        return modified ? StepVerdict::accept_modified : StepVerdict::accept;
    };
    hooks.on_accept = [&](double t, std::vector<double>& y) {
        F_now = F_pending;
        ClusterState const s{y};
        record_trace(t, s, F_now);
        ++step_count;
        bool const at_stop = t == next_stop;
        if (at_stop || step_count % std::max<std::size_t>(controls.sample_stride, 1) == 0)
            record_sample(t, s);
        if (observer)
            observer(t, s);
        return false;
    };

    DormandPrince dp(controls.step, std::move(hooks));
    std::vector<double> y = state0.n;
    double t = 0.0;
    for (double stop : stops)
    {
        next_stop = stop;
        dp.integrate(y, t, stop);
    }
    rec.stats = dp.stats();
    return rec;
}

namespace
{
std::size_t first_finite(CurveRecord const& c)
{
    std::size_t i = 0;
    while (i < c.trace_t.size()
           && !(std::isfinite(c.trace_D[i]) && std::isfinite(c.trace_A[i])))
        ++i;
    return i;
}
}  // namespace

JResult curve_J(CurveRecord const& curve)
{
    JResult r;
    std::size_t const i0 = first_finite(curve);
    if (i0 + 1 >= curve.trace_t.size())
        return r;
    std::span<double const> t(curve.trace_t);
    std::size_t const n = t.size() - i0;
    auto const D = integrate_samples(t.subspan(i0, n), std::span<double const>(curve.trace_D).subspan(i0, n));
    auto const A = integrate_samples(t.subspan(i0, n), std::span<double const>(curve.trace_A).subspan(i0, n));
    r.delta_F = curve.trace_F.back() - curve.trace_F[i0];
    r.int_D = curve.time_scale * D.value;
    r.int_A = curve.time_scale * A.value;
    r.quadrature_error = 0.5 * curve.time_scale * (D.error + A.error);
    r.J = r.delta_F + 0.5 * r.int_D + 0.5 * r.int_A;
    return r;
}

double energy_dissipation_residual(CurveRecord const& curve)
{
    std::size_t const i0 = first_finite(curve);
    if (i0 + 1 >= curve.trace_t.size())
        return 0.0;
    std::span<double const> t(curve.trace_t);
    std::size_t const n = t.size() - i0;
    auto const D = integrate_samples(t.subspan(i0, n), std::span<double const>(curve.trace_D).subspan(i0, n));
    return curve.trace_F.back() - curve.trace_F[i0] + curve.time_scale * D.value;
}

}  // namespace bdlab
