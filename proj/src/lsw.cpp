// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/lsw.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"
#include "bdlab/quadrature.hpp"

namespace bdlab
{
void LSWParams::validate() const
{
    RateParams{alpha, gamma, 1.0, q}.validate();
    if (!(rho_bar > 0.0))
        throw std::invalid_argument("LSWParams: rho_bar must be positive");
}

LSWParams LSWParams::from(RateParams const& p, double rho_bar)
{
    return {p.alpha, p.gamma, p.q, rho_bar};
}

void ParticleEnsemble::add(double l, double m)
{
    if (!(l > 0.0) || !(m > 0.0))
        throw std::invalid_argument("ParticleEnsemble: atoms need lambda > 0 and m > 0");
    lambda.push_back(l);
    mass.push_back(m);
    alive.push_back(1);
}

std::size_t ParticleEnsemble::live_count() const
{
    return static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
}

double ParticleEnsemble::first_moment() const
{
    NeumaierSum s;
    for (std::size_t i = 0; i < size(); ++i)
        if (alive[i])
            s += mass[i] * lambda[i];
    return s.value();
}

double ParticleEnsemble::total_mass() const
{
    NeumaierSum s;
    for (std::size_t i = 0; i < size(); ++i)
        if (alive[i])
            s += mass[i];
    return s.value();
}

ParticleEnsemble ParticleEnsemble::compacted() const
{
    ParticleEnsemble out;
    for (std::size_t i = 0; i < size(); ++i)
        if (alive[i])
            out.add(lambda[i], mass[i]);
    return out;
}

namespace
{
double pow_or_one(double x, double e)
{
    return e == 0.0 ? 1.0 : std::pow(x, e);
}

struct Moments
{
    double w_alpha;  // sum m lambda^alpha
    double w_alpha_gamma;  // sum m lambda^{alpha-gamma}
};

Moments moments(LSWParams const& p, std::vector<double> const& lambda,
                ParticleEnsemble const& e)
{
    NeumaierSum a, ag;
    for (std::size_t i = 0; i < e.size(); ++i)
    {
        if (!e.alive[i])
            continue;
        double const la = pow_or_one(lambda[i], p.alpha);
        a += e.mass[i] * la;
        ag += e.mass[i] * la * std::pow(lambda[i], -p.gamma);
    }
    return {a.value(), ag.value()};
}
}  // namespace

double mean_field_u(LSWParams const& p, ParticleEnsemble const& e)
{
    if (e.live_count() == 0)
        throw std::invalid_argument("mean_field_u: empty ensemble");
    auto const m = moments(p, e.lambda, e);
    return p.q * m.w_alpha_gamma / m.w_alpha;
}

std::vector<double>
particle_velocities(LSWParams const& p, ParticleEnsemble const& e, double u)
{
    std::vector<double> v(e.size(), 0.0);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e.alive[i])
            v[i] = pow_or_one(e.lambda[i], p.alpha)
                   * (u - p.q * std::pow(e.lambda[i], -p.gamma));
    return v;
}

double constraint_residual(LSWParams const& p, ParticleEnsemble const& e, double u)
{
    NeumaierSum s, norm;
    for (std::size_t i = 0; i < e.size(); ++i)
    {
        if (!e.alive[i])
            continue;
        double const la = e.mass[i] * pow_or_one(e.lambda[i], p.alpha);
        s += la * (u - p.q * std::pow(e.lambda[i], -p.gamma));
        norm += la;
    }
    return norm.value() > 0.0 ? std::fabs(s.value()) / norm.value() : 0.0;
}

double lsw_energy(LSWParams const& p, ParticleEnsemble const& e)
{
    NeumaierSum s;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e.alive[i])
            s += e.mass[i] * std::pow(e.lambda[i], 1.0 - p.gamma);
    return p.q / (1.0 - p.gamma) * s.value();
}

double lsw_dissipation_at(LSWParams const& p, ParticleEnsemble const& e, double c)
{
    NeumaierSum s;
    for (std::size_t i = 0; i < e.size(); ++i)
    {
        if (!e.alive[i])
            continue;
        double const w = c - p.q * std::pow(e.lambda[i], -p.gamma);
        s += e.mass[i] * pow_or_one(e.lambda[i], p.alpha) * w * w;
    }
    return s.value();
}

double lsw_dissipation(LSWParams const& p, ParticleEnsemble const& e)
{
    if (e.live_count() == 0)
        return 0.0;
    return lsw_dissipation_at(p, e, mean_field_u(p, e));
}

double lsw_action(LSWParams const& p, ParticleEnsemble const& e, std::vector<double> const& w)
{
    if (w.size() != e.size())
        throw std::invalid_argument("lsw_action: one potential value per atom required");
    NeumaierSum s;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e.alive[i])
            s += e.mass[i] * pow_or_one(e.lambda[i], p.alpha) * w[i] * w[i];
    return s.value();
}

//---------------------------------------------------------------------------//
namespace
{
// Velocity potential driving the curve: the flow's u - q lambda^-gamma, or
// its noisy projection.
std::vector<double> potential(LSWParams const& p,
                              std::vector<double> const& lambda,
                              ParticleEnsemble const& e,
                              std::vector<double> const& noise)
{
    std::vector<double> w(e.size(), 0.0);
    if (e.live_count() == 0)
        return w;
    auto const m = moments(p, lambda, e);
    double const u = p.q * m.w_alpha_gamma / m.w_alpha;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e.alive[i])
            w[i] = u - p.q * std::pow(lambda[i], -p.gamma);
    if (noise.empty())
        return w;
    NeumaierSum proj;
    for (std::size_t i = 0; i < e.size(); ++i)
    {
        if (!e.alive[i])
            continue;
        w[i] *= 1.0 + noise[i];
        proj += e.mass[i] * pow_or_one(lambda[i], p.alpha) * w[i];
    }
    double const shift = proj.value() / m.w_alpha;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e.alive[i])
            w[i] -= shift;
    return w;
}
}  // namespace

LSWCurveRecord integrate_lsw(LSWParams const& p,
                             ParticleEnsemble const& e0,
                             double T,
                             LswControls const& controls)
{
    p.validate();
    if (!(T > 0.0))
        throw std::invalid_argument("integrate_lsw: T must be positive");
    if (e0.live_count() == 0)
        throw std::invalid_argument("integrate_lsw: empty ensemble");
    if (!controls.velocity_noise.empty() && controls.velocity_noise.size() != e0.size())
        throw std::invalid_argument("integrate_lsw: one noise value per atom required");

    ParticleEnsemble ens = e0;
    LSWCurveRecord rec;
    rec.lambda_min = controls.lambda_min_factor * ens.first_moment() / ens.total_mass();

    auto const& noise = controls.velocity_noise;
    auto record_trace = [&](double t) {
        double const u = mean_field_u(p, ens);
        auto const w = potential(p, ens.lambda, ens, noise);
        rec.trace_t.push_back(t);
        rec.trace_E.push_back(lsw_energy(p, ens));
        rec.trace_D.push_back(lsw_dissipation_at(p, ens, u));
        rec.trace_A.push_back(lsw_action(p, ens, w));
        rec.trace_u.push_back(u);
        rec.trace_moment.push_back(ens.first_moment());
        rec.max_constraint_residual
            = std::max(rec.max_constraint_residual, constraint_residual(p, ens, u));
    };
    auto record_sample = [&](double t) {
        rec.times.push_back(t);
        rec.ensembles.push_back(ens);
    };

    record_trace(0.0);
    record_sample(0.0);

    std::vector<double> stops;
    for (double ts : controls.sample_times)
        if (ts > 0.0 && ts < T)
            stops.push_back(ts);
    std::sort(stops.begin(), stops.end());
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    stops.push_back(T);
    double next_stop = stops.front();
    std::size_t step_count = 0;
    double E_now = rec.trace_E.front();
    double E_pending = E_now;

    OdeHooks hooks;
    hooks.rhs = [&](double, std::vector<double> const& y, std::vector<double>& dy) {
        dy.assign(y.size(), 0.0);
        for (std::size_t i = 0; i < y.size(); ++i)
            if (ens.alive[i] && !(y[i] > 0.0))
            {
                // Outside the domain; poison the stage so error control rejects it.
                dy.assign(y.size(), std::numeric_limits<double>::quiet_NaN());
                return;
            }
        if (ens.live_count() == 0)
            return;
        auto const w = potential(p, y, ens, noise);
        for (std::size_t i = 0; i < y.size(); ++i)
            if (ens.alive[i])
                dy[i] = pow_or_one(y[i], p.alpha) * w[i];
    };
    hooks.admissible = [&](double, std::vector<double> const& y_old, std::vector<double>& y) {
        for (std::size_t i = 0; i < y.size(); ++i)
        {
            if (!ens.alive[i])
                continue;
            if (!(y[i] > 0.0)
                || std::fabs(y[i] - y_old[i]) > controls.max_relative_change * y_old[i])
                return StepVerdict::reject;
        }
        ParticleEnsemble trial = ens;
        trial.lambda = y;
        double const E_new = lsw_energy(p, trial);
        if (E_new > E_now + controls.energy_slack * (1.0 + std::fabs(E_now)))
            return StepVerdict::reject;
        E_pending = E_new;
        return StepVerdict::accept;
    };
    hooks.on_accept = [&](double t, std::vector<double>& y) {
        ens.lambda = y;
        E_now = E_pending;
        bool retired = false;
        for (std::size_t i = 0; i < ens.size(); ++i)
            if (ens.alive[i] && ens.lambda[i] <= rec.lambda_min)
                retired = true;
        if (retired)
        {
            record_trace(t);  // left limit
            for (std::size_t i = 0; i < ens.size(); ++i)
            {
                if (!ens.alive[i] || ens.lambda[i] > rec.lambda_min)
                    continue;
                rec.retirements.push_back({t, i, ens.lambda[i], ens.mass[i]});
                rec.vanished_mass += ens.mass[i] * ens.lambda[i];
                rec.vanished_energy
                    += p.q / (1.0 - p.gamma) * ens.mass[i] * std::pow(ens.lambda[i], 1.0 - p.gamma);
                ens.alive[i] = 0;
            }
            E_now = lsw_energy(p, ens);
            if (ens.live_count() == 0)
                throw IntegrationError("integrate_lsw: every atom retired", t);
            rec.breaks.push_back(rec.trace_t.size());
        }
        record_trace(t);
        ++step_count;
        if (t == next_stop || step_count % std::max<std::size_t>(controls.sample_stride, 1) == 0)
            record_sample(t);
        return retired;
    };

    DormandPrince dp(controls.step, std::move(hooks));
    std::vector<double> y = ens.lambda;
    double t = 0.0;
    for (double stop : stops)
    {
        next_stop = stop;
        dp.integrate(y, t, stop);
    }
    if (rec.times.back() != t)
        record_sample(t);
    rec.stats = dp.stats();
    return rec;
}

LswJResult lsw_curve_J(LSWCurveRecord const& curve)
{
    LswJResult r;
    if (curve.trace_t.size() < 2)
        return r;
    auto const D = integrate_segments(curve.trace_t, curve.trace_D, curve.breaks);
    auto const A = integrate_segments(curve.trace_t, curve.trace_A, curve.breaks);
    r.delta_E = curve.trace_E.back() - curve.trace_E.front();
    r.int_D = D.value;
    r.int_A = A.value;
    r.quadrature_error = 0.5 * (D.error + A.error);
    r.J = r.delta_E + 0.5 * r.int_D + 0.5 * r.int_A;
    r.J_corrected = r.J + curve.vanished_energy;
    r.identity_residual = r.delta_E + r.int_D;
    r.identity_residual_corrected = r.identity_residual + curve.vanished_energy;
    return r;
}

double max_moment_drift(LSWCurveRecord const& curve)
{
    double worst = 0.0;
    std::size_t seg = 0;
    double ref = curve.trace_moment.empty() ? 0.0 : curve.trace_moment.front();
    for (std::size_t i = 0; i < curve.trace_moment.size(); ++i)
    {
        if (seg < curve.breaks.size() && i == curve.breaks[seg])
        {
            ref = curve.trace_moment[i];
            ++seg;
        }
        worst = std::max(worst, std::fabs(curve.trace_moment[i] - ref) / ref);
    }
    return worst;
}

ParticleEnsemble log_uniform_particles(std::size_t count,
                                       double lo,
                                       double hi,
                                       double rho_bar,
                                       unsigned long long seed)
{
    if (count == 0 || !(lo > 0.0) || !(hi > lo) || !(rho_bar > 0.0))
        throw std::invalid_argument("log_uniform_particles: bad arguments");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(std::log(lo), std::log(hi));
    std::vector<double> lam(count);
    NeumaierSum moment;
    for (auto& l : lam)
    {
        l = std::exp(U(rng));
        moment += l;
    }
    double const m = rho_bar / moment.value();
    ParticleEnsemble e;
    for (double l : lam)
        e.add(l, m);
    return e;
}

std::string ensemble_csv(ParticleEnsemble const& e)
{
    std::string out = "lambda,mass\n";
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e.alive[i])
            out += fmt::format("{:.17g},{:.17g}\n", e.lambda[i], e.mass[i]);
    return out;
}

}  // namespace bdlab
