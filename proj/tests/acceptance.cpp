// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! Acceptance criteria 1-12. One PASS/FAIL line per criterion; exit status 1
//! when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "bdlab/checks.hpp"
#include "bdlab/initial.hpp"
#include "bdlab/integrate_bd.hpp"
#include "bdlab/numeric.hpp"
#include "bdlab/reaction_network.hpp"
#include "bdlab/rescaling.hpp"
#include "bdlab/scenarios.hpp"

using namespace bdlab;

namespace
{
using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool passed;
    std::string detail;
};

int failures = 0;

void criterion(int id, std::string const& name, std::function<Outcome()> const& body)
{
    auto const t0 = Clock::now();
    Outcome r{false, ""};
    try
    {
        r = body();
    }
    catch (std::exception const& e)
    {
        r = {false, fmt::format("exception: {}", e.what())};
    }
    double const secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!r.passed)
        ++failures;
    fmt::print("criterion {:>2} {} {:<34} {} [{:.2f} s]\n", id, r.passed ? "PASS" : "FAIL", name,
               r.detail, secs);
    std::fflush(stdout);
}

double max_abs(std::vector<double> const& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::fabs(x));
    return m;
}

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ReactionNetwork random_network(std::size_t N, std::size_t R, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(0.2, 2.0);
    std::uniform_int_distribution<std::size_t> sp(0, N - 1);
    std::uniform_int_distribution<int> co(0, 2);
    std::vector<double> omega(N);
    for (auto& w : omega)
        w = U(rng);
    std::vector<Reaction> rx;
    while (rx.size() < R)
    {
        Reaction r;
        for (int k = 0; k < 2; ++k)
        {
            if (int c = co(rng); c > 0)
                r.x.emplace_back(sp(rng), c);
            if (int c = co(rng); c > 0)
                r.y.emplace_back(sp(rng), c);
        }
        std::vector<int> d(N, 0);
        for (auto const& [i, c] : r.x)
            d[i] += c;
        for (auto const& [i, c] : r.y)
            d[i] -= c;
        if (std::all_of(d.begin(), d.end(), [](int v) { return v == 0; }))
            continue;
        double lx = 0.0, ly = 0.0;
        for (auto const& [i, c] : r.x)
            lx += c * std::log(omega[i]);
        for (auto const& [i, c] : r.y)
            ly += c * std::log(omega[i]);
        r.k_plus = U(rng);
        r.k_minus = r.k_plus * std::exp(lx - ly);
        rx.push_back(r);
    }
    return ReactionNetwork(N, std::move(rx), omega);
}

// Setting shared by criteria 3-5: default rates, L = 512, eps = 0.1 bump.
struct DefaultRun
{
    RateParams p;
    std::size_t L{512};
    EquilibriumTable table{partition_coeffs(RateParams{}, 513)};
    ClusterState s0;
    CurveRecord curve;
};

DefaultRun const& default_run()
{
    static DefaultRun const run = [] {
        DefaultRun r;
        auto const rp = RescaleParams::make(0.1);
        r.s0 = equilibrium_plus_bump(r.table, r.L, rp, 0.5, 0.5, 2.0);
        BdControls c;
        c.sample_stride = 64;
        r.curve = integrate_bd(r.table, r.s0, 10.0, c);
        return r;
    }();
    return run;
}

std::string const trend_regime = R"(
[rates]
gamma = 0.9
q = 20
z_s = 1
[rescale]
ladder = 0.2, 0.1, 0.05
x = 0.49
[truncation]
lambda_cap = 32
[initial]
family = equilibrium+bump
rho_bar = 20
bump_lo = 8
bump_hi = 16
[time]
T = 1
samples = 20
)";

std::string join(std::vector<double> const& v)
{
    std::string s;
    for (double x : v)
        s += fmt::format("{}{:.4g}", s.empty() ? "" : " ", x);
    return s;
}
}  // namespace

int main()
{
    RateParams const defaults;

    criterion(1, "gradient-flow identity", [&] {
        auto const t0 = Clock::now();
        std::mt19937_64 rng(101);
        double worst = 0.0;
        for (std::size_t L : {8, 64, 256})
        {
            auto const table = partition_coeffs(defaults, L + 1);
            for (int k = 0; k < 100; ++k)
            {
                auto const s = random_positive_state(table, L, rng);
                double const scale = 1.0 + max_abs(bd_rhs(table, s));
                worst = std::max(worst, gradient_flow_residual(table, s) / scale);
            }
        }
        double const secs = seconds_since(t0);
        return Outcome{worst <= 1e-10 && secs < 5.0,
                       fmt::format("max scaled residual {:.3g} <= 1e-10, {:.2f} s < 5 s", worst, secs)};
    });

    criterion(2, "detailed balance", [&] {
        auto const t0 = Clock::now();
        auto const table = partition_coeffs(defaults, 10'000);
        double worst = 0.0;
        for (double f : {0.05, 0.25, 0.5, 0.75, 1.0})
            worst = std::max(worst, detailed_balance_residual(table, f * defaults.z_s));
        double const secs = seconds_since(t0);
        return Outcome{worst <= 1e-12 && secs < 1.0,
                       fmt::format("max relative residual {:.3g} <= 1e-12, {:.2f} s < 1 s", worst, secs)};
    });

    criterion(3, "mass conservation", [&] {
        auto const& r = default_run();
        double const m0 = r.curve.trace_mass.front();
        double drift = 0.0;
        for (double m : r.curve.trace_mass)
            drift = std::max(drift, std::fabs(m - m0) / m0);
        return Outcome{drift <= 1e-8,
                       fmt::format("drift {:.3g} <= 1e-8, L max n_L = {:.3g}, {} steps", drift,
                                   r.curve.truncation_metric, r.curve.stats.accepted)};
    });

    criterion(4, "energy-dissipation identity", [&] {
        auto const& r = default_run();
        double const res = energy_dissipation_residual(r.curve);
        double const dF = r.curve.trace_F.back() - r.curve.trace_F.front();
        double const bound = std::max(1e-6, 1e-3 * std::fabs(dF));
        std::size_t increases = 0;
        for (std::size_t i = 1; i < r.curve.trace_F.size(); ++i)
            if (r.curve.trace_F[i] > r.curve.trace_F[i - 1])
                ++increases;
        return Outcome{std::fabs(res) <= bound && increases == 0,
                       fmt::format("|dF + int D| = {:.3g} <= {:.3g}, F increases at {} steps",
                                   std::fabs(res), bound, increases)};
    });

    criterion(5, "J certification", [&] {
        auto const& r = default_run();
        auto const sol = curve_J(r.curve);
        double const tol_bd = 1e-4 * (std::fabs(sol.delta_F) + sol.int_D);

        std::mt19937_64 rng(5);
        std::normal_distribution<double> noise(0.0, 0.1);
        BdControls c;
        c.sample_stride = 64;
        c.enforce_energy_decrease = false;
        c.flux_multiplier.resize(r.L - 1);
        for (auto& m : c.flux_multiplier)
            m = 1.0 + noise(rng);
        auto const pert = curve_J(integrate_bd(r.table, r.s0, 10.0, c));
        double const tol_pert = 1e-4 * (std::fabs(pert.delta_F) + pert.int_D);

        LSWParams const lp = LSWParams::from(defaults, 1.0);
        auto const e0 = log_uniform_particles(200, 0.5, 2.0, 1.0, 5);
        LswControls lc;
        lc.sample_stride = 1000;
        auto const lsol = lsw_curve_J(integrate_lsw(lp, e0, 2.0, lc));
        double const tol_lsw = 1e-4 * (std::fabs(lsol.delta_E) + lsol.int_D);
        lc.velocity_noise.resize(e0.size());
        for (auto& x : lc.velocity_noise)
            x = noise(rng);
        auto const lpert = lsw_curve_J(integrate_lsw(lp, e0, 2.0, lc));
        double const tol_lpert = 1e-4 * (std::fabs(lpert.delta_E) + lpert.int_D);

        bool const ok = std::fabs(sol.J) <= tol_bd && pert.J > 10.0 * tol_pert
                        && std::fabs(lsol.J_corrected) <= tol_lsw
                        && lpert.J_corrected > 10.0 * tol_lpert;
        return Outcome{ok, fmt::format("BD |J|/tol = {:.3g}, perturbed J/tol = {:.3g}; "
                                       "LSW |J|/tol = {:.3g}, perturbed J/tol = {:.3g}",
                                       std::fabs(sol.J) / tol_bd, pert.J / tol_pert,
                                       std::fabs(lsol.J_corrected) / tol_lsw,
                                       lpert.J_corrected / tol_lpert)};
    });

    criterion(6, "Q_l expansion", [&] {
        auto const t0 = Clock::now();
        auto const rows = ql_expansion_table(defaults, {64, 256, 1024, 4096, 16384});
        std::vector<double> err, scaled;
        for (auto const& row : rows)
        {
            err.push_back(row.rel_error);
            scaled.push_back(row.scaled_error);
        }
        double const secs = seconds_since(t0);
        double const bound = 10.0;
        double const worst = *std::max_element(scaled.begin(), scaled.end());
        bool const ok = strictly_decreasing(err) && worst <= bound && secs < 1.0;
        return Outcome{ok, fmt::format("error [{}] decreasing, max error*l^gamma {:.3g} <= {}, {:.2f} s",
                                       join(err), worst, bound, secs)};
    });

    criterion(7, "LSW particle method", [&] {
        LSWParams const lp{0.0, 0.5, 1.0, 1.0};
        ParticleEnsemble one;
        one.add(2.0, 0.5);
        LswControls c;
        auto const single = integrate_lsw(lp, one, 10.0, c);
        double const moved = std::fabs(single.ensembles.back().lambda[0] - 2.0) / 2.0;

        ParticleEnsemble two;
        two.add(1.0, 1.0);
        two.add(4.0, 1.0);
        // Constraint sum m v = 0 with v = u - q lambda^-gamma fixes u.
        double const u_hand = lp.q * (1.0 / std::sqrt(1.0) + 1.0 / std::sqrt(4.0)) / 2.0;
        double const D_hand
            = std::pow(u_hand - 1.0 / std::sqrt(1.0), 2) + std::pow(u_hand - 1.0 / std::sqrt(4.0), 2);
        double const u = mean_field_u(lp, two);
        double const D = lsw_dissipation(lp, two);
        auto const run = integrate_lsw(lp, two, 20.0, c);
        double const drift = max_moment_drift(run);

        bool const ok = moved <= 1e-12 && u == u_hand && u == 0.75 && D == D_hand && D == 0.125
                        && drift <= 1e-8 && !run.retirements.empty();
        return Outcome{ok, fmt::format("single particle moved {:.3g}, u = {}, D = {}, moment drift "
                                       "{:.3g}, {} retirement(s)",
                                       moved, u, D, drift, run.retirements.size())};
    });

    criterion(8, "u minimality", [&] {
        LSWParams const lp = LSWParams::from(defaults, 1.0);
        std::mt19937_64 rng(8);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k)
        {
            auto const e = random_ensemble(40, rng);
            double const u = mean_field_u(lp, e);
            double const Du = lsw_dissipation_at(lp, e, u);
            double best = Du;
            for (int i = 0; i <= 20'000; ++i)
                best = std::min(best, lsw_dissipation_at(lp, e, u - 1.0 + 1e-4 * i));
            worst = std::max(worst, Du - best);
        }
        return Outcome{worst <= 1e-8, fmt::format("grid beats u by at most {:.3g} <= 1e-8", worst)};
    });

    criterion(9, "network equivalence", [&] {
        std::size_t const L = 32;
        auto const table = partition_coeffs(defaults, L + 1);
        auto const net = bd_network(table, L);
        std::mt19937_64 rng(9);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k)
        {
            auto const s = random_positive_state(table, L, rng);
            auto const r1 = bd_rhs(table, s);
            auto const r2 = rn_rhs(net, s.n);
            double const scale = 1.0 + max_abs(r1);
            for (std::size_t i = 0; i < L; ++i)
                worst = std::max(worst, std::fabs(r1[i] - r2[i]) / scale);
            double const F = free_energy(table, s, defaults.z_s);
            worst = std::max(worst, std::fabs(F - rn_free_energy(net, s.n)) / (1.0 + std::fabs(F)));
            double const D = dissipation(table, s);
            worst = std::max(worst, std::fabs(D - rn_dissipation(net, s.n)) / (1.0 + std::fabs(D)));
        }

        double cons = 0.0;
        std::size_t laws = 0;
        std::uniform_int_distribution<std::size_t> size(3, 7);
        std::normal_distribution<double> G;
        for (int k = 0; k < 10; ++k)
        {
            std::size_t const N = size(rng);
            auto const rn = random_network(N, N - 1, rng);
            std::vector<double> n(N);
            for (std::size_t i = 0; i < N; ++i)
                n[i] = rn.omega()[i] * std::exp(G(rng));
            auto const r = rn_rhs(rn, n);
            auto const basis = conservation_laws(rn).basis;
            laws += basis.size();
            for (auto const& s : basis)
            {
                NeumaierSum dot;
                for (std::size_t i = 0; i < N; ++i)
                    dot += s[i] * r[i];
                cons = std::max(cons, std::fabs(dot.value()) / (1.0 + max_abs(r)));
            }
        }
        return Outcome{worst <= 1e-12 && cons <= 1e-12 && laws >= 10,
                       fmt::format("BD mismatch {:.3g} <= 1e-12, max |s.ndot| {:.3g} over {} laws",
                                   worst, cons, laws)};
    });

    criterion(10, "quasistationarity trends", [&] {
        auto cfg = parse_config_text("[scenario]\nname = quasistat\n" + trend_regime);
        auto const s = run_scenario(cfg, {true});
        std::vector<double> hu, fm;
        std::size_t checked = 0, trivial = 0, violations = 0;
        for (auto const& run : s.runs)
        {
            hu.push_back(run.scalars.at("int_h_minus_u_sq"));
            fm.push_back(run.scalars.at("avg_F_mic_eps"));
            checked += static_cast<std::size_t>(run.scalars.at("lsi_checked"));
            trivial += static_cast<std::size_t>(run.scalars.at("lsi_trivial"));
            violations += static_cast<std::size_t>(run.scalars.at("lsi_violations"));
        }
        bool const ok = strictly_decreasing(hu) && strictly_decreasing(fm) && violations == 0
                        && checked > trivial;
        return Outcome{ok, fmt::format("int (h-u)^2 [{}], avg F_mic [{}], LSI violations {} of {} "
                                       "({} trivial at l0 = 2)",
                                       join(hu), join(fm), violations, checked, trivial)};
    });

    criterion(11, "macroscopic limit trends", [&] {
        auto cfg = parse_config_text("[scenario]\nname = converge\n" + trend_regime);
        auto const s = run_scenario(cfg, {true});
        bool ok = true;
        std::string detail;
        for (auto const& t : s.trends)
        {
            ok = ok && t.passed;
            detail += fmt::format("{}{} [{}]", detail.empty() ? "" : ", ", t.name, join(t.values));
        }
        return Outcome{ok && s.trends.size() == 4, detail};
    });

    criterion(12, "modified BD", [&] {
        std::size_t const L = 64;
        auto const table = partition_coeffs(defaults, L + 1);
        std::mt19937_64 rng(12);
        double worst = 0.0;
        for (int k = 0; k < 100; ++k)
        {
            auto const s = random_positive_state(table, L, rng);
            double const scale = 1.0 + max_abs(modified_bd_rhs(table, s));
            worst = std::max(worst, modified_gradient_residual(table, s) / scale);
        }
        auto const s0 = random_positive_state(table, L, rng, 1.0);
        StepControls c;
        auto const run = integrate_modified_bd(table, s0, 5.0, c);
        std::size_t increases = 0;
        for (std::size_t i = 1; i < run.energy.size(); ++i)
            if (run.energy[i] > run.energy[i - 1])
                ++increases;
        return Outcome{worst <= 1e-10 && increases == 0,
                       fmt::format("max scaled residual {:.3g} <= 1e-10, F~ increases at {} of {} steps",
                                   worst, increases, run.energy.size())};
    });

    fmt::print("{} of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
