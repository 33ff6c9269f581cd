// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/initial.hpp"
#include "bdlab/integrate_bd.hpp"
#include "bdlab/measure_distance.hpp"
#include "bdlab/numeric.hpp"
#include "bdlab/quadrature.hpp"
#include "bdlab/reaction_network.hpp"
#include "bdlab/rescaling.hpp"

namespace bdlab
{
bool RunSummary::certified() const
{
    return std::all_of(
        certificates.begin(), certificates.end(), [](Certificate const& c) { return c.passed; });
}

bool strictly_decreasing(std::vector<double> const& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1]))
            return false;
    return true;
}

namespace
{
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string eps_label(double eps)
{
    return fmt::format("eps={}", eps);
}

std::vector<double> sample_grid(double T, std::size_t samples)
{
    std::vector<double> t;
    for (std::size_t k = 1; k < samples; ++k)
        t.push_back(T * static_cast<double>(k) / static_cast<double>(samples));
    t.push_back(0.5 * T);
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(),
                        [&](double a, double b) { return std::fabs(a - b) <= 1e-12 * T; }),
            t.end());
    return t;
}

void certify_bd(RunSummary& out,
                RunRecord& rec,
                CurveRecord const& curve,
                Certification const& bounds)
{
    double const m0 = curve.trace_mass.front();
    double drift = 0.0;
    for (double m : curve.trace_mass)
        drift = std::max(drift, std::fabs(m - m0) / m0);
    JResult const J = curve_J(curve);
    double const ed = energy_dissipation_residual(curve);
    std::size_t increases = 0;
    for (std::size_t i = 1; i < curve.trace_F.size(); ++i)
        if (curve.trace_F[i] > curve.trace_F[i - 1] + 1e-10 * (1.0 + std::fabs(curve.trace_F[i - 1])))
            ++increases;

    rec.scalars["mass_drift"] = drift;
    rec.scalars["delta_F"] = J.delta_F;
    rec.scalars["int_D"] = J.int_D;
    rec.scalars["J"] = J.J;
    rec.scalars["energy_dissipation_residual"] = ed;
    rec.scalars["quadrature_error"] = J.quadrature_error;
    rec.scalars["truncation_metric"] = curve.truncation_metric;
    rec.scalars["energy_increases"] = static_cast<double>(increases);
    rec.scalars["accepted_steps"] = static_cast<double>(curve.stats.accepted);
    rec.scalars["rejected_steps"]
        = static_cast<double>(curve.stats.rejected_error + curve.stats.rejected_admissibility);
    if (curve.initial_dissipation_infinite)
        rec.flags.push_back("initial_dissipation_infinite");

    double const ed_bound = std::max(bounds.energy_abs, bounds.energy_rel * std::fabs(J.delta_F));
    double const j_bound = bounds.j_rel * (std::fabs(J.delta_F) + J.int_D);
    out.certificates.push_back(
        {rec.label + " mass_drift", drift, bounds.mass_drift, drift <= bounds.mass_drift});
    out.certificates.push_back(
        {rec.label + " energy_dissipation", std::fabs(ed), ed_bound, std::fabs(ed) <= ed_bound});
    out.certificates.push_back({rec.label + " J", std::fabs(J.J), j_bound, std::fabs(J.J) <= j_bound});
    out.certificates.push_back(
        {rec.label + " energy_monotone", static_cast<double>(increases), 0.0, increases == 0});
}

std::optional<double> finite_or_blank(double v)
{
    if (std::isfinite(v))
        return v;
    return std::nullopt;
}

//---------------------------------------------------------------------------//
// One eps of the rescaled ladder.

struct LadderRun
{
    RunRecord rec;
    CurveRecord curve;
    ClusterState init;
    RescaleParams rp;
    double int_D_eps{0};
    double int_hu2{0};
    double avg_F_mic{0};
    std::size_t lsi_checked{0};
    std::size_t lsi_trivial{0};
    std::size_t lsi_violations{0};
};

LadderRun run_ladder_eps(ExperimentConfig const& cfg, double eps, std::vector<double> const& samples)
{
    auto const t0 = Clock::now();
    auto const& p = cfg.rates;
    LadderRun run;
    run.rp = RescaleParams::make(eps, cfg.cutoff_x);
    auto const& rp = run.rp;
    std::size_t const L = cfg.truncation_for(eps);
    auto const table = partition_coeffs(p, L + 1);

    auto init = make_initial(cfg.initial, table, rp, L);
    if (!std::holds_alternative<ClusterState>(init))
        throw std::invalid_argument(
            fmt::format("family '{}' does not produce a cluster state", cfg.initial.family));
    run.init = std::get<ClusterState>(init);

    LSWParams const lp = LSWParams::from(p, cfg.initial.rho_bar);
    double const dscale = rp.dissipation_scale(p);
    RunRecord& rec = run.rec;
    rec.label = eps_label(eps);
    rec.eps = eps;
    rec.l0 = rp.l0;
    rec.L = L;

    std::vector<double> tt, hu2, fmic, dd;
    double F0 = 0.0;
    double J_acc = 0.0;
    auto observer = [&](double t, ClusterState const& s) {
        SeriesRow row;
        row.t = t;
        row.mass = s.mass();
        row.F = free_energy(table, s, p.z_s);
        auto const split = rescaled_energies(table, s, rp);
        row.F_mic_eps = split.F_mic;
        row.F_mac_eps = split.F_mac;

        auto const terms = dissipation_terms(table, s);
        NeumaierSum mic, mac;
        bool inf = false;
        for (std::size_t l = 1; l < s.size(); ++l)
        {
            double const v = terms[l - 1];
            if (std::isinf(v))
                inf = true;
            else
                (l < rp.l0 ? mic : mac) += v;
        }
        if (!inf)
        {
            row.D_eps = dscale * (mic.value() + mac.value());
            row.D_mic_eps = dscale * mic.value();
            row.D_mac_eps = dscale * mac.value();
        }

        double const h = monomer_excess(s, eps, p.gamma, p.z_s);
        row.h_eps = h;
        try
        {
            row.u_eps = macroscopic_u_eps(table, s, eps, rp.l0);
        }
        catch (std::domain_error const&)
        {
        }
        auto const proj = project_mac(s, eps, rp.l0);
        if (proj.live_count() > 0)
        {
            row.E_lsw = lsw_energy(lp, proj);
            row.D_lsw = finite_or_blank(lsw_dissipation(lp, proj));
        }

        // Running J on the rescaled clock: F^eps(t) - F^eps(0) + int D^eps.
        if (tt.empty())
            F0 = split.F_total;
        else if (row.D_eps && !dd.empty() && std::isfinite(dd.back()))
            J_acc += 0.5 * (*row.D_eps + dd.back()) * (t - tt.back());
        row.J_partial = split.F_total - F0 + J_acc;

        tt.push_back(t);
        dd.push_back(row.D_eps.value_or(infinity()));
        double const diff = row.u_eps ? h - *row.u_eps : 0.0;
        hu2.push_back(diff * diff);
        fmic.push_back(split.F_mic);

        auto const lb = lsi_bound(table, s, rp.l0);
        ++run.lsi_checked;
        if (lb.trivial)
        {
            ++run.lsi_trivial;
        }
        else
        {
            double const H = quasistationary_entropy(table, s, rp.l0);
            double const Db = microscopic_dissipation_lower(table, s, rp.l0);
            if (H > lb.C_EED * Db * (1.0 + 1e-12))
                ++run.lsi_violations;
        }
        rec.series.push_back(std::move(row));
    };

    BdControls c;
    c.step = cfg.step;
    c.time_scale = rp.time_scale(p);
    c.sample_stride = std::numeric_limits<std::size_t>::max();
    c.sample_times = samples;
    run.curve = integrate_bd(table, run.init, cfg.T, c, observer);

    run.int_hu2 = trapezoid(tt, hu2);
    run.avg_F_mic = trapezoid(tt, fmic) / cfg.T;
    run.int_D_eps = J_acc;
    for (std::size_t i = 0; i < run.curve.times.size(); ++i)
        rec.cluster_snapshots.push_back({run.curve.times[i], run.curve.states[i]});
    rec.scalars["int_h_minus_u_sq"] = run.int_hu2;
    rec.scalars["avg_F_mic_eps"] = run.avg_F_mic;
    rec.scalars["int_D_eps"] = run.int_D_eps;
    rec.scalars["lsi_checked"] = static_cast<double>(run.lsi_checked);
    rec.scalars["lsi_trivial"] = static_cast<double>(run.lsi_trivial);
    rec.scalars["lsi_violations"] = static_cast<double>(run.lsi_violations);
    rec.wall_seconds = seconds_since(t0);
    return run;
}

std::vector<LadderRun> run_ladder(ExperimentConfig const& cfg, std::vector<double> const& samples)
{
    std::vector<std::future<LadderRun>> jobs;
    for (double eps : cfg.ladder)
        jobs.push_back(std::async(std::launch::async, [&cfg, &samples, eps] {
            return run_ladder_eps(cfg, eps, samples);
        }));
    std::vector<LadderRun> runs;
    for (std::size_t i = 0; i < jobs.size(); ++i)
    {
        try
        {
            runs.push_back(jobs[i].get());
        }
        catch (std::exception const& e)
        {
            throw std::runtime_error(fmt::format("{}: {}", eps_label(cfg.ladder[i]), e.what()));
        }
    }
    return runs;
}

std::size_t index_of_time(std::vector<double> const& times, double t)
{
    for (std::size_t i = 0; i < times.size(); ++i)
        if (std::fabs(times[i] - t) <= 1e-12 * std::max(1.0, std::fabs(t)))
            return i;
    throw std::logic_error(fmt::format("sample time {} was not recorded", t));
}

//---------------------------------------------------------------------------//
void scenario_bd_relax(ExperimentConfig const& cfg, RunSummary& out)
{
    auto const t0 = Clock::now();
    auto const& p = cfg.rates;
    std::size_t const L = cfg.L > 0 ? cfg.L : cfg.L_min;
    auto const table = partition_coeffs(p, L + 1);
    auto const rp = RescaleParams::make(cfg.ladder.front(), cfg.cutoff_x);
    auto init = make_initial(cfg.initial, table, rp, L);
    if (!std::holds_alternative<ClusterState>(init))
        throw std::invalid_argument("bd-relax needs a cluster-state family");
    auto const s0 = std::get<ClusterState>(init);

    RunRecord rec;
    rec.label = "bd";
    rec.L = L;
    std::vector<double> tt, dd;
    double F0 = 0.0, J_acc = 0.0;
    auto observer = [&](double t, ClusterState const& s) {
        SeriesRow row;
        row.t = t;
        row.mass = s.mass();
        row.F = free_energy(table, s, p.z_s);
        double const D = dissipation(table, s);
        if (tt.empty())
            F0 = *row.F;
        else if (std::isfinite(D) && std::isfinite(dd.back()))
            J_acc += 0.5 * (D + dd.back()) * (t - tt.back());
        row.J_partial = *row.F - F0 + J_acc;
        tt.push_back(t);
        dd.push_back(D);
        rec.series.push_back(std::move(row));
    };
    BdControls c;
    c.step = cfg.step;
    c.sample_stride = std::numeric_limits<std::size_t>::max();
    c.sample_times = sample_grid(cfg.T, cfg.samples);
    auto const curve = integrate_bd(table, s0, cfg.T, c, observer);
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        rec.cluster_snapshots.push_back({curve.times[i], curve.states[i]});

    double const rho0 = s0.mass();
    auto const sat = saturation_mass(p);
    rec.scalars["rho0"] = rho0;
    rec.scalars["rho_s"] = sat.rho_s;
    if (rho0 < sat.rho_s)
    {
        double const z = solve_fugacity(p, rho0);
        auto const w = equilibrium(table, z, L);
        NeumaierSum dist;
        for (std::size_t l = 1; l <= L; ++l)
            dist += static_cast<double>(l) * std::fabs(curve.states.back()(l) - w[l - 1]);
        rec.scalars["fugacity"] = z;
        rec.scalars["equilibrium_distance"] = dist.value();
    }
    else
    {
        rec.flags.push_back("supercritical");
    }
    certify_bd(out, rec, curve, cfg.certify);
    rec.wall_seconds = seconds_since(t0);
    out.runs.push_back(std::move(rec));
}

void ladder_certificates(RunSummary& out, std::vector<LadderRun>& runs, Certification const& b)
{
    for (auto& r : runs)
        certify_bd(out, r.rec, r.curve, b);
}

void scenario_bd_rescaled(ExperimentConfig const& cfg, RunSummary& out)
{
    auto runs = run_ladder(cfg, sample_grid(cfg.T, cfg.samples));
    ladder_certificates(out, runs, cfg.certify);
    for (auto& r : runs)
        out.runs.push_back(std::move(r.rec));
}

void scenario_quasistat(ExperimentConfig const& cfg, RunSummary& out)
{
    auto runs = run_ladder(cfg, sample_grid(cfg.T, cfg.samples));
    ladder_certificates(out, runs, cfg.certify);
    out.table_columns
        = {"eps", "l0", "L", "int_h_minus_u_sq", "avg_F_mic_eps", "lsi_checked", "lsi_trivial",
           "lsi_violations"};
    std::vector<double> hu, fm;
    for (auto& r : runs)
    {
        out.table_rows.push_back({r.rec.eps, static_cast<double>(r.rec.l0),
                                  static_cast<double>(r.rec.L), r.int_hu2, r.avg_F_mic,
                                  static_cast<double>(r.lsi_checked),
                                  static_cast<double>(r.lsi_trivial),
                                  static_cast<double>(r.lsi_violations)});
        hu.push_back(r.int_hu2);
        fm.push_back(r.avg_F_mic);
        out.certificates.push_back({r.rec.label + " lsi_violations",
                                    static_cast<double>(r.lsi_violations), 0.0,
                                    r.lsi_violations == 0});
        out.runs.push_back(std::move(r.rec));
    }
    out.trends.push_back({"int_h_minus_u_sq", hu, strictly_decreasing(hu)});
    out.trends.push_back({"avg_F_mic_eps", fm, strictly_decreasing(fm)});
}

//---------------------------------------------------------------------------//
RunRecord run_lsw_record(LSWParams const& lp,
                         ParticleEnsemble const& e0,
                         ExperimentConfig const& cfg,
                         std::vector<double> const& samples,
                         LSWCurveRecord& curve_out)
{
    auto const t0 = Clock::now();
    LswControls c;
    c.step = cfg.step;
    c.sample_stride = std::numeric_limits<std::size_t>::max();
    c.sample_times = samples;
    curve_out = integrate_lsw(lp, e0, cfg.T, c);
    auto const& curve = curve_out;

    RunRecord rec;
    rec.label = "lsw";
    double acc = 0.0;
    for (std::size_t i = 0; i < curve.trace_t.size(); ++i)
    {
        if (i > 0)
            acc += 0.5 * (curve.trace_D[i] + curve.trace_D[i - 1])
                   * (curve.trace_t[i] - curve.trace_t[i - 1]);
        SeriesRow row;
        row.t = curve.trace_t[i];
        row.mass = curve.trace_moment[i];
        row.E_lsw = curve.trace_E[i];
        row.D_lsw = curve.trace_D[i];
        row.J_partial = curve.trace_E[i] - curve.trace_E.front() + acc;
        rec.series.push_back(row);
    }
    for (std::size_t i = 0; i < curve.times.size(); ++i)
        rec.ensemble_snapshots.push_back({curve.times[i], curve.ensembles[i].compacted()});
    auto const J = lsw_curve_J(curve);
    rec.scalars["delta_E"] = J.delta_E;
    rec.scalars["int_D"] = J.int_D;
    rec.scalars["J"] = J.J;
    rec.scalars["J_corrected"] = J.J_corrected;
    rec.scalars["identity_residual_corrected"] = J.identity_residual_corrected;
    rec.scalars["vanished_mass"] = curve.vanished_mass;
    rec.scalars["vanished_energy"] = curve.vanished_energy;
    rec.scalars["retirements"] = static_cast<double>(curve.retirements.size());
    rec.scalars["moment_drift"] = max_moment_drift(curve);
    rec.scalars["max_constraint_residual"] = curve.max_constraint_residual;
    rec.scalars["accepted_steps"] = static_cast<double>(curve.stats.accepted);
    rec.wall_seconds = seconds_since(t0);
    return rec;
}

void certify_lsw(RunSummary& out, RunRecord const& rec, Certification const& b)
{
    auto const& s = rec.scalars;
    double const drift = s.at("moment_drift");
    double const J = std::fabs(s.at("J_corrected"));
    double const j_bound = b.j_rel * (std::fabs(s.at("delta_E")) + s.at("int_D"));
    out.certificates.push_back(
        {rec.label + " moment_drift", drift, b.mass_drift, drift <= b.mass_drift});
    out.certificates.push_back({rec.label + " J_corrected", J, j_bound, J <= j_bound});
}

void scenario_lsw(ExperimentConfig const& cfg, RunSummary& out)
{
    auto const& p = cfg.rates;
    LSWParams const lp = LSWParams::from(p, cfg.initial.rho_bar);
    auto const rp = RescaleParams::make(cfg.ladder.front(), cfg.cutoff_x);
    std::size_t const L = cfg.truncation_for(rp.eps);
    auto const table = partition_coeffs(p, L + 1);
    InitialSpec spec = cfg.initial;
    if (spec.family != "log-uniform-particles" && spec.family != "bd-projected")
        spec.family = "bd-projected";
    auto init = make_initial(spec, table, rp, L);
    auto const e0 = std::get<ParticleEnsemble>(init);
    LSWCurveRecord curve;
    auto rec = run_lsw_record(lp, e0, cfg, sample_grid(cfg.T, cfg.samples), curve);
    certify_lsw(out, rec, cfg.certify);
    out.runs.push_back(std::move(rec));
}

void scenario_converge(ExperimentConfig const& cfg, RunSummary& out)
{
    double const T = cfg.T;
    auto const samples = sample_grid(T, cfg.samples);
    auto runs = run_ladder(cfg, samples);
    ladder_certificates(out, runs, cfg.certify);

    auto const& p = cfg.rates;
    LSWParams const lp = LSWParams::from(p, cfg.initial.rho_bar);
    auto const& finest = runs.back();
    auto const ref0 = project_mac(finest.init, finest.rp.eps, finest.rp.l0);
    LSWCurveRecord lsw;
    auto lsw_rec = run_lsw_record(lp, ref0, cfg, samples, lsw);
    certify_lsw(out, lsw_rec, cfg.certify);
    auto const lsw_J = lsw_curve_J(lsw);

    auto const dict = TestDictionary::hat_log();
    out.table_columns = {"eps", "l0", "L", "dist_half", "dist_T", "gap_half", "gap_T",
                         "F_eps_T", "E_T", "int_A_eps", "int_A_lsw", "int_D_eps", "int_D_lsw"};
    std::vector<double> d_half, d_T, g_half, g_T;
    std::size_t const i_half_lsw = index_of_time(lsw.times, 0.5 * T);
    std::size_t const i_T_lsw = index_of_time(lsw.times, T);
    for (auto& r : runs)
    {
        std::size_t const L = r.rec.L;
        auto const table = partition_coeffs(p, L + 1);
        auto measure = [&](double t, std::size_t i_lsw, double& dist, double& gap, double& F) {
            auto const& s = r.curve.states[index_of_time(r.curve.times, t)];
            auto const proj = project_mac(s, r.rp.eps, r.rp.l0);
            dist = measure_distance(proj, lsw.ensembles[i_lsw], dict);
            F = rescaled_energies(table, s, r.rp).F_total;
            gap = F - lsw_energy(lp, proj);
            r.rec.ensemble_snapshots.push_back({t, proj});
        };
        double dh, dT, gh, gT, Fh, FT;
        measure(0.5 * T, i_half_lsw, dh, gh, Fh);
        measure(T, i_T_lsw, dT, gT, FT);
        // Along the flow A^eps = D^eps, and likewise for the LSW reference.
        out.table_rows.push_back({r.rec.eps, static_cast<double>(r.rec.l0),
                                  static_cast<double>(L), dh, dT, gh, gT, FT,
                                  lsw.trace_E.back(), r.int_D_eps, lsw_J.int_A, r.int_D_eps,
                                  lsw_J.int_D});
        d_half.push_back(dh);
        d_T.push_back(dT);
        g_half.push_back(std::fabs(gh));
        g_T.push_back(std::fabs(gT));
        r.rec.scalars["dist_half"] = dh;
        r.rec.scalars["dist_T"] = dT;
        r.rec.scalars["energy_gap_half"] = gh;
        r.rec.scalars["energy_gap_T"] = gT;
        out.runs.push_back(std::move(r.rec));
    }
    out.runs.push_back(std::move(lsw_rec));
    out.trends.push_back({"dist_half", d_half, strictly_decreasing(d_half)});
    out.trends.push_back({"dist_T", d_T, strictly_decreasing(d_T)});
    out.trends.push_back({"abs_energy_gap_half", g_half, strictly_decreasing(g_half)});
    out.trends.push_back({"abs_energy_gap_T", g_T, strictly_decreasing(g_T)});
}

//---------------------------------------------------------------------------//
void scenario_network(ExperimentConfig const& cfg, RunSummary& out)
{
    auto const t0 = Clock::now();
    auto const net = ReactionNetwork::load(cfg.network_file);
    std::mt19937_64 rng(cfg.initial.seed);
    std::uniform_real_distribution<double> U(0.5, 1.5);
    std::vector<double> n(net.species());
    for (std::size_t i = 0; i < n.size(); ++i)
        n[i] = net.omega()[i] * U(rng);

    auto const laws = conservation_laws(net);
    auto dot = [](std::vector<double> const& a, std::vector<double> const& b) {
        NeumaierSum s;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += a[i] * b[i];
        return s.value();
    };
    std::vector<double> c0;
    for (auto const& s : laws.basis)
        c0.push_back(dot(s, n));

    RunRecord rec;
    rec.label = "network";
    rec.L = net.species();
    double F_now = rn_free_energy(net, n);
    double F_pending = F_now;
    double drift = 0.0;
    std::size_t increases = 0;
    auto push_row = [&](double t, std::vector<double> const& y) {
        SeriesRow row;
        row.t = t;
        row.F = F_now;
        rec.series.push_back(row);
        for (std::size_t k = 0; k < laws.basis.size(); ++k)
            drift = std::max(drift, std::fabs(dot(laws.basis[k], y) - c0[k])
                                        / std::max(1.0, std::fabs(c0[k])));
    };
    push_row(0.0, n);

    OdeHooks hooks;
    hooks.rhs = [&](double, std::vector<double> const& y, std::vector<double>& dy) {
        dy = rn_rhs(net, y);
    };
    hooks.admissible = [&](double, std::vector<double> const&, std::vector<double>& y) {
        double const ymax = *std::max_element(y.begin(), y.end());
        bool modified = false;
        for (auto& v : y)
        {
            if (v >= 0.0)
                continue;
            if (v < -10.0 * std::numeric_limits<double>::epsilon() * ymax)
                return StepVerdict::reject;
            v = 0.0;
            modified = true;
        }
        F_pending = rn_free_energy(net, y);
        return modified ? StepVerdict::accept_modified : StepVerdict::accept;
    };
    hooks.on_accept = [&](double t, std::vector<double>& y) {
        if (F_pending > F_now + 1e-10 * (1.0 + std::fabs(F_now)))
            ++increases;
        F_now = F_pending;
        push_row(t, y);
        return false;
    };
    DormandPrince dp(cfg.step, std::move(hooks));
    double t = 0.0;
    dp.integrate(n, t, cfg.network_T);

    rec.scalars["conservation_drift"] = drift;
    rec.scalars["conservation_laws"] = static_cast<double>(laws.basis.size());
    rec.scalars["energy_increases"] = static_cast<double>(increases);
    rec.scalars["F_final"] = F_now;
    rec.scalars["accepted_steps"] = static_cast<double>(dp.stats().accepted);
    if (laws.skipped)
        rec.flags.push_back("conservation_laws_skipped");
    out.certificates.push_back(
        {"network conservation", drift, cfg.certify.mass_drift, drift <= cfg.certify.mass_drift});
    out.certificates.push_back(
        {"network energy_monotone", static_cast<double>(increases), 0.0, increases == 0});
    rec.wall_seconds = seconds_since(t0);
    out.runs.push_back(std::move(rec));
}

}  // namespace

RunSummary run_scenario(ExperimentConfig const& config, RunOptions const& options)
{
    config.validate();
    auto const t0 = Clock::now();
    RunSummary out;
    out.scenario = config.scenario;
    switch (config.scenario)
    {
        case Scenario::bd_relax: scenario_bd_relax(config, out); break;
        case Scenario::bd_rescaled: scenario_bd_rescaled(config, out); break;
        case Scenario::lsw: scenario_lsw(config, out); break;
        case Scenario::converge: scenario_converge(config, out); break;
        case Scenario::quasistat: scenario_quasistat(config, out); break;
        case Scenario::network: scenario_network(config, out); break;
    }
    out.wall_seconds = seconds_since(t0);
    if (!options.quiet)
        for (auto const& c : out.certificates)
            fmt::print(stderr, "{:<40} {:>12.4g} <= {:<12.4g} {}\n", c.name, c.value, c.bound,
                       c.passed ? "ok" : "FAIL");
    return out;
}

}  // namespace bdlab
