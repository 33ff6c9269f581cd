// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/rescaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/numeric.hpp"

namespace bdlab
{
RescaleParams RescaleParams::make(double eps, double x)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument(fmt::format("eps={} outside (0,1)", eps));
    if (!(x > 0.0 && x < 0.5))
        throw std::invalid_argument(fmt::format("x={} outside (0,1/2)", x));
    // The relative nudge keeps exact powers such as 0.25^-0.5 from rounding down.
    auto const l0 = static_cast<std::size_t>(std::floor(std::pow(eps, -x) * (1.0 + 1e-12)));
    if (l0 < 2)
        throw std::invalid_argument(
            fmt::format("cutoff floor(eps^-x) = {} < 2 for eps={}, x={}", l0, eps, x));
    return {eps, x, l0};
}

double RescaleParams::time_scale(RateParams const& p) const
{
    return std::pow(eps, -(1.0 - p.alpha + p.gamma));
}

double RescaleParams::energy_scale(RateParams const& p) const
{
    return p.z_s * std::pow(eps, -p.gamma);
}

double RescaleParams::dissipation_scale(RateParams const& p) const
{
    return p.z_s * std::pow(eps, -(1.0 - p.alpha + 2.0 * p.gamma));
}

ParticleEnsemble project_mac(ClusterState const& s, double eps, std::size_t l0)
{
    ParticleEnsemble e;
    for (std::size_t l = std::max<std::size_t>(l0, 1); l <= s.size(); ++l)
        if (s(l) > 0.0)
            e.add(eps * static_cast<double>(l), s(l) / eps);
    return e;
}

EnergySplit rescaled_energies(EquilibriumTable const& table,
                              ClusterState const& s,
                              RescaleParams const& rp)
{
    auto const& p = table.params();
    double const scale = rp.energy_scale(p);
    double const z = p.z_s;
    EnergySplit out;
    double const mic = rp.l0 > 1 ? free_energy_range(table, s, z, 1, rp.l0 - 1) : 0.0;
    out.F_l0 = free_energy_range(table, s, z, rp.l0, s.size());
    out.F_mic = scale * mic;
    out.F_mac = scale * out.F_l0;
    out.F_total = out.F_mic + out.F_mac;
    NeumaierSum lsw;
    for (std::size_t l = rp.l0; l <= s.size(); ++l)
        lsw += std::pow(static_cast<double>(l), 1.0 - p.gamma) * s(l);
    out.F_l0_lsw = p.q / (p.z_s * (1.0 - p.gamma)) * lsw.value();
    return out;
}

double monomer_excess(ClusterState const& s, double eps, double gamma, double z_s)
{
    return (s(1) - z_s) / std::pow(eps, gamma);
}

double macroscopic_u_eps(EquilibriumTable const& table,
                         ClusterState const& s,
                         double eps,
                         std::size_t l0,
                         bool literal)
{
    auto const& p = table.params();
    double const zf = literal ? 1.0 : p.z_s;
    std::size_t const L = s.size();
    NeumaierSum num, den;
    for (std::size_t l = l0; l <= L; ++l)
    {
        double const next = l < L ? table.b(l + 1) * s(l + 1) : 0.0;
        num += next - zf * table.a(l) * s(l);
        den += table.a(l) * s(l);
    }
    if (!(den.value() > 0.0))
        throw std::domain_error("macroscopic_u_eps: no mass on large clusters");
    return num.value() / (std::pow(eps, p.gamma) * den.value());
}

RescaledActionDissipation rescaled_action_dissipation(EquilibriumTable const& table,
                                                      ClusterState const& s,
                                                      std::vector<double> const& phi,
                                                      RescaleParams const& rp)
{
    double const scale = rp.dissipation_scale(table.params());
    auto const a = action_terms(table, s, phi);
    auto const d = dissipation_terms(table, s);
    NeumaierSum A, mic, mac;
    RescaledActionDissipation out;
    for (std::size_t l = 1; l < s.size(); ++l)
    {
        A += a[l - 1];
        double const t = d[l - 1];
        if (std::isinf(t))
        {
            out.D_infinite = true;
            continue;
        }
        (l < rp.l0 ? mic : mac) += t;
    }
    out.A = scale * A.value();
    out.D_mic = scale * mic.value();
    out.D_mac = scale * mac.value();
    out.D = out.D_infinite ? infinity() : out.D_mic + out.D_mac;
    if (out.D_infinite)
        out.D_mic = out.D_mac = infinity();
    return out;
}

double quasistationary_entropy(EquilibriumTable const& table,
                               ClusterState const& s,
                               std::size_t l0)
{
    if (!(s(1) > 0.0))
        throw std::invalid_argument("quasistationary_entropy: n_1 must be positive");
    double const lz = std::log(s(1));
    NeumaierSum H;
    for (std::size_t l = 1; l < l0 && l <= s.size(); ++l)
    {
        double const lw = table.log_omega_from_log_z(l, lz);
        double const nl = s(l);
        if (nl == 0.0)
            H += std::exp(lw);
        else
            H += nl * (std::log(nl) - lw) - nl + std::exp(lw);
    }
    return H.value();
}

double microscopic_dissipation_lower(EquilibriumTable const& table,
                                     ClusterState const& s,
                                     std::size_t l0)
{
    if (!(s(1) > 0.0))
        throw std::invalid_argument("microscopic_dissipation_lower: n_1 must be positive");
    double const lz = std::log(s(1));
    NeumaierSum D;
    for (std::size_t l = 1; l < l0 && l < s.size(); ++l)
    {
        double const lw = table.log_omega_from_log_z(l, lz);
        double const lw1 = table.log_omega_from_log_z(l + 1, lz);
        // a_l n_1 omega_l (sqrt(n_l/omega_l) - sqrt(n_{l+1}/omega_{l+1}))^2
        // = a_l n_1 (sqrt(n_l) - sqrt(n_{l+1} omega_l / omega_{l+1}))^2
        double const r = std::sqrt(s(l)) - std::sqrt(s(l + 1) * std::exp(lw - lw1));
        D += table.a(l) * s(1) * r * r;
    }
    return 4.0 * D.value();
}

CsiszarPinsker csiszar_pinsker_diagnostics(EquilibriumTable const& table,
                                           ClusterState const& s,
                                           std::size_t l0,
                                           double rho_s)
{
    auto const& p = table.params();
    CsiszarPinsker out;
    double const F = free_energy(table, s, p.z_s);
    if (!(F > 0.0))
    {
        out.guarded = true;
        return out;
    }
    double const lz = std::log(p.z_s);
    NeumaierSum num, tail;
    for (std::size_t l = 1; l <= s.size(); ++l)
    {
        double const ll = static_cast<double>(l);
        double const w = std::exp(table.log_omega_from_log_z(l, lz));
        num += std::pow(ll, 1.0 - p.gamma) * std::fabs(s(l) - w);
        if (l >= l0)
            tail += ll * s(l);
    }
    out.ratio_43 = num.value() / std::sqrt(F);
    out.residual_44 = std::fabs(tail.value() - (s.mass() - rho_s));
    return out;
}

std::vector<double> log_tail_sums(EquilibriumTable const& table, double z, std::size_t l0)
{
    double const lz = std::log(z);
    std::vector<double> W(l0 > 1 ? l0 - 1 : 0, -infinity());
    double acc = -infinity();
    for (std::size_t l = l0 - 1; l >= 1; --l)
    {
        acc = log_add_exp(acc, table.log_omega_from_log_z(l, lz));
        W[l - 1] = acc;
    }
    return W;
}

LsiBound lsi_bound(EquilibriumTable const& table, ClusterState const& s, std::size_t l0)
{
    if (!(s(1) > 0.0))
        throw std::invalid_argument("lsi_bound: n_1 must be positive");
    if (l0 < 2)
        throw std::invalid_argument("lsi_bound: l0 must be >= 2");
    LsiBound out;
    if (l0 == 2)
    {
        out.trivial = true;
        return out;
    }
    double const z = s(1);
    double const lz = std::log(z);
    auto const logW = log_tail_sums(table, z, l0);
    double log_V = -infinity();
    double sup = -infinity();
    for (std::size_t l = 2; l < l0; ++l)
    {
        log_V = log_add_exp(
            log_V, -std::log(table.a(l - 1)) - table.log_omega_from_log_z(l - 1, lz));
        double const gap = logW[0] - logW[l - 1];
        if (gap <= 0.0)
            continue;
        sup = std::max(sup, logW[l - 1] + std::log(gap) + log_V);
    }
    out.C_LSI = 480.0 * std::exp(sup);
    NeumaierSum n_sum;
    for (std::size_t l = 1; l < l0 && l <= s.size(); ++l)
        n_sum += s(l);
    double const w_sum = std::exp(logW[0]);
    out.C_EED = (z * z + 2.0 * n_sum.value() * w_sum) / (z * z) * out.C_LSI;
    return out;
}

FluxMeasures rescaled_flux_measures(EquilibriumTable const& table,
                                    ClusterState const& s,
                                    std::vector<double> const& phi,
                                    double eps,
                                    std::size_t l0)
{
    auto const& p = table.params();
    double const ts = std::pow(eps, -(1.0 - p.alpha + p.gamma));
    auto const J = fluxes(table, s);
    auto const w = edge_weights(table, s);
    FluxMeasures out;
    for (std::size_t l = l0; l < s.size(); ++l)
    {
        out.lambda.push_back(eps * static_cast<double>(l));
        double const g = w[l - 1] == 0.0 ? 0.0 : w[l - 1] * nabla(phi, l);
        out.mu.push_back(ts * g);
        out.mu_hat.push_back(ts * J[l - 1]);
    }
    return out;
}

double continuity_residual(EquilibriumTable const& table,
                           ClusterState const& before,
                           ClusterState const& after,
                           double dt,
                           double eps,
                           std::size_t l0)
{
    auto phi_of = [&](ClusterState const& s) {
        auto g = energy_gradient(table, s, table.z());
        for (auto& v : g)
            v = -v;
        return g;
    };
    auto const m0 = rescaled_flux_measures(table, before, phi_of(before), eps, l0);
    auto const m1 = rescaled_flux_measures(table, after, phi_of(after), eps, l0);
    double worst = 0.0;
    // mu[k] sits at l = l0 + k; the closure J_L = 0 is the missing last atom.
    std::size_t const L = before.size();
    for (std::size_t l = l0 + 1; l <= L; ++l)
    {
        std::size_t const k = l - l0;
        auto mu_at = [&](FluxMeasures const& m, std::size_t idx) {
            return idx < m.mu.size() ? m.mu[idx] : 0.0;
        };
        double const mu_l = 0.5 * (mu_at(m0, k) + mu_at(m1, k));
        double const mu_prev = 0.5 * (mu_at(m0, k - 1) + mu_at(m1, k - 1));
        double const dnu = (after(l) - before(l)) / (eps * dt);
        worst = std::max(worst, std::fabs(dnu + (mu_l - mu_prev) / eps));
    }
    return worst;
}

}  // namespace bdlab
