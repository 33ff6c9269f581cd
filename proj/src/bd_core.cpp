// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/bd_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"

namespace bdlab
{
double ClusterState::mass() const
{
    NeumaierSum s;
    for (std::size_t i = 0; i < n.size(); ++i)
        s += static_cast<double>(i + 1) * n[i];
    return s.value();
}

namespace
{
void check_sizes(EquilibriumTable const& table, ClusterState const& s)
{
    if (s.size() < 2)
        throw std::invalid_argument("cluster state needs L >= 2");
    if (s.size() > table.size())
        throw std::invalid_argument(fmt::format(
            "state length {} exceeds table length {}", s.size(), table.size()));
}

double forward(EquilibriumTable const& t, ClusterState const& s, std::size_t l)
{
    return t.a(l) * s.n[0] * s.n[l - 1];
}

double backward(EquilibriumTable const& t, ClusterState const& s, std::size_t l)
{
    return t.b(l + 1) * s.n[l];
}
}  // namespace

std::vector<double> fluxes(EquilibriumTable const& table, ClusterState const& s)
{
    check_sizes(table, s);
    std::size_t const L = s.size();
    std::vector<double> J(L - 1);
    for (std::size_t l = 1; l < L; ++l)
        J[l - 1] = forward(table, s, l) - backward(table, s, l);
    return J;
}

std::vector<double>
bd_rhs(EquilibriumTable const& table, ClusterState const& s, double time_scale)
{
    auto const J = fluxes(table, s);
    std::size_t const L = s.size();
    std::vector<double> dn(L, 0.0);
    NeumaierSum total;
    for (double j : J)
        total += j;
    dn[0] = -J[0] - total.value();
    for (std::size_t l = 2; l <= L; ++l)
    {
        double const out = l < L ? J[l - 1] : 0.0;
        dn[l - 1] = J[l - 2] - out;
    }
    if (time_scale != 1.0)
        for (auto& v : dn)
            v *= time_scale;
    return dn;
}

double edge_weight(EquilibriumTable const& table, ClusterState const& s, std::size_t l)
{
    if (l < 1 || l >= s.size())
        throw std::out_of_range("edge_weight: l outside 1..L-1");
    return log_mean(forward(table, s, l), backward(table, s, l));
}

std::vector<double> edge_weights(EquilibriumTable const& table, ClusterState const& s)
{
    check_sizes(table, s);
    std::vector<double> w(s.size() - 1);
    for (std::size_t l = 1; l < s.size(); ++l)
        w[l - 1] = log_mean(forward(table, s, l), backward(table, s, l));
    return w;
}

std::vector<double> onsager_apply(EquilibriumTable const& table,
                                  ClusterState const& s,
                                  std::vector<double> const& phi)
{
    if (phi.size() != s.size())
        throw std::invalid_argument("onsager_apply: covector length mismatch");
    auto const w = edge_weights(table, s);
    std::vector<double> out(s.size(), 0.0);
    NeumaierSum first;
    for (std::size_t l = 1; l < s.size(); ++l)
    {
        double const wl = w[l - 1];
        if (wl == 0.0)
            continue;
        double const g = nabla(phi, l);
        if (!std::isfinite(g))
            throw MaskedCovectorError(
                fmt::format("onsager_apply: masked covector on edge {} with weight {}", l, wl));
        double const v = -wl * g;
        first += v;
        out[l - 1] += v;
        out[l] -= v;
    }
    out[0] += first.value();
    return out;
}

double free_energy_range(EquilibriumTable const& table,
                         ClusterState const& s,
                         double z,
                         std::size_t lo,
                         std::size_t hi)
{
    check_sizes(table, s);
    if (!(z > 0.0) || z > table.params().z_s)
        throw std::invalid_argument("free_energy: z outside (0, z_s]");
    hi = std::min(hi, s.size());
    double const lz = std::log(z);
    NeumaierSum F;
    for (std::size_t l = std::max<std::size_t>(lo, 1); l <= hi; ++l)
    {
        double const lw = table.log_omega_from_log_z(l, lz);
        double const w = std::exp(lw);
        double const nl = s.n[l - 1];
        if (nl == 0.0)
        {
            F += w;
            continue;
        }
        // n log(n/w) - n + w with the log ratio formed in log space
        F += nl * (std::log(nl) - lw) - nl + w;
    }
    return F.value();
}

double free_energy(EquilibriumTable const& table, ClusterState const& s, double z)
{
    return free_energy_range(table, s, z, 1, s.size());
}

std::vector<double>
energy_gradient(EquilibriumTable const& table, ClusterState const& s, double z)
{
    check_sizes(table, s);
    double const lz = std::log(z);
    std::vector<double> g(s.size());
    for (std::size_t l = 1; l <= s.size(); ++l)
    {
        double const nl = s.n[l - 1];
        g[l - 1] = nl > 0.0 ? std::log(nl) - table.log_omega_from_log_z(l, lz)
                            : -infinity();
    }
    return g;
}

std::vector<double> dissipation_terms(EquilibriumTable const& table, ClusterState const& s)
{
    check_sizes(table, s);
    std::vector<double> d(s.size() - 1);
    for (std::size_t l = 1; l < s.size(); ++l)
    {
        double const x = forward(table, s, l);
        double const y = backward(table, s, l);
        if (x == y)
            d[l - 1] = 0.0;
        else if (x == 0.0 || y == 0.0)
            d[l - 1] = infinity();
        else
            d[l - 1] = (x - y) * (std::log(x) - std::log(y));
    }
    return d;
}

double dissipation(EquilibriumTable const& table, ClusterState const& s)
{
    NeumaierSum D;
    for (double t : dissipation_terms(table, s))
    {
        if (std::isinf(t))
            return infinity();
        D += t;
    }
    return D.value();
}

std::vector<double> action_terms(EquilibriumTable const& table,
                                 ClusterState const& s,
                                 std::vector<double> const& phi)
{
    if (phi.size() != s.size())
        throw std::invalid_argument("action: covector length mismatch");
    auto const w = edge_weights(table, s);
    std::vector<double> a(w.size(), 0.0);
    for (std::size_t l = 1; l < s.size(); ++l)
    {
        if (w[l - 1] == 0.0)
            continue;
        double const g = nabla(phi, l);
        if (!std::isfinite(g))
            throw MaskedCovectorError(
                fmt::format("action: masked covector on edge {}", l));
        a[l - 1] = w[l - 1] * g * g;
    }
    return a;
}

double action(EquilibriumTable const& table,
              ClusterState const& s,
              std::vector<double> const& phi)
{
    NeumaierSum A;
    for (double t : action_terms(table, s, phi))
        A += t;
    return A.value();
}

double gradient_flow_residual(EquilibriumTable const& table, ClusterState const& s)
{
    auto const rhs = bd_rhs(table, s);
    auto const k = onsager_apply(table, s, energy_gradient(table, s, table.z()));
    double r = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i)
        r = std::max(r, std::fabs(rhs[i] + k[i]));
    return r;
}

}  // namespace bdlab
