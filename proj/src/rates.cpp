// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"

namespace bdlab
{
void RateParams::validate() const
{
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument(fmt::format("alpha={} outside [0,1)", alpha));
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument(fmt::format("gamma={} outside (0,1)", gamma));
    if (!(z_s > 0.0 && std::isfinite(z_s)))
        throw std::invalid_argument(fmt::format("z_s={} must be positive", z_s));
    if (!(q >= 0.0 && std::isfinite(q)))
        throw std::invalid_argument(fmt::format("q={} must be nonnegative", q));
}

double coag_rate(RateParams const& p, std::size_t l)
{
    if (l < 1)
        throw std::invalid_argument("coag_rate: l must be >= 1");
    if (p.alpha == 0.0)
        return 1.0;
    return std::pow(static_cast<double>(l), p.alpha);
}

double frag_rate(RateParams const& p, std::size_t l)
{
    if (l < 2)
        throw std::invalid_argument("frag_rate: l must be >= 2");
    double const x = static_cast<double>(l);
    double const la = p.alpha == 0.0 ? 1.0 : std::pow(x, p.alpha);
    return la * (p.z_s + p.q * std::pow(x, -p.gamma));
}

namespace
{
// log(a_l / b_{l+1}) without forming the ratio
double log_ratio(RateParams const& p, std::size_t l)
{
    double const x = static_cast<double>(l);
    double const c = p.q / p.z_s;
    return p.alpha * std::log1p(-1.0 / (x + 1.0)) - std::log(p.z_s)
           - std::log1p(c * std::pow(x + 1.0, -p.gamma));
}
}  // namespace

EquilibriumTable::EquilibriumTable(RateParams const& params, std::size_t L)
    : params_(params)
{
    params_.validate();
    if (L < 2)
        throw std::invalid_argument("EquilibriumTable: L must be >= 2");
    log_q_.resize(L);
    a_.resize(L);
    b_.resize(L + 1);
    log_q_[0] = 0.0;
    b_[0] = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t l = 1; l <= L; ++l)
    {
        a_[l - 1] = coag_rate(params_, l);
        b_[l] = frag_rate(params_, l + 1);
        if (l < L)
            log_q_[l] = log_q_[l - 1] + log_ratio(params_, l);
    }
}

EquilibriumTable partition_coeffs(RateParams const& params, std::size_t L)
{
    return EquilibriumTable(params, L);
}

namespace
{
void check_z(EquilibriumTable const& table, double z)
{
    if (!(z > 0.0) || z > table.params().z_s)
        throw std::invalid_argument(
            fmt::format("fugacity z={} outside (0, z_s={}]", z, table.params().z_s));
}

std::size_t resolve_length(EquilibriumTable const& table, std::size_t L)
{
    if (L == 0)
        return table.size();
    if (L > table.size())
        throw std::invalid_argument("requested length exceeds table");
    return L;
}
}  // namespace

std::vector<double>
log_equilibrium(EquilibriumTable const& table, double z, std::size_t L)
{
    check_z(table, z);
    L = resolve_length(table, L);
    double const lz = std::log(z);
    std::vector<double> out(L);
    for (std::size_t l = 1; l <= L; ++l)
        out[l - 1] = table.log_omega_from_log_z(l, lz);
    return out;
}

std::vector<double>
equilibrium(EquilibriumTable const& table, double z, std::size_t L)
{
    auto out = log_equilibrium(table, z, L);
    for (auto& v : out)
        v = std::exp(v);
    return out;
}

double detailed_balance_residual(EquilibriumTable const& table, double z)
{
    auto const lw = log_equilibrium(table, z);
    double const lmax = *std::max_element(lw.begin(), lw.end());
    // Scale by max omega in log space so that the residual is relative.
    double worst = 0.0;
    for (std::size_t l = 1; l < lw.size(); ++l)
    {
        double const lhs = std::log(table.a(l)) + lw[0] + lw[l - 1] - lmax;
        double const rhs = std::log(table.b(l + 1)) + lw[l] - lmax;
        double const r = std::fabs(std::exp(lhs) - std::exp(rhs));
        worst = std::max(worst, r);
    }
    return worst;
}

double equilibrium_mass(EquilibriumTable const& table, double z)
{
    check_z(table, z);
    double const lz = std::log(z);
    NeumaierSum s;
    for (std::size_t l = 1; l <= table.size(); ++l)
        s += static_cast<double>(l) * std::exp(table.log_omega_from_log_z(l, lz));
    return s.value();
}

//---------------------------------------------------------------------------//
namespace
{
// log of the tail bound given S_L = sum_{j=2}^L log(1 + c j^-gamma).
double log_tail_bound(RateParams const& p, std::size_t L, double S_L)
{
    double const c = p.q / p.z_s;
    if (c <= 0.0)
        return infinity();
    double const g = p.gamma;
    double const y = c * std::pow(static_cast<double>(L) + 1.0, -g);
    double const kappa = std::log1p(y) / y;
    double const beta = kappa * c / (1.0 - g);
    double const u0 = beta * std::pow(static_cast<double>(L) + 1.0, 1.0 - g);
    double const s = 2.0 / (1.0 - g);
    if (!(u0 > s))
        return infinity();
    return std::log(p.z_s) - S_L - std::log(1.0 - g) - s * std::log(beta)
           + (s - 1.0) * std::log(u0) + std::log(u0 / (u0 - s + 1.0));
}

double log_term(RateParams const& p, std::size_t l, double S_l)
{
    // log(l * omega_l(z_s)) = log z_s + (1 - alpha) log l - S_l
    return std::log(p.z_s) + (1.0 - p.alpha) * std::log(static_cast<double>(l)) - S_l;
}

double summand(RateParams const& p, std::size_t j)
{
    return std::log1p(p.q / p.z_s * std::pow(static_cast<double>(j), -p.gamma));
}
}  // namespace

double saturation_tail_bound(RateParams const& params, std::size_t L)
{
    params.validate();
    NeumaierSum S;
    for (std::size_t j = 2; j <= L; ++j)
        S += summand(params, j);
    return std::exp(log_tail_bound(params, L, S.value()));
}

SaturationMass
saturation_mass(RateParams const& params, double rel_tol, std::size_t max_L)
{
    params.validate();
    if (!(rel_tol > 0.0))
        throw std::invalid_argument("saturation_mass: rel_tol must be positive");
    if (params.q == 0.0)
        throw ConvergenceError("saturation_mass: q = 0 has infinite saturation mass");

    NeumaierSum mass;
    NeumaierSum S;
    std::size_t l = 0;
    for (std::size_t L = 64; L <= max_L; L *= 2)
    {
        for (++l; l <= L; ++l)
        {
            if (l >= 2)
                S += summand(params, l);
            mass += std::exp(log_term(params, l, S.value()));
        }
        l = L;
        double const rho = mass.value();
        double const tail = std::exp(log_tail_bound(params, L, S.value()));
        if (tail <= rel_tol * rho)
            return {rho, L, tail};
    }
    throw ConvergenceError(
        fmt::format("saturation_mass: tail not certified below {} with L <= {}",
                    rel_tol, max_L));
}

double solve_fugacity(RateParams const& params, double rho0, double tol, int max_iter)
{
    if (!(rho0 > 0.0))
        throw std::invalid_argument("solve_fugacity: rho0 must be positive");
    auto const sat = saturation_mass(params, 1e-14);
    if (tol < 0.0)
        tol = 1e-10 * sat.rho_s;
    if (rho0 > sat.rho_s + tol)
        throw SupersaturatedError(fmt::format(
            "rho0={} exceeds saturation mass {}; no equilibrium", rho0, sat.rho_s));
    if (rho0 >= sat.rho_s - tol)
        return params.z_s;

    auto const table = partition_coeffs(params, std::max<std::size_t>(sat.L, 2));
    double lo = 0.0;
    double hi = params.z_s;
    double z = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it)
    {
        z = 0.5 * (lo + hi);
        double const m = equilibrium_mass(table, z);
        if (std::fabs(m - rho0) <= tol)
            return z;
        (m < rho0 ? lo : hi) = z;
        if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi)
            break;
    }
    return z;
}

}  // namespace bdlab
