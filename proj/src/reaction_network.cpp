// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/reaction_network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "bdlab/error.hpp"
#include "bdlab/numeric.hpp"

namespace bdlab
{
namespace
{
double log_monomial(std::vector<double> const& logv, Stoich const& x)
{
    double s = 0.0;
    for (auto const& [i, c] : x)
        s += c * logv[i];
    return s;
}

void check_stoich(Stoich const& x, std::size_t N)
{
    for (auto const& [i, c] : x)
    {
        if (i >= N)
            throw std::invalid_argument(fmt::format("species index {} out of range", i));
        if (c < 0)
            throw std::invalid_argument("stoichiometric coefficients must be >= 0");
    }
}
}  // namespace

ReactionNetwork::ReactionNetwork(std::size_t species,
                                 std::vector<Reaction> reactions,
                                 std::vector<double> omega,
                                 double balance_tol)
    : reactions_(std::move(reactions)), omega_(std::move(omega))
{
    if (omega_.size() != species)
        throw std::invalid_argument("ReactionNetwork: omega must have one entry per species");
    for (double w : omega_)
        if (!(w > 0.0))
            throw std::invalid_argument("ReactionNetwork: omega must be positive");
    log_omega_.resize(species);
    for (std::size_t i = 0; i < species; ++i)
        log_omega_[i] = std::log(omega_[i]);
    for (std::size_t r = 0; r < reactions_.size(); ++r)
    {
        auto const& rx = reactions_[r];
        check_stoich(rx.x, species);
        check_stoich(rx.y, species);
        if (difference(r) == std::vector<int>(species, 0))
            throw std::invalid_argument(fmt::format("reaction {} has x == y", r));
        if (!(rx.k_plus > 0.0) || !(rx.k_minus > 0.0))
            throw std::invalid_argument(fmt::format("reaction {} needs positive rates", r));
        double const lf = std::log(rx.k_plus) + log_monomial(log_omega_, rx.x);
        double const lb = std::log(rx.k_minus) + log_monomial(log_omega_, rx.y);
        if (std::fabs(std::expm1(lf - lb)) > balance_tol)
            throw std::invalid_argument(fmt::format(
                "reaction {} violates detailed balance: k+ w^x / k- w^y - 1 = {}", r,
                std::expm1(lf - lb)));
        log_k_.push_back(0.5 * (lf + lb));
    }
}

std::vector<int> ReactionNetwork::difference(std::size_t r) const
{
    std::vector<int> d(species(), 0);
    for (auto const& [i, c] : reactions_[r].x)
        d[i] += c;
    for (auto const& [i, c] : reactions_[r].y)
        d[i] -= c;
    return d;
}

ReactionNetwork ReactionNetwork::from_json_text(std::string const& text, double balance_tol)
{
    auto const j = nlohmann::json::parse(text);
    std::map<std::string, std::size_t> index;
    std::size_t N = 0;
    if (j.at("species").is_number_unsigned())
    {
        N = j.at("species").get<std::size_t>();
        for (std::size_t i = 0; i < N; ++i)
            index[std::to_string(i)] = i;
    }
    else
    {
        for (auto const& name : j.at("species"))
            index[name.get<std::string>()] = N++;
        if (index.size() != N)
            throw std::invalid_argument("network: duplicate species names");
    }
    auto parse_side = [&](nlohmann::json const& side) {
        Stoich s;
        for (auto const& [name, coeff] : side.items())
        {
            auto const it = index.find(name);
            if (it == index.end())
                throw std::invalid_argument(fmt::format("network: unknown species '{}'", name));
            s.emplace_back(it->second, coeff.get<int>());
        }
        return s;
    };
    std::vector<Reaction> rx;
    for (auto const& r : j.at("reactions"))
        rx.push_back({parse_side(r.at("x")), parse_side(r.at("y")), r.at("k_plus").get<double>(),
                      r.at("k_minus").get<double>()});
    return ReactionNetwork(N, std::move(rx), j.at("omega").get<std::vector<double>>(),
                           balance_tol);
}

ReactionNetwork ReactionNetwork::load(std::string const& path, double balance_tol)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error(fmt::format("cannot open network file '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), balance_tol);
}

double normalized_monomial(ReactionNetwork const& net,
                           std::vector<double> const& n,
                           Stoich const& x)
{
    double s = 0.0;
    for (auto const& [i, c] : x)
    {
        if (c == 0)
            continue;
        if (n[i] == 0.0)
            return 0.0;
        s += c * (std::log(n[i]) - net.log_omega()[i]);
    }
    return std::exp(s);
}

namespace
{
void check_state(ReactionNetwork const& net, std::vector<double> const& n)
{
    if (n.size() != net.species())
        throw std::invalid_argument("network state has the wrong length");
}

// k^r (n^x/w^x - n^y/w^y)
double reaction_flux(ReactionNetwork const& net, std::vector<double> const& n, std::size_t r)
{
    auto const& rx = net.reactions()[r];
    double const k = std::exp(net.log_k(r));
    return k * (normalized_monomial(net, n, rx.x) - normalized_monomial(net, n, rx.y));
}
}  // namespace

std::vector<double> rn_rhs(ReactionNetwork const& net, std::vector<double> const& n)
{
    check_state(net, n);
    std::vector<NeumaierSum> acc(net.species());
    for (std::size_t r = 0; r < net.size(); ++r)
    {
        double const f = reaction_flux(net, n, r);
        for (auto const& [i, c] : net.reactions()[r].x)
            acc[i] += -f * c;
        for (auto const& [i, c] : net.reactions()[r].y)
            acc[i] += f * c;
    }
    std::vector<double> out(net.species());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = acc[i].value();
    return out;
}

std::vector<double> rn_energy_gradient(ReactionNetwork const& net, std::vector<double> const& n)
{
    check_state(net, n);
    std::vector<double> g(n.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        g[i] = n[i] > 0.0 ? std::log(n[i]) - net.log_omega()[i] : -infinity();
    return g;
}

std::vector<double> rn_onsager_apply(ReactionNetwork const& net,
                                     std::vector<double> const& n,
                                     std::vector<double> const& phi)
{
    check_state(net, n);
    std::vector<NeumaierSum> acc(net.species());
    for (std::size_t r = 0; r < net.size(); ++r)
    {
        auto const& rx = net.reactions()[r];
        double const w = std::exp(net.log_k(r))
                         * log_mean(normalized_monomial(net, n, rx.x),
                                    normalized_monomial(net, n, rx.y));
        if (w == 0.0)
            continue;
        auto const d = net.difference(r);
        double proj = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] != 0)
                proj += d[i] * phi[i];
        if (!std::isfinite(proj))
            throw MaskedCovectorError(
                fmt::format("rn_onsager_apply: masked covector on reaction {}", r));
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] != 0)
                acc[i] += w * proj * d[i];
    }
    std::vector<double> out(net.species());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = acc[i].value();
    return out;
}

double rn_free_energy(ReactionNetwork const& net, std::vector<double> const& n)
{
    check_state(net, n);
    NeumaierSum F;
    for (std::size_t i = 0; i < n.size(); ++i)
    {
        double const w = net.omega()[i];
        if (n[i] == 0.0)
            F += w;
        else
            F += n[i] * (std::log(n[i]) - net.log_omega()[i]) - n[i] + w;
    }
    return F.value();
}

double rn_dissipation(ReactionNetwork const& net, std::vector<double> const& n)
{
    check_state(net, n);
    NeumaierSum D;
    for (std::size_t r = 0; r < net.size(); ++r)
    {
        auto const& rx = net.reactions()[r];
        double const u = normalized_monomial(net, n, rx.x);
        double const v = normalized_monomial(net, n, rx.y);
        if (u == v)
            continue;
        if (u == 0.0 || v == 0.0)
            return infinity();
        D += std::exp(net.log_k(r)) * (u - v) * (std::log(u) - std::log(v));
    }
    return D.value();
}

ConservationLaws conservation_laws(ReactionNetwork const& net, std::size_t max_species)
{
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    ConservationLaws out;
    std::size_t const N = net.species();
    if (N > max_species)
    {
        out.skipped = true;
        return out;
    }
    std::size_t const R = net.size();
    std::vector<std::vector<cpp_rational>> M(R, std::vector<cpp_rational>(N));
    for (std::size_t r = 0; r < R; ++r)
    {
        auto const d = net.difference(r);
        for (std::size_t i = 0; i < N; ++i)
            M[r][i] = d[i];
    }
    // Reduced row echelon form.
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < N && row < R; ++col)
    {
        std::size_t p = row;
        while (p < R && M[p][col] == 0)
            ++p;
        if (p == R)
            continue;
        std::swap(M[p], M[row]);
        cpp_rational const inv = 1 / M[row][col];
        for (auto& v : M[row])
            v *= inv;
        for (std::size_t r = 0; r < R; ++r)
        {
            if (r == row || M[r][col] == 0)
                continue;
            cpp_rational const f = M[r][col];
            for (std::size_t c = col; c < N; ++c)
                M[r][c] -= f * M[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(N, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    for (std::size_t free = 0; free < N; ++free)
    {
        if (is_pivot[free])
            continue;
        std::vector<cpp_rational> v(N, 0);
        v[free] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = -M[k][free];
        cpp_int lcm = 1;
        for (auto const& x : v)
            lcm = boost::multiprecision::lcm(lcm, denominator(x));
        std::vector<double> vi(N);
        for (std::size_t i = 0; i < N; ++i)
            vi[i] = static_cast<double>(cpp_rational(v[i] * lcm));
        out.basis.push_back(std::move(vi));
    }
    return out;
}

ReactionNetwork bd_network(EquilibriumTable const& table, std::size_t L)
{
    if (L < 2 || L > table.size())
        throw std::invalid_argument("bd_network: L outside [2, table size]");
    std::vector<Reaction> rx;
    for (std::size_t l = 1; l < L; ++l)
    {
        Reaction r;
        if (l == 1)
            r.x = {{0, 2}};
        else
            r.x = {{0, 1}, {l - 1, 1}};
        r.y = {{l, 1}};
        r.k_plus = table.a(l);
        r.k_minus = table.b(l + 1);
        rx.push_back(std::move(r));
    }
    auto omega = equilibrium(table, table.z(), L);
    // Balance holds to the roundoff of the tabulated logs.
    return ReactionNetwork(L, std::move(rx), std::move(omega), 1e-11);
}

ReactionNetwork build_smoluchowski(PairRate const& a,
                                   PairRate const& b,
                                   std::vector<double> const& omega,
                                   std::size_t N_max,
                                   double balance_tol)
{
    if (omega.size() < N_max)
        throw std::invalid_argument("build_smoluchowski: omega shorter than N_max");
    std::vector<Reaction> rx;
    for (std::size_t i = 1; i <= N_max; ++i)
        for (std::size_t j = i; i + j <= N_max; ++j)
        {
            double const ka = a(i, j);
            double const kb = b(i, j);
            if (ka == 0.0 && kb == 0.0)
                continue;
            double const lhs = ka * omega[i - 1] * omega[j - 1];
            double const rhs = kb * omega[i + j - 1];
            if (!(ka > 0.0) || !(kb > 0.0)
                || std::fabs(lhs - rhs) > balance_tol * std::max(lhs, rhs))
                throw std::invalid_argument(fmt::format(
                    "build_smoluchowski: pair ({}, {}) violates detailed balance", i, j));
            Reaction r;
            if (i == j)
                r.x = {{i - 1, 2}};
            else
                r.x = {{i - 1, 1}, {j - 1, 1}};
            r.y = {{i + j - 1, 1}};
            r.k_plus = ka;
            r.k_minus = kb;
            rx.push_back(std::move(r));
        }
    std::vector<double> w(omega.begin(), omega.begin() + static_cast<std::ptrdiff_t>(N_max));
    return ReactionNetwork(N_max, std::move(rx), std::move(w), balance_tol);
}

}  // namespace bdlab
