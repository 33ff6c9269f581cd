// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "bdlab/numeric.hpp"
#include "bdlab/checks.hpp"
#include "bdlab/initial.hpp"
#include "bdlab/integrate_bd.hpp"
#include "bdlab/rescaling.hpp"

using namespace bdlab;

namespace
{
std::vector<double> minus_gradient(EquilibriumTable const& t, ClusterState const& s)
{
    auto g = energy_gradient(t, s, t.z());
    for (auto& v : g)
        v = -v;
    return g;
}

double psi_term(double n, double w) { return n * std::log(n / w) - n + w; }
}  // namespace

TEST_CASE("cutoff size")
{
    CHECK(RescaleParams::make(0.2).l0 == 2);
    CHECK(RescaleParams::make(0.1).l0 == 3);
    CHECK(RescaleParams::make(0.05).l0 == 4);
    CHECK_THROWS_AS(RescaleParams::make(0.25, 0.25), std::invalid_argument);
    CHECK(RescaleParams::make(1.0 / 16.0, 0.25).l0 == 2);
    CHECK_THROWS_AS(RescaleParams::make(0.2, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(RescaleParams::make(0.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(RescaleParams::make(1.0), std::invalid_argument);

    auto const rp = RescaleParams::make(0.1);
    RateParams const p;
    CHECK(rp.time_scale(p) == doctest::Approx(std::pow(0.1, -1.5)).epsilon(1e-15));
    CHECK(rp.energy_scale(p) == doctest::Approx(std::pow(0.1, -0.5)).epsilon(1e-15));
    CHECK(rp.dissipation_scale(p) == doctest::Approx(std::pow(0.1, -2.0)).epsilon(1e-15));
}

TEST_CASE("projection onto macroscopic measures")
{
    ClusterState s{std::vector<double>(20, 0.0)};
    s.n[11] = 0.3;
    auto const one = project_mac(s, 0.1, 3);
    REQUIRE(one.size() == 1);
    CHECK(one.lambda[0] == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(one.mass[0] == doctest::Approx(3.0).epsilon(1e-15));

    ClusterState small{{0.5, 0.2, 0.0, 0.0}};
    CHECK(project_mac(small, 0.1, 3).size() == 0);

    auto const t = partition_coeffs(RateParams{}, 101);
    std::mt19937_64 rng(1);
    auto const r = random_positive_state(t, 100, rng);
    for (std::size_t l0 : {2, 3, 7})
    {
        auto const e = project_mac(r, 0.05, l0);
        double below = 0.0;
        for (std::size_t l = 1; l < l0; ++l)
            below += static_cast<double>(l) * r(l);
        CHECK(e.first_moment() + below == doctest::Approx(r.mass()).epsilon(1e-13));
    }
}

TEST_CASE("rescaled energy split")
{
    RateParams const p;
    auto const t = partition_coeffs(p, 201);
    auto const rp = RescaleParams::make(0.05);
    auto const eq = rescaled_energies(t, ClusterState{equilibrium(t, 1.0, 200)}, rp);
    CHECK(std::fabs(eq.F_total) <= 1e-14);

    std::mt19937_64 rng(2);
    auto const s = random_positive_state(t, 200, rng);
    auto const e = rescaled_energies(t, s, rp);
    CHECK(e.F_mic >= 0.0);
    CHECK(e.F_mac >= 0.0);
    CHECK(e.F_total == doctest::Approx(e.F_mic + e.F_mac).epsilon(1e-15));
    CHECK(e.F_total == doctest::Approx(rp.energy_scale(p) * free_energy(t, s, 1.0)).epsilon(1e-12));

    // LSW energy of the projection: E(nu) = (q/(1-g)) sum (eps l)^(1-g) n_l / eps
    auto const nu = project_mac(s, rp.eps, rp.l0);
    LSWParams const lp = LSWParams::from(p, 1.0);
    CHECK(lsw_energy(lp, nu) * std::pow(rp.eps, p.gamma)
          == doctest::Approx(p.z_s * e.F_l0_lsw).epsilon(1e-12));
}

TEST_CASE("large-cluster free energy approaches its LSW form")
{
    // Profiles n_l = c l^-3 on l >= l0 with empty small clusters; the ratio
    // of the exact large-cluster free energy to its LSW form tends to 1.
    RateParams const p;
    double prev = infinity();
    for (std::size_t l0 : {8, 32, 128, 512})
    {
        std::size_t const L = 8 * l0;
        auto const t = partition_coeffs(p, L + 1);
        ClusterState s{std::vector<double>(L, 0.0)};
        for (std::size_t l = l0; l <= L; ++l)
            s.n[l - 1] = std::pow(static_cast<double>(l), -2.0);
        RescaleParams rp{0.1, 0.49, l0};
        auto const e = rescaled_energies(t, s, rp);
        double const dev = std::fabs(e.F_l0 / e.F_l0_lsw - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("monomer excess and macroscopic u")
{
    ClusterState s{{1.0, 0.0, 0.0}};
    CHECK(monomer_excess(s, 0.1, 0.5, 1.0) == 0.0);
    s.n[0] = 1.0 + std::sqrt(0.1);
    CHECK(monomer_excess(s, 0.1, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

    RateParams const p{0.0, 0.5, 2.0, 1.0};
    auto const t = partition_coeffs(p, 11);
    ClusterState one{std::vector<double>(10, 0.0)};
    one.n[5] = 0.4;
    // only l = 6 is occupied: numerator (b_6 - z_s a_6) n_6
    CHECK(macroscopic_u_eps(t, one, 0.1, 3)
          == doctest::Approx(1.0 / std::sqrt(6.0 * 0.1)).epsilon(1e-14));
    CHECK(macroscopic_u_eps(t, one, 0.1, 3, true)
          == doctest::Approx((1.0 + 1.0 / std::sqrt(6.0)) / std::sqrt(0.1)).epsilon(1e-14));
    ClusterState none{std::vector<double>(10, 0.0)};
    CHECK_THROWS_AS(macroscopic_u_eps(t, none, 0.1, 3), std::domain_error);

    // q = 0 equilibrium profile without the closure term telescopes to 0
    RateParams const flat{0.0, 0.5, 1.0, 0.0};
    auto const tf = partition_coeffs(flat, 41);
    auto w = equilibrium(tf, 1.0, 40);
    w.push_back(0.0);
    ClusterState ws{w};
    auto const u = macroscopic_u_eps(tf, ws, 0.1, 3);
    // only the missing n_41 contributes: -b_41 omega_41 / (eps^g sum a omega)
    CHECK(u == doctest::Approx(-1.0 / (std::sqrt(0.1) * 38.0)).epsilon(1e-12));
}

TEST_CASE("macroscopic u against the LSW constraint")
{
    // The numerator telescopes to q sum_{l>=l0} l^(alpha-gamma) n_l - b_l0 n_l0,
    // so u^eps = u(nu^eps) - b_l0 n_l0 / (eps^gamma sum a_l n_l).
    RateParams const p{0.3, 0.6, 1.5, 2.0};
    std::size_t const L = 300;
    auto const t = partition_coeffs(p, L + 1);
    std::mt19937_64 rng(10);
    for (double eps : {0.2, 0.05})
    {
        auto const rp = RescaleParams::make(eps);
        auto const s = random_positive_state(t, L, rng);
        double den = 0.0;
        for (std::size_t l = rp.l0; l <= L; ++l)
            den += t.a(l) * s(l);
        double const ul = mean_field_u(LSWParams::from(p, 1.0), project_mac(s, eps, rp.l0));
        double const expect = ul - t.b(rp.l0) * s(rp.l0) / (std::pow(eps, p.gamma) * den);
        CHECK(macroscopic_u_eps(t, s, eps, rp.l0) == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("rescaled action and dissipation")
{
    RateParams const p;
    auto const t = partition_coeffs(p, 65);
    auto const rp = RescaleParams::make(0.05);
    ClusterState eq{equilibrium(t, 1.0, 64)};
    auto const z = rescaled_action_dissipation(t, eq, minus_gradient(t, eq), rp);
    CHECK(z.A <= 1e-20);
    CHECK(z.D <= 1e-20);

    std::mt19937_64 rng(6);
    for (int k = 0; k < 20; ++k)
    {
        auto const s = random_positive_state(t, 64, rng);
        auto const r = rescaled_action_dissipation(t, s, minus_gradient(t, s), rp);
        CHECK(r.D == doctest::Approx(r.D_mic + r.D_mac).epsilon(1e-15));
        CHECK(r.A == doctest::Approx(r.D).epsilon(1e-11));
        CHECK(r.D == doctest::Approx(rp.dissipation_scale(p) * dissipation(t, s)).epsilon(1e-12));
    }
}

TEST_CASE("quasistationary entropy")
{
    RateParams const p;
    auto const t = partition_coeffs(p, 11);
    double const n1 = 0.7;
    auto const w = equilibrium(t, n1, 10);
    ClusterState s{w};
    for (std::size_t l = 5; l <= 10; ++l)
        s.n[l - 1] = 0.123;
    CHECK(std::fabs(quasistationary_entropy(t, s, 5)) <= 1e-15);
    CHECK(std::fabs(quasistationary_entropy(t, ClusterState{equilibrium(t, 1.0, 10)}, 6)) <= 1e-15);

    s.n[2] = 3.0 * w[2];
    CHECK(quasistationary_entropy(t, s, 5) == doctest::Approx(psi_term(s.n[2], w[2])).epsilon(1e-13));
}

TEST_CASE("LSI bound")
{
    RateParams const p;
    auto const t = partition_coeffs(p, 11);
    ClusterState s{{0.8, 0.3, 0.1, 0.05, 0.02}};

    auto const b = lsi_bound(t, s, 3);
    double const w1 = 0.8, w2 = 0.64 * std::exp(t.log_q(2));
    double const C = 480.0 * w2 * std::log((w1 + w2) / w2) / (1.0 * w1);
    CHECK(b.C_LSI == doctest::Approx(C).epsilon(1e-13));
    CHECK(b.C_EED == doctest::Approx((0.64 + 2.0 * 1.1 * (w1 + w2)) / 0.64 * C).epsilon(1e-13));
    CHECK_FALSE(b.trivial);
    CHECK(lsi_bound(t, s, 2).trivial);

    auto const W = log_tail_sums(t, 0.8, 6);
    for (double x : W)
        CHECK(x <= W[0]);
}

TEST_CASE("quasistationary inequality near equilibrium")
{
    RateParams const p;
    auto const t = partition_coeffs(p, 41);
    std::mt19937_64 rng(12);
    for (std::size_t l0 : {3, 4, 6})
        for (int k = 0; k < 50; ++k)
        {
            auto const s = random_positive_state(t, 40, rng, 0.2);
            auto const b = lsi_bound(t, s, l0);
            double const H = quasistationary_entropy(t, s, l0);
            CHECK(H <= b.C_EED * microscopic_dissipation_lower(t, s, l0));
        }
}

TEST_CASE("Csiszar-Pinsker diagnostics")
{
    RateParams const p;
    std::size_t const L = 200;
    auto const t = partition_coeffs(p, L + 1);
    double const rho_s = saturation_mass(p).rho_s;
    auto const w = equilibrium(t, 1.0, L);
    auto const g = csiszar_pinsker_diagnostics(t, ClusterState{w}, 3, rho_s);
    CHECK(g.guarded);
    CHECK(g.ratio_43 == 0.0);

    // At n = omega the residual sits at its floor, the omega-tail beyond l0
    NeumaierSum tail, all;
    for (std::size_t l = 1; l <= L; ++l)
    {
        all += static_cast<double>(l) * w[l - 1];
        if (l >= 3)
            tail += static_cast<double>(l) * w[l - 1];
    }
    double const floor = std::fabs(tail.value() - (all.value() - rho_s));

    double max_ratio = 0.0;
    double prev_res = infinity();
    for (double a : {0.5, 0.1, 0.02, 0.004})
    {
        auto n = w;
        for (std::size_t l = 1; l <= L; ++l)
            n[l - 1] *= 1.0 + a * std::sin(static_cast<double>(l));
        auto const d = csiszar_pinsker_diagnostics(t, ClusterState{n}, 3, rho_s);
        max_ratio = std::max(max_ratio, d.ratio_43);
        double const excess = std::fabs(d.residual_44 - floor);
        CHECK(excess < prev_res);
        CHECK(excess <= 10.0 * std::sqrt(free_energy(t, ClusterState{n}, p.z_s)));
        prev_res = excess;
    }
    CHECK(std::isfinite(max_ratio));
    CHECK(max_ratio < 100.0);
}

TEST_CASE("flux measures and the discrete continuity equation")
{
    RateParams const p;
    std::size_t const L = 120;
    auto const t = partition_coeffs(p, L + 1);
    auto const rp = RescaleParams::make(0.1);
    ClusterState eq{equilibrium(t, 1.0, L)};
    auto const m0 = rescaled_flux_measures(t, eq, minus_gradient(t, eq), rp.eps, rp.l0);
    for (std::size_t i = 0; i < m0.mu.size(); ++i)
    {
        CHECK(std::fabs(m0.mu[i]) <= 1e-15);
        CHECK(std::fabs(m0.mu_hat[i]) <= 1e-15);
    }

    auto const s = equilibrium_plus_bump(t, L, rp, 0.5, 0.5, 2.0);
    auto const m = rescaled_flux_measures(t, s, minus_gradient(t, s), rp.eps, rp.l0);
    for (std::size_t i = 0; i < m.mu.size(); ++i)
        CHECK(m.mu[i] == doctest::Approx(m.mu_hat[i]).epsilon(1e-10));

    BdControls c;
    c.time_scale = rp.time_scale(p);
    c.step.rel_tol = 1e-12;
    c.step.abs_tol = 1e-16;
    double const dt = 1e-7;
    auto const rec = integrate_bd(t, s, dt, c);
    double const res = continuity_residual(t, s, rec.states.back(), dt, rp.eps, rp.l0);
    double scale = 0.0;
    for (double v : m.mu_hat)
        scale = std::max(scale, std::fabs(v) / rp.eps);
    CHECK(res <= 1e-4 * scale);
}
