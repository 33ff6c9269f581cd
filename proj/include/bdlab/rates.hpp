// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
//! \file rates.hpp
//! Monomer attachment/detachment rates, partition coefficients and the
//! equilibrium family omega_l(z) = z^l Q_l.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace bdlab
{
//---------------------------------------------------------------------------//
/*!
 * Model constants of the power-law rate family.
 *
 * Coagulation a_l = l^alpha, fragmentation b_l = l^alpha (z_s + q l^-gamma).
 * q = 0 is accepted as a degenerate family (all rate ratios are constant);
 * quantities that need a finite saturation mass reject it downstream.
 */
struct RateParams
{
    double alpha{0.0};
    double gamma{0.5};
    double z_s{1.0};
    double q{1.0};

    //! Throws std::invalid_argument when a field is out of range.
    void validate() const;

    //! gamma == 1/2 selects the logarithmic branch of the asymptotics.
    bool log_branch() const { return gamma == 0.5; }
};

double coag_rate(RateParams const& p, std::size_t l);
double frag_rate(RateParams const& p, std::size_t l);

//---------------------------------------------------------------------------//
/*!
 * Log-partition coefficients log Q_l for l = 1..L with cached rates.
 *
 * All indices are 1-based cluster sizes. Rates a_l are stored for
 * l = 1..L and b_l for l = 2..L+1 so that every flux of a length-L
 * truncation can be formed from the table.
 */
class EquilibriumTable
{
  public:
    EquilibriumTable() = default;
    EquilibriumTable(RateParams const& params, std::size_t L);

    RateParams const& params() const { return params_; }
    std::size_t size() const { return log_q_.size(); }
    //! Fugacity at which log Q is tabulated (always z_s).
    double z() const { return params_.z_s; }

    double log_q(std::size_t l) const { return log_q_[l - 1]; }
    double a(std::size_t l) const { return a_[l - 1]; }
    double b(std::size_t l) const { return b_[l - 1]; }

    //! log omega_l(z) = l log z + log Q_l.
    double log_omega(std::size_t l, double z) const
    {
        return static_cast<double>(l) * std::log(z) + log_q(l);
    }
    double log_omega_from_log_z(std::size_t l, double log_z) const
    {
        return static_cast<double>(l) * log_z + log_q(l);
    }

  private:
    RateParams params_;
    std::vector<double> log_q_;
    std::vector<double> a_;
    std::vector<double> b_;
};

//! Tabulate log Q_l at z = z_s for l = 1..L (L >= 2).
EquilibriumTable partition_coeffs(RateParams const& params, std::size_t L);

//! omega_l(z) for l = 1..L (defaults to the table length); underflow to 0 is
//! allowed. Rejects z <= 0 or z > z_s.
std::vector<double>
equilibrium(EquilibriumTable const& table, double z, std::size_t L = 0);

//! log omega_l(z) for l = 1..L.
std::vector<double>
log_equilibrium(EquilibriumTable const& table, double z, std::size_t L = 0);

//! Max over l < L of |a_l w_1 w_l - b_{l+1} w_{l+1}| / max_l w_l.
double detailed_balance_residual(EquilibriumTable const& table, double z);

//---------------------------------------------------------------------------//
//! Certified value of sum_l l z_s^l Q_l.
struct SaturationMass
{
    double rho_s{0};
    std::size_t L{0};  //!< Truncation at which the tail was certified
    double tail_bound{0};  //!< Upper bound on the omitted tail
};

SaturationMass saturation_mass(RateParams const& params,
                               double rel_tol = 1e-12,
                               std::size_t max_L = std::size_t{1} << 24);

//! Rigorous upper bound on sum_{l > L} l omega_l(z_s); +inf if the bound
//! is not yet applicable at this L.
double saturation_tail_bound(RateParams const& params, std::size_t L);

//! Total mass sum_{l<=L} l omega_l(z).
double equilibrium_mass(EquilibriumTable const& table, double z);

//! Fugacity z in (0, z_s] with equilibrium mass rho0.
//! A negative tol selects the default 1e-10 * rho_s.
double solve_fugacity(RateParams const& params,
                      double rho0,
                      double tol = -1.0,
                      int max_iter = 200);

//---------------------------------------------------------------------------//
//! Constants of the large-l expansion of log(l^alpha z_s^{l-1} Q_l).
struct AsymptoticConstants
{
    double C1{0};  //!< Euler-type limit of sum minus integral
    double F0{0};  //!< Constant term of the expansion
    double remainder_bound{0};  //!< Certified |C1 - partial| bound q/(z_s L^gamma)
};

//! Exact log(l^alpha z_s^{l-1} Q_l) = -sum_{j=2}^l log(1 + q/(z_s j^gamma)).
double exact_log_scaled_q(RateParams const& params, std::size_t l);

//! Predicted log(l^alpha z_s^{l-1} Q_l) from the expansion.
double asymptotic_log_scaled_q(RateParams const& params,
                               AsymptoticConstants const& consts,
                               std::size_t l);

//! Approximate C1 at L_limit. Throws ConvergenceError when the certified
//! remainder q/(z_s L_limit^gamma) exceeds target_tol.
AsymptoticConstants compute_asymptotic_constants(RateParams const& params,
                                                 std::size_t L_limit,
                                                 double target_tol = 1e-2);

}  // namespace bdlab
