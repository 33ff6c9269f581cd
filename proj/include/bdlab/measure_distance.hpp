// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bdlab/lsw.hpp"

namespace bdlab
{
/*!
 * Fixed finite family of bounded Lipschitz test functions on (0, inf).
 *
 * Tents peak at log-spaced centres and vanish at the neighbouring centres;
 * caps are lambda -> min(lambda, R). The version string identifies the
 * family in reported numbers.
 */
class TestDictionary
{
  public:
    static TestDictionary hat_log(double lo = 0.05,
                                  double hi = 20.0,
                                  std::size_t count = 24,
                                  std::vector<double> caps = {0.5, 1.0, 2.0, 4.0, 8.0});

    std::string const& version() const { return version_; }
    std::size_t size() const { return centers_.size() - 2 + caps_.size(); }
    double operator()(std::size_t k, double lambda) const;
    double lipschitz_constant() const;
    double sup_norm(std::size_t k) const;

  private:
    std::string version_;
    std::vector<double> centers_;
    std::vector<double> caps_;
};

//! max_k | int zeta_k d nu_a - int zeta_k d nu_b |
double measure_distance(ParticleEnsemble const& a,
                        ParticleEnsemble const& b,
                        TestDictionary const& dict);

}  // namespace bdlab
