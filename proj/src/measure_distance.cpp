// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/measure_distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bdlab/numeric.hpp"

namespace bdlab
{
TestDictionary
TestDictionary::hat_log(double lo, double hi, std::size_t count, std::vector<double> caps)
{
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw std::invalid_argument("TestDictionary: need 0 < lo < hi and count >= 2");
    TestDictionary d;
    d.version_ = "hat-log-v1";
    double const r = std::pow(hi / lo, 1.0 / static_cast<double>(count - 1));
    // Padding centres at both ends give the outer tents a neighbour.
    for (std::size_t k = 0; k <= count + 1; ++k)
        d.centers_.push_back(lo * std::pow(r, static_cast<double>(k) - 1.0));
    d.caps_ = std::move(caps);
    return d;
}

double TestDictionary::operator()(std::size_t k, double lambda) const
{
    std::size_t const hats = centers_.size() - 2;
    if (k < hats)
    {
        double const l = centers_[k];
        double const c = centers_[k + 1];
        double const r = centers_[k + 2];
        if (lambda <= l || lambda >= r)
            return 0.0;
        return lambda <= c ? (lambda - l) / (c - l) : (r - lambda) / (r - c);
    }
    return std::min(lambda, caps_.at(k - hats));
}

double TestDictionary::lipschitz_constant() const
{
    double lip = caps_.empty() ? 0.0 : 1.0;
    for (std::size_t i = 1; i < centers_.size(); ++i)
        lip = std::max(lip, 1.0 / (centers_[i] - centers_[i - 1]));
    return lip;
}

double TestDictionary::sup_norm(std::size_t k) const
{
    std::size_t const hats = centers_.size() - 2;
    return k < hats ? 1.0 : caps_.at(k - hats);
}

double measure_distance(ParticleEnsemble const& a,
                        ParticleEnsemble const& b,
                        TestDictionary const& dict)
{
    double worst = 0.0;
    for (std::size_t k = 0; k < dict.size(); ++k)
    {
        NeumaierSum s;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.alive[i])
                s += a.mass[i] * dict(k, a.lambda[i]);
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b.alive[i])
                s += -b.mass[i] * dict(k, b.lambda[i]);
        worst = std::max(worst, std::fabs(s.value()));
    }
    return worst;
}

}  // namespace bdlab
