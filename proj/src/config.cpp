// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace bdlab
{
namespace
{
struct ScenarioName
{
    Scenario s;
    char const* tag;
};

constexpr ScenarioName scenario_names[] = {
    {Scenario::bd_relax, "bd-relax"},
    {Scenario::bd_rescaled, "bd-rescaled"},
    {Scenario::lsw, "lsw"},
    {Scenario::converge, "converge"},
    {Scenario::quasistat, "quasistat"},
    {Scenario::network, "network"},
};

char const* const families[]
    = {"equilibrium+bump", "pure-monomer", "log-uniform-particles", "bd-projected"};
}  // namespace

Scenario parse_scenario(std::string const& tag)
{
    for (auto const& n : scenario_names)
        if (tag == n.tag)
            return n.s;
    throw std::invalid_argument(fmt::format("unknown scenario '{}'", tag));
}

std::string to_string(Scenario s)
{
    for (auto const& n : scenario_names)
        if (s == n.s)
            return n.tag;
    return "?";
}

std::vector<double> parse_double_list(std::string const& s)
{
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<double> out;
    std::string tok;
    while (in >> tok)
    {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size())
            throw std::invalid_argument(fmt::format("bad number '{}'", tok));
        out.push_back(v);
    }
    return out;
}

void ExperimentConfig::validate() const
{
    rates.validate();
    if (ladder.empty())
        throw std::invalid_argument("config: empty eps ladder");
    for (std::size_t i = 0; i < ladder.size(); ++i)
    {
        if (!(ladder[i] > 0.0 && ladder[i] < 1.0))
            throw std::invalid_argument(fmt::format("config: eps={} outside (0,1)", ladder[i]));
        if (i > 0 && !(ladder[i] < ladder[i - 1]))
            throw std::invalid_argument("config: eps ladder must be strictly decreasing");
    }
    if (!(cutoff_x > 0.0 && cutoff_x < 0.5))
        throw std::invalid_argument("config: cutoff x must lie in (0, 1/2)");
    if (std::find(std::begin(families), std::end(families), initial.family) == std::end(families))
        throw std::invalid_argument(fmt::format("config: unknown family '{}'", initial.family));
    if (!(T > 0.0))
        throw std::invalid_argument("config: T must be positive");
    if (samples < 1)
        throw std::invalid_argument("config: samples must be >= 1");
    if (!(initial.bump_lo > 0.0 && initial.bump_hi > initial.bump_lo))
        throw std::invalid_argument("config: bump support must satisfy 0 < lo < hi");
    if (!(initial.particle_lo > 0.0 && initial.particle_hi > initial.particle_lo))
        throw std::invalid_argument("config: particle range must satisfy 0 < lo < hi");
    if (!(initial.rho_bar >= 0.0 && initial.rho0 > 0.0))
        throw std::invalid_argument("config: masses must be positive");
    if (scenario == Scenario::network && network_file.empty())
        throw std::invalid_argument("config: network scenario needs [network] file");
}

std::size_t ExperimentConfig::truncation_for(double eps) const
{
    if (L > 0)
        return L;
    return std::max(L_min, static_cast<std::size_t>(std::ceil(lambda_cap / eps)));
}

ExperimentConfig parse_config_text(std::string const& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try
    {
        pt::read_ini(in, tree);
    }
    catch (pt::ini_parser_error const& e)
    {
        throw std::invalid_argument(fmt::format("config: {}", e.message()));
    }

    static std::set<std::string> const known = {
        "scenario.name",       "rates.alpha",          "rates.gamma",
        "rates.z_s",           "rates.q",              "rescale.ladder",
        "rescale.x",           "truncation.L",         "truncation.L_min",
        "truncation.lambda_cap", "initial.family",     "initial.rho_bar",
        "initial.rho0",        "initial.bump_lo",      "initial.bump_hi",
        "initial.particles",   "initial.particle_lo",  "initial.particle_hi",
        "initial.seed",        "time.T",               "time.samples",
        "integrator.dt_init",  "integrator.dt_min",    "integrator.rel_tol",
        "integrator.abs_tol",  "integrator.max_steps", "certify.mass_drift",
        "certify.energy_abs",  "certify.energy_rel",   "certify.j_rel",
        "network.file",        "network.T",            "output.dir"};
    for (auto const& [section, entries] : tree)
    {
        if (!entries.data().empty())
            throw std::invalid_argument(fmt::format("config: key '{}' outside a section", section));
        for (auto const& [key, value] : entries)
            if (!known.contains(section + "." + key))
                throw std::invalid_argument(fmt::format("config: unknown key '{}.{}'", section, key));
    }

    auto read = [&tree]<typename T>(std::string const& key, T& dst) {
        auto const v = tree.get_optional<std::string>(key);
        if (!v)
            return;
        try
        {
            dst = tree.get<T>(key);
        }
        catch (pt::ptree_bad_data const&)
        {
            throw std::invalid_argument(fmt::format("config: bad value '{}' for {}", *v, key));
        }
    };

    ExperimentConfig c;
    c.source_text = text;
    std::string scenario = "bd-relax";
    read("scenario.name", scenario);
    c.scenario = parse_scenario(scenario);

    read("rates.alpha", c.rates.alpha);
    read("rates.gamma", c.rates.gamma);
    read("rates.z_s", c.rates.z_s);
    read("rates.q", c.rates.q);

    if (auto v = tree.get_optional<std::string>("rescale.ladder"))
        c.ladder = parse_double_list(*v);
    read("rescale.x", c.cutoff_x);

    read("truncation.L", c.L);
    read("truncation.L_min", c.L_min);
    read("truncation.lambda_cap", c.lambda_cap);

    auto& ini = c.initial;
    read("initial.family", ini.family);
    read("initial.rho_bar", ini.rho_bar);
    read("initial.rho0", ini.rho0);
    read("initial.bump_lo", ini.bump_lo);
    read("initial.bump_hi", ini.bump_hi);
    read("initial.particles", ini.particles);
    read("initial.particle_lo", ini.particle_lo);
    read("initial.particle_hi", ini.particle_hi);
    read("initial.seed", ini.seed);

    read("time.T", c.T);
    read("time.samples", c.samples);

    read("integrator.dt_init", c.step.dt_init);
    read("integrator.dt_min", c.step.dt_min);
    read("integrator.rel_tol", c.step.rel_tol);
    read("integrator.abs_tol", c.step.abs_tol);
    read("integrator.max_steps", c.step.max_steps);

    read("certify.mass_drift", c.certify.mass_drift);
    read("certify.energy_abs", c.certify.energy_abs);
    read("certify.energy_rel", c.certify.energy_rel);
    read("certify.j_rel", c.certify.j_rel);

    read("network.file", c.network_file);
    read("network.T", c.network_T);

    read("output.dir", c.out_dir);
    c.validate();
    return c;
}

ExperimentConfig load_config(std::string const& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error(fmt::format("cannot read config '{}'", path));
    std::stringstream ss;
    ss << f.rdbuf();
    auto c = parse_config_text(ss.str());
    // Relative network paths are taken from the config file's directory.
    if (!c.network_file.empty() && std::filesystem::path(c.network_file).is_relative())
        c.network_file
            = (std::filesystem::path(path).parent_path() / c.network_file).lexically_normal().string();
    return c;
}

}  // namespace bdlab
