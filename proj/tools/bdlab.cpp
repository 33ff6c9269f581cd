// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bdlab/checks.hpp"
#include "bdlab/config.hpp"
#include "bdlab/outputs.hpp"
#include "bdlab/scenarios.hpp"

using namespace bdlab;

namespace
{
struct Common
{
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool quiet{false};
};

void add_common(CLI::App* sub, Common& c, bool need_config)
{
    auto* opt = sub->add_option("--config", c.config, "experiment config (INI)");
    if (need_config)
        opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "output directory (overrides config and BDLAB_OUT_DIR)");
    sub->add_option("--seed", c.seed, "random seed (overrides config)");
    sub->add_flag("--quiet", c.quiet, "suppress progress output");
}

ExperimentConfig resolve(Common const& c)
{
    ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
    if (char const* env = std::getenv("BDLAB_OUT_DIR"); env && *env)
        cfg.out_dir = env;
    if (!c.out.empty())
        cfg.out_dir = c.out;
    if (c.seed)
        cfg.initial.seed = *c.seed;
    cfg.validate();
    return cfg;
}

int run_one(ExperimentConfig const& cfg, std::string const& dir, bool quiet)
{
    auto const summary = run_scenario(cfg, {quiet});
    auto const files = emit_outputs(summary, cfg, dir);
    if (!quiet)
    {
        for (auto const& t : summary.trends)
            fmt::print(stderr, "trend {:<28} {}\n", t.name, t.passed ? "decreasing" : "NOT decreasing");
        fmt::print(stderr, "{}: wrote {} files to {}\n", to_string(cfg.scenario), files.size(), dir);
    }
    return summary.certified() ? 0 : 1;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Becker-Doring / LSW experiment driver"};
    app.set_version_flag("--version", std::string(BDLAB_VERSION));
    app.require_subcommand(1);

    Common sim, sweep, check, ql;
    auto* s_sim = app.add_subcommand("simulate", "run the scenario named in the config");
    add_common(s_sim, sim, true);
    auto* s_sweep = app.add_subcommand("sweep", "run converge and quasistat over the eps ladder");
    add_common(s_sweep, sweep, true);
    auto* s_check = app.add_subcommand("check", "invariant suite over random states");
    add_common(s_check, check, false);
    auto* s_ql = app.add_subcommand("expand-ql", "table of the large-l expansion of Q_l");
    add_common(s_ql, ql, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try
    {
        if (*s_sim)
        {
            auto const cfg = resolve(sim);
            return run_one(cfg, cfg.out_dir, sim.quiet);
        }
        if (*s_sweep)
        {
            auto cfg = resolve(sweep);
            int rc = 0;
            for (Scenario s : {Scenario::converge, Scenario::quasistat})
            {
                cfg.scenario = s;
                auto const dir = (std::filesystem::path(cfg.out_dir) / to_string(s)).string();
                rc |= run_one(cfg, dir, sweep.quiet);
            }
            return rc;
        }
        if (*s_check)
        {
            auto const cfg = resolve(check);
            auto const results = invariant_suite(cfg.rates, cfg.initial.seed);
            bool ok = true;
            for (auto const& r : results)
            {
                ok = ok && r.passed;
                if (!check.quiet || !r.passed)
                    fmt::print("{:<32} {:>12.4g} <= {:<10.3g} {}\n", r.name, r.value, r.bound,
                               r.passed ? "ok" : "FAIL");
            }
            return ok ? 0 : 1;
        }
        if (*s_ql)
        {
            auto const cfg = resolve(ql);
            auto const rows
                = ql_expansion_table(cfg.rates, {64, 256, 1024, 4096, 16384, 65536});
            std::string text = "l,exact,predicted,rel_error,rel_error_times_l_gamma\n";
            for (auto const& r : rows)
                text += fmt::format("{},{:.17g},{:.17g},{:.6e},{:.6e}\n", r.l, r.exact, r.predicted,
                                    r.rel_error, r.scaled_error);
            if (ql.out.empty())
            {
                fmt::print("{}", text);
            }
            else
            {
                std::filesystem::create_directories(ql.out);
                auto const path = std::filesystem::path(ql.out) / "expand_ql.csv";
                std::FILE* f = std::fopen(path.c_str(), "w");
                if (!f)
                    throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
                std::fputs(text.c_str(), f);
                std::fclose(f);
            }
            return 0;
        }
    }
    catch (std::exception const& e)
    {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 0;
}
