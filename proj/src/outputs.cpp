// Copyright bdlab contributors
// SPDX-License-Identifier: Apache-2.0
#include "bdlab/outputs.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace bdlab
{
namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::vector<std::string> const& series_columns()
{
    static std::vector<std::string> const cols
        = {"t",         "mass",      "F",     "F_mic_eps", "F_mac_eps", "D_eps",    "D_mic_eps",
           "D_mac_eps", "h_eps",     "u_eps", "E_lsw",     "D_lsw",     "J_partial"};
    return cols;
}

namespace
{
void cell(std::string& out, std::optional<double> const& v)
{
    out += ',';
    if (v && std::isfinite(*v))
        out += fmt::format("{:.17g}", *v);
}

std::string safe_label(std::string s)
{
    std::string out;
    for (char ch : s)
        if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '_')
            out += ch;
    return out;
}

ordered_json number_or_null(double v)
{
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

void write_file(fs::path const& path, std::string const& text, std::vector<std::string>& written)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    f << text;
    if (!f)
        throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
    written.push_back(path.string());
}
}  // namespace

std::string series_csv(std::vector<SeriesRow> const& rows)
{
    std::string out;
    auto const& cols = series_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out += (i ? "," : "") + cols[i];
    out += '\n';
    for (auto const& r : rows)
    {
        out += fmt::format("{:.17g}", r.t);
        for (auto const* v : {&r.mass, &r.F, &r.F_mic_eps, &r.F_mac_eps, &r.D_eps, &r.D_mic_eps,
                              &r.D_mac_eps, &r.h_eps, &r.u_eps, &r.E_lsw, &r.D_lsw, &r.J_partial})
            cell(out, *v);
        out += '\n';
    }
    return out;
}

std::string cluster_csv(ClusterState const& s)
{
    std::string out = "l,n\n";
    for (std::size_t l = 1; l <= s.size(); ++l)
        out += fmt::format("{},{:.17g}\n", l, s(l));
    return out;
}

ordered_json summary_json(RunSummary const& summary, ExperimentConfig const& config)
{
    ordered_json j;
    j["version"] = BDLAB_VERSION;
    j["scenario"] = to_string(summary.scenario);
    j["certified"] = summary.certified();
    j["config"] = config.source_text;

    auto& p = j["rates"];
    p["alpha"] = config.rates.alpha;
    p["gamma"] = config.rates.gamma;
    p["z_s"] = config.rates.z_s;
    p["q"] = config.rates.q;
    j["ladder"] = config.ladder;
    j["cutoff_x"] = config.cutoff_x;
    j["seed"] = config.initial.seed;

    j["certificates"] = ordered_json::array();
    for (auto const& c : summary.certificates)
        j["certificates"].push_back({{"name", c.name},
                                     {"value", number_or_null(c.value)},
                                     {"bound", number_or_null(c.bound)},
                                     {"passed", c.passed}});
    j["trends"] = ordered_json::array();
    for (auto const& t : summary.trends)
    {
        ordered_json vals = ordered_json::array();
        for (double v : t.values)
            vals.push_back(number_or_null(v));
        j["trends"].push_back({{"name", t.name}, {"values", vals}, {"decreasing", t.passed}});
    }
    if (!summary.table_columns.empty())
    {
        j["table"]["columns"] = summary.table_columns;
        j["table"]["rows"] = ordered_json::array();
        for (auto const& row : summary.table_rows)
        {
            ordered_json r = ordered_json::array();
            for (double v : row)
                r.push_back(number_or_null(v));
            j["table"]["rows"].push_back(r);
        }
    }

    j["runs"] = ordered_json::array();
    for (auto const& run : summary.runs)
    {
        ordered_json r;
        r["label"] = run.label;
        if (run.eps > 0.0)
        {
            r["eps"] = run.eps;
            r["l0"] = run.l0;
        }
        r["L"] = run.L;
        ordered_json scalars = ordered_json::object();
        ordered_json flags = run.flags;
        for (auto const& [k, v] : run.scalars)
        {
            scalars[k] = number_or_null(v);
            if (!std::isfinite(v))
                flags.push_back("nonfinite:" + k);
        }
        r["scalars"] = scalars;
        r["flags"] = flags;
        j["runs"].push_back(r);
    }

    auto& timing = j["timing"];
    timing["total_wall_seconds"] = summary.wall_seconds;
    for (auto const& run : summary.runs)
        timing["runs"][run.label] = run.wall_seconds;
    return j;
}

std::vector<std::string>
emit_outputs(RunSummary const& summary, ExperimentConfig const& config, std::string const& dir)
{
    fs::path const root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec)
        throw std::runtime_error(fmt::format("cannot create '{}': {}", dir, ec.message()));

    std::vector<std::string> written;
    for (auto const& run : summary.runs)
    {
        std::string const tag = safe_label(run.label);
        write_file(root / fmt::format("timeseries_{}.csv", tag), series_csv(run.series), written);
        for (auto const& s : run.cluster_snapshots)
            write_file(root / fmt::format("snapshot_{}_clusters_t{:.6g}.csv", tag, s.t),
                       cluster_csv(s.state), written);
        for (auto const& s : run.ensemble_snapshots)
            write_file(root / fmt::format("snapshot_{}_particles_t{:.6g}.csv", tag, s.t),
                       ensemble_csv(s.ensemble), written);
    }
    write_file(root / "summary.json", summary_json(summary, config).dump(2) + "\n", written);
    return written;
}

}  // namespace bdlab
