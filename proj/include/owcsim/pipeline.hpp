// SPDX-License-Identifier: Apache-2.0
//
// owcsim - indoor optical wireless channel simulation and WDMA resource allocation
// Copyright (C) 2026 The owcsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef OWCSIM_PIPELINE_HPP
#define OWCSIM_PIPELINE_HPP

#include "owcsim/allocator.hpp"
#include "owcsim/config_io.hpp"
#include "owcsim/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace owc
{

namespace fs = std::filesystem;

inline constexpr const char *tool_version =
#ifdef OWCSIM_VERSION
    OWCSIM_VERSION;
#else
    "0.0.0";
#endif

inline constexpr const char *out_dir_env = "OWCSIM_OUT_DIR";

/// --out if given, else $OWCSIM_OUT_DIR, else ./results.
inline fs::path resolve_out_dir(const std::string &flag)
{
    if (!flag.empty())
        return flag;
    if (const char *env = std::getenv(out_dir_env); env && *env)
        return env;
    return "results";
}

inline std::string csv_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string wavelength_key(Wavelength w)
{
    std::string s(name_of(w));
    s[0] = char(std::tolower(s[0]));
    return s;
}

inline void write_text(const fs::path &path, const std::string &text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("Write failed for " + path.string());
}

inline std::string read_text(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("Cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ------------------------------------------------------------------ simulate

struct SimulationResult
{
    GainTensor tensor;
    TraceTimings timings;
    double wall_s = 0.0;
    std::size_t fine_patches = 0;
    std::size_t coarse_patches = 0;
};

inline SimulationResult simulate(const ScenarioSpec &spec, unsigned threads = 0, bool keep_responses = true)
{
    spec.validate();
    ChannelConfig cfg = spec.channel;
    cfg.threads = threads;
    cfg.keep_responses = keep_responses;
    const auto t = std::chrono::steady_clock::now();
    const RoomSurfaces surfaces = RoomSurfaces::build(spec.room, cfg);
    SimulationResult out;
    out.fine_patches = surfaces.fine.size();
    out.coarse_patches = surfaces.coarse.size();
    out.tensor = gain_tensor(spec.access_points(), spec.receivers(), surfaces, cfg, &out.timings);
    out.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    return out;
}

inline std::string timing_summary(const SimulationResult &r)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(3);
    os << "trace time (cpu s): los " << r.timings.los_s << ", first " << r.timings.first_s << " (" << r.fine_patches
       << " patches), second " << r.timings.second_s << " (" << r.coarse_patches << " patches); wall " << r.wall_s
       << " s";
    return os.str();
}

inline json tensor_to_json(const GainTensor &t, const ScenarioSpec &spec)
{
    auto nest = [&](const std::vector<double> &flat)
    {
        json users = json::array();
        for (std::size_t u = 0; u < t.users; ++u)
        {
            json branches = json::array();
            for (std::size_t b = 0; b < t.branches; ++b)
            {
                json aps = json::array();
                for (std::size_t a = 0; a < t.aps; ++a)
                    aps.push_back(flat[t.index(u, b, a)]);
                branches.push_back(aps);
            }
            users.push_back(branches);
        }
        return users;
    };
    return {{"schema_version", 1},
            {"kind", "gain_tensor"},
            {"name", spec.name},
            {"config_hash", config_hash(spec)},
            {"orders", to_string(spec.channel.orders)},
            {"users", t.users},
            {"branches", t.branches},
            {"aps", t.aps},
            {"layout", "dc_gain[user][branch][ap]"},
            {"dc_gain", nest(t.dc)},
            {"los_gain", nest(t.los)},
            {"first_gain", nest(t.first)},
            {"second_gain", nest(t.second)}};
}

inline GainTensor tensor_from_json(const json &j)
{
    if (!j.is_object() || j.value("kind", std::string()) != "gain_tensor")
        throw std::invalid_argument("Not a gain tensor document.");
    GainTensor t(j.at("users").get<std::size_t>(), j.at("branches").get<std::size_t>(), j.at("aps").get<std::size_t>());
    auto unnest = [&](const char *key, std::vector<double> &flat)
    {
        const json &arr = j.at(key);
        if (arr.size() != t.users)
            throw std::invalid_argument(std::string(key) + ": expected " + std::to_string(t.users) + " users");
        for (std::size_t u = 0; u < t.users; ++u)
        {
            if (arr[u].size() != t.branches)
                throw std::invalid_argument(std::string(key) + ": wrong branch count for user " + std::to_string(u + 1));
            for (std::size_t b = 0; b < t.branches; ++b)
            {
                if (arr[u][b].size() != t.aps)
                    throw std::invalid_argument(std::string(key) + ": wrong AP count");
                for (std::size_t a = 0; a < t.aps; ++a)
                {
                    const double g = arr[u][b][a].get<double>();
                    if (!(g >= 0.0))
                        throw std::invalid_argument(std::string(key) + ": negative gain");
                    flat[t.index(u, b, a)] = g;
                }
            }
        }
    };
    unnest("dc_gain", t.dc);
    unnest("los_gain", t.los);
    unnest("first_gain", t.first);
    unnest("second_gain", t.second);
    return t;
}

inline GainTensor load_tensor(const fs::path &path)
{
    try
    {
        return tensor_from_json(json::parse(read_text(path)));
    }
    catch (const json::exception &e)
    {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

/// Columns: user,branch,ap,dc_gain,los_gain,first_gain,second_gain (1-based indices).
inline std::string tensor_csv(const GainTensor &t)
{
    std::ostringstream os;
    os << "user,branch,ap,dc_gain,los_gain,first_gain,second_gain\n";
    for (std::size_t u = 0; u < t.users; ++u)
        for (std::size_t b = 0; b < t.branches; ++b)
            for (std::size_t a = 0; a < t.aps; ++a)
            {
                const std::size_t k = t.index(u, b, a);
                os << u + 1 << ',' << b + 1 << ',' << a + 1 << ',' << csv_number(t.dc[k]) << ','
                   << csv_number(t.los[k]) << ',' << csv_number(t.first[k]) << ',' << csv_number(t.second[k]) << '\n';
            }
    return os.str();
}

inline std::string impulse_response_csv(const ImpulseResponse &ir)
{
    std::ostringstream os;
    write_impulse_response_csv(os, ir);
    return os.str();
}

// ------------------------------------------------------------------ allocate

struct AllocationResult
{
    std::string name;
    int scenario_id = 0;
    int system_id = 0;
    double azimuth_offset_deg = 0.0;
    double sinr_threshold_db = 15.6;
    ObjectiveMode mode = ObjectiveMode::SumLinear;
    Assignment assignment;
    SolveStats stats;
    std::vector<UserReport> users;
    std::vector<LinkChoice> reference;
    std::optional<Evaluation> reference_evaluation;

    bool dominance_holds() const
    {
        if (!reference_evaluation)
            return true;
        const double ref = reference_evaluation->objective;
        return assignment.objective_value >= ref - 1e-12 * std::max(1.0, std::abs(ref));
    }
    std::size_t concordant_rows() const
    {
        std::size_t n = 0;
        for (std::size_t u = 0; u < reference.size() && u < users.size(); ++u)
            n += users[u].link.ap == reference[u].ap && users[u].link.wavelength == reference[u].wavelength;
        return n;
    }
};

inline AllocationResult allocate(const ScenarioSpec &spec, const GainTensor &tensor,
                                 ObjectiveMode mode = ObjectiveMode::SumLinear)
{
    const std::vector<AccessPoint> aps = spec.access_points();
    if (tensor.users != spec.users.size())
        throw std::invalid_argument("Gain tensor has " + std::to_string(tensor.users) + " users, configuration has " +
                                    std::to_string(spec.users.size()) + ".");
    const AllocationProblem problem = AllocationProblem::from_tensor(tensor, aps, spec.noise, mode);

    AllocationResult r;
    r.name = spec.name;
    r.scenario_id = spec.scenario_id;
    r.system_id = spec.system_id;
    r.azimuth_offset_deg = spec.azimuth_offset_deg;
    r.sinr_threshold_db = spec.sinr_threshold_db;
    r.mode = mode;
    r.assignment = solve_exact(problem, &r.stats);
    r.users = sinr_report(r.assignment, tensor, aps, spec.noise);
    r.reference = spec.reference;
    if (!spec.reference.empty())
    {
        Assignment ref;
        ref.objective = mode;
        for (const LinkChoice &c : spec.reference)
            ref.links.emplace_back(c);
        r.reference_evaluation = evaluate_assignment(ref, problem);
    }
    return r;
}

inline json allocation_to_json(const AllocationResult &r)
{
    json users = json::array();
    for (const UserReport &u : r.users)
    {
        json row = {{"user", u.user + 1},
                    {"ap", u.link.ap + 1},
                    {"wavelength", wavelength_key(u.link.wavelength)},
                    {"branch", u.link.branch + 1},
                    {"sinr_linear", u.sinr_linear},
                    {"sinr_db", u.sinr_db},
                    {"ber", u.ber},
                    {"signal_power_w", u.signal_power_w},
                    {"interference_power_w", u.interference_power_w},
                    {"noise_variance_a2", u.noise_variance_a2}};
        if (u.bandwidth.hz > 0.0)
        {
            row["bandwidth_hz"] = u.bandwidth.hz;
            row["bandwidth_lower_bound"] = u.bandwidth.lower_bound;
        }
        else
        {
            row["bandwidth_hz"] = nullptr;
            row["bandwidth_lower_bound"] = nullptr;
        }
        if (u.user < r.reference.size())
        {
            const LinkChoice &ref = r.reference[u.user];
            row["reference"] = link_json(ref);
            row["ap_wavelength_matches_reference"] = ref.ap == u.link.ap && ref.wavelength == u.link.wavelength;
            if (r.reference_evaluation)
                row["reference_sinr_db"] = to_db(r.reference_evaluation->sinr_linear[u.user]);
        }
        users.push_back(row);
    }
    json j = {{"schema_version", 1},
              {"kind", "allocation"},
              {"name", r.name},
              {"scenario_id", r.scenario_id},
              {"system_id", r.system_id},
              {"azimuth_offset_deg", r.azimuth_offset_deg},
              {"objective_mode", to_string(r.mode)},
              {"objective_value", r.assignment.objective_value},
              {"sinr_threshold_db", r.sinr_threshold_db},
              {"search", {{"nodes", r.stats.nodes}, {"leaves", r.stats.leaves}, {"pruned", r.stats.pruned}}},
              {"users", users}};
    if (r.reference_evaluation)
        j["reference"] = {{"objective_value", r.reference_evaluation->objective},
                          {"dominance", r.dominance_holds() ? "PASS" : "FAIL"},
                          {"ap_wavelength_matches", r.concordant_rows()},
                          {"rows", r.reference.size()}};
    return j;
}

/// Side-by-side table of the solver's links against the reference rows.
inline std::string reference_diff_table(const AllocationResult &r)
{
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof(line), "%-5s %-25s %-25s %9s %s\n", "user", "ours (AP,wl,branch)", "reference", "sinr_db",
                  "match");
    os << line;
    for (const UserReport &u : r.users)
    {
        std::string ref = "-", match = "-";
        if (u.user < r.reference.size())
        {
            ref = to_string(r.reference[u.user]);
            const bool ap_w = r.reference[u.user].ap == u.link.ap && r.reference[u.user].wavelength == u.link.wavelength;
            match = ap_w ? (r.reference[u.user].branch == u.link.branch ? "full" : "ap+wl") : "no";
        }
        std::snprintf(line, sizeof(line), "%-5zu %-25s %-25s %9.2f %s\n", u.user + 1, to_string(u.link).c_str(),
                      ref.c_str(), u.sinr_db, match.c_str());
        os << line;
    }
    os << "objective (" << to_string(r.mode) << "): " << csv_number(r.assignment.objective_value);
    if (r.reference_evaluation)
        os << ", reference " << csv_number(r.reference_evaluation->objective) << ", dominance "
           << (r.dominance_holds() ? "PASS" : "FAIL") << ", AP+wavelength concordance " << r.concordant_rows() << "/"
           << r.reference.size();
    os << '\n';
    return os.str();
}

// ------------------------------------------------------------------ report

struct ReportRow
{
    std::string name;
    int scenario_id = 0;
    int system_id = 0;
    std::size_t user = 0;
    std::size_t ap = 0, branch = 0;
    std::string wavelength;
    double sinr_db = 0.0;
    std::optional<double> bandwidth_hz;
    bool bandwidth_lower_bound = false;
    double ber = 0.0;
    double threshold_db = 15.6;

    bool passes() const { return sinr_db >= threshold_db; }
};

inline std::vector<ReportRow> report_rows_from_json(const json &j)
{
    std::vector<ReportRow> rows;
    for (const json &u : j.at("users"))
    {
        ReportRow r;
        r.name = j.at("name").get<std::string>();
        if (j.value("objective_mode", std::string("linear")) == "db")
            r.name += "_db";
        r.scenario_id = j.at("scenario_id").get<int>();
        r.system_id = j.at("system_id").get<int>();
        r.threshold_db = j.at("sinr_threshold_db").get<double>();
        r.user = u.at("user").get<std::size_t>();
        r.ap = u.at("ap").get<std::size_t>();
        r.branch = u.at("branch").get<std::size_t>();
        r.wavelength = u.at("wavelength").get<std::string>();
        r.sinr_db = u.at("sinr_db").get<double>();
        r.ber = u.at("ber").get<double>();
        if (!u.at("bandwidth_hz").is_null())
        {
            r.bandwidth_hz = u.at("bandwidth_hz").get<double>();
            r.bandwidth_lower_bound = u.at("bandwidth_lower_bound").get<bool>();
        }
        rows.push_back(r);
    }
    return rows;
}

/// Columns: name,scenario,system,user,ap,wavelength,branch,sinr_db,ber,bandwidth_hz,bandwidth_lower_bound,threshold_db,sinr_db_ge_threshold
inline std::string report_csv(const std::vector<ReportRow> &rows)
{
    std::ostringstream os;
    os << "name,scenario,system,user,ap,wavelength,branch,sinr_db,ber,bandwidth_hz,bandwidth_lower_bound,threshold_db,"
          "sinr_db_ge_threshold\n";
    for (const ReportRow &r : rows)
        os << r.name << ',' << r.scenario_id << ',' << r.system_id << ',' << r.user << ',' << r.ap << ','
           << r.wavelength << ',' << r.branch << ',' << csv_number(r.sinr_db) << ',' << csv_number(r.ber) << ','
           << (r.bandwidth_hz ? csv_number(*r.bandwidth_hz) : "") << ','
           << (r.bandwidth_hz ? (r.bandwidth_lower_bound ? "true" : "false") : "") << ',' << csv_number(r.threshold_db)
           << ',' << (r.passes() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

inline std::string threshold_table(const std::vector<ReportRow> &rows)
{
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof(line), "%-22s %4s %9s %12s %s\n", "run", "user", "sinr_db", "bandwidth", "sinr_db>=thr");
    os << line;
    std::size_t pass = 0;
    for (const ReportRow &r : rows)
    {
        std::string bw = "-";
        if (r.bandwidth_hz)
        {
            char b[32];
            std::snprintf(b, sizeof(b), "%s%.2f GHz", r.bandwidth_lower_bound ? ">=" : "", *r.bandwidth_hz / 1e9);
            bw = b;
        }
        std::snprintf(line, sizeof(line), "%-22s %4zu %9.2f %12s %s\n", r.name.c_str(), r.user, r.sinr_db, bw.c_str(),
                      r.passes() ? "PASS" : "FAIL");
        os << line;
        pass += r.passes();
    }
    os << pass << "/" << rows.size() << " users meet the SINR threshold\n";
    return os.str();
}

struct BarSeries
{
    std::string label;
    std::vector<double> values; // one per category; NaN for missing
    std::vector<bool> open;     // drawn hollow (lower bound)
};

/// Grouped bar chart: categories along x, one bar per series in each group.
inline std::string bar_chart_svg(const std::string &title, const std::string &y_label,
                                 const std::vector<std::string> &categories, const std::vector<BarSeries> &series,
                                 std::optional<double> reference_line = std::nullopt)
{
    const double W = 720, H = 360, left = 70, right = 130, top = 40, bottom = 50;
    const double pw = W - left - right, ph = H - top - bottom;
    double vmax = reference_line.value_or(0.0);
    double vmin = 0.0;
    for (const BarSeries &s : series)
        for (double v : s.values)
            if (std::isfinite(v))
            {
                vmax = std::max(vmax, v);
                vmin = std::min(vmin, v);
            }
    if (vmax <= vmin)
        vmax = vmin + 1.0;
    vmax *= 1.1;
    const double span = vmax - vmin;
    auto ymap = [&](double v) { return top + ph * (vmax - v) / span; };
    static const char *colours[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};

    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    os << "<text transform=\"translate(18," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << y_label
       << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << ymap(0.0) << "\" x2=\"" << left + pw << "\" y2=\"" << ymap(0.0)
       << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k)
    {
        const double v = vmin + span * k / 5.0;
        os << "<text x=\"" << left - 6 << "\" y=\"" << ymap(v) + 4 << "\" text-anchor=\"end\">" << v << "</text>\n";
    }
    const std::size_t nc = std::max<std::size_t>(categories.size(), 1), ns = std::max<std::size_t>(series.size(), 1);
    const double gw = pw / double(nc), bw = 0.8 * gw / double(ns);
    for (std::size_t c = 0; c < categories.size(); ++c)
    {
        const double gx = left + gw * double(c) + 0.1 * gw;
        os << "<text x=\"" << gx + 0.4 * gw << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
           << categories[c] << "</text>\n";
        for (std::size_t s = 0; s < series.size(); ++s)
        {
            const double v = c < series[s].values.size() ? series[s].values[c] : std::nan("");
            if (!std::isfinite(v))
                continue;
            const double y0 = ymap(std::max(v, 0.0)), y1 = ymap(std::min(v, 0.0));
            const bool hollow = c < series[s].open.size() && series[s].open[c];
            const char *col = colours[s % 6];
            os << "<rect x=\"" << gx + bw * double(s) << "\" y=\"" << y0 << "\" width=\"" << bw * 0.92
               << "\" height=\"" << y1 - y0 << "\" fill=\"" << (hollow ? "none" : col) << "\" stroke=\"" << col
               << "\"" << (hollow ? " stroke-dasharray=\"3,2\"" : "") << "/>\n";
        }
    }
    if (reference_line)
        os << "<line x1=\"" << left << "\" y1=\"" << ymap(*reference_line) << "\" x2=\"" << left + pw << "\" y2=\""
           << ymap(*reference_line) << "\" stroke=\"black\" stroke-dasharray=\"6,3\"/>\n";
    for (std::size_t s = 0; s < series.size(); ++s)
    {
        const double ly = top + 10 + 18 * double(s);
        os << "<rect x=\"" << left + pw + 15 << "\" y=\"" << ly - 9 << "\" width=\"12\" height=\"12\" fill=\""
           << colours[s % 6] << "\"/>\n";
        os << "<text x=\"" << left + pw + 32 << "\" y=\"" << ly + 1 << "\">" << series[s].label << "</text>\n";
    }
    if (reference_line)
        os << "<text x=\"" << left + pw + 15 << "\" y=\"" << top + 18 * double(series.size()) + 14
           << "\">- - threshold</text>\n";
    bool any_open = false;
    for (const BarSeries &s : series)
        for (bool o : s.open)
            any_open = any_open || o;
    if (any_open)
        os << "<text x=\"" << left + pw + 15 << "\" y=\"" << top + 18 * double(series.size()) + 32
           << "\">hollow: lower bound</text>\n";
    os << "</svg>\n";
    return os.str();
}

/// Everything cmd_report writes, rendered in memory so a failure leaves no partial output.
struct ReportFiles
{
    std::vector<std::pair<std::string, std::string>> files; // relative name, content
    std::string table;
    std::vector<ReportRow> rows;
};

inline ReportFiles build_report(const fs::path &results_dir)
{
    if (!fs::is_directory(results_dir))
        throw std::runtime_error("Results directory " + results_dir.string() + " does not exist.");
    std::vector<fs::path> inputs;
    for (const auto &entry : fs::directory_iterator(results_dir))
    {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("allocation_", 0) == 0 && entry.path().extension() == ".json")
            inputs.push_back(entry.path());
    }
    if (inputs.empty())
        throw std::runtime_error("No allocation_*.json files in " + results_dir.string() + "; run allocate first.");
    std::sort(inputs.begin(), inputs.end());

    ReportFiles out;
    for (const fs::path &p : inputs)
    {
        try
        {
            const auto rows = report_rows_from_json(json::parse(read_text(p)));
            out.rows.insert(out.rows.end(), rows.begin(), rows.end());
        }
        catch (const json::exception &e)
        {
            throw std::runtime_error(p.string() + ": " + e.what());
        }
    }
    out.files.emplace_back("report.csv", report_csv(out.rows));
    out.table = threshold_table(out.rows);
    out.files.emplace_back("threshold_table.txt", out.table);

    // One chart pair per scenario; one series per run within it.
    std::map<int, std::vector<std::string>> runs;
    for (const ReportRow &r : out.rows)
        if (std::find(runs[r.scenario_id].begin(), runs[r.scenario_id].end(), r.name) == runs[r.scenario_id].end())
            runs[r.scenario_id].push_back(r.name);
    for (const auto &[scenario, names] : runs)
    {
        std::size_t n_users = 0;
        for (const ReportRow &r : out.rows)
            if (r.scenario_id == scenario)
                n_users = std::max(n_users, r.user);
        std::vector<std::string> cats;
        for (std::size_t u = 1; u <= n_users; ++u)
            cats.push_back("U" + std::to_string(u));
        std::vector<BarSeries> bw, sn;
        double threshold = 15.6;
        for (const std::string &name : names)
        {
            BarSeries b{name, std::vector<double>(n_users, std::nan("")), std::vector<bool>(n_users, false)};
            BarSeries s{name, std::vector<double>(n_users, std::nan("")), {}};
            for (const ReportRow &r : out.rows)
                if (r.scenario_id == scenario && r.name == name)
                {
                    if (r.bandwidth_hz)
                    {
                        b.values[r.user - 1] = *r.bandwidth_hz / 1e9;
                        b.open[r.user - 1] = r.bandwidth_lower_bound;
                    }
                    s.values[r.user - 1] = r.sinr_db;
                    threshold = r.threshold_db;
                }
            bw.push_back(b);
            sn.push_back(s);
        }
        const std::string tag = scenario > 0 ? "scenario" + std::to_string(scenario) : "custom";
        out.files.emplace_back("bandwidth_" + tag + ".svg",
                               bar_chart_svg("Channel bandwidth, " + tag, "Bandwidth (GHz)", cats, bw));
        out.files.emplace_back("sinr_" + tag + ".svg", bar_chart_svg("SINR, " + tag, "SINR (dB)", cats, sn, threshold));
    }
    return out;
}

// ------------------------------------------------------------------ sweep

struct SweepRow
{
    double offset_deg = 0.0;
    double min_sinr_db = 0.0, mean_sinr_db = 0.0;
    double min_bandwidth_hz = 0.0, mean_bandwidth_hz = 0.0;
    bool bandwidth_lower_bound = false;
    double objective = 0.0;
};

inline std::vector<double> sweep_offsets(double start, double stop, double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("Sweep step must be positive.");
    if (!(stop >= start))
        throw std::invalid_argument("Sweep stop must not precede start.");
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t k = 0; k <= n; ++k)
    {
        const double v = start + step * double(k);
        if (v < stop - 1e-9 || (k == 0 && start == stop))
            out.push_back(v);
    }
    return out;
}

/// Offset-specific copy of a scenario; ids 1..3 are kept where the offset matches a built-in system.
inline ScenarioSpec with_azimuth_offset(ScenarioSpec spec, double offset_deg)
{
    spec.azimuth_offset_deg = wrap_degrees(offset_deg);
    spec.system_id = 0;
    for (int id = 1; id <= 3; ++id)
        if (std::abs(system_azimuth_offset(id) - spec.azimuth_offset_deg) < 1e-12)
            spec.system_id = id;
    if (spec.system_id > 0 && (spec.scenario_id == 1 || spec.scenario_id == 2))
        spec.reference = builtin(spec.scenario_id, spec.system_id).reference;
    else
        spec.reference.clear();
    std::ostringstream name;
    name << "offset_" << spec.azimuth_offset_deg;
    spec.name = (spec.scenario_id > 0 ? "scenario" + std::to_string(spec.scenario_id) + "_" : std::string()) + name.str();
    return spec;
}

inline SweepRow summarize(double offset, const AllocationResult &r)
{
    SweepRow row;
    row.offset_deg = offset;
    row.objective = r.assignment.objective_value;
    row.min_sinr_db = std::numeric_limits<double>::infinity();
    row.min_bandwidth_hz = std::numeric_limits<double>::infinity();
    std::size_t n_bw = 0;
    for (const UserReport &u : r.users)
    {
        row.min_sinr_db = std::min(row.min_sinr_db, u.sinr_db);
        row.mean_sinr_db += u.sinr_db / double(r.users.size());
        if (u.bandwidth.hz > 0.0)
        {
            row.min_bandwidth_hz = std::min(row.min_bandwidth_hz, u.bandwidth.hz);
            row.mean_bandwidth_hz += u.bandwidth.hz;
            row.bandwidth_lower_bound = row.bandwidth_lower_bound || u.bandwidth.lower_bound;
            ++n_bw;
        }
    }
    if (n_bw > 0)
        row.mean_bandwidth_hz /= double(n_bw);
    else
        row.min_bandwidth_hz = 0.0;
    return row;
}

/// Columns: offset_deg,min_sinr_db,mean_sinr_db,min_bandwidth_hz,mean_bandwidth_hz,bandwidth_lower_bound,objective
inline std::string sweep_csv(const std::vector<SweepRow> &rows)
{
    std::ostringstream os;
    os << "offset_deg,min_sinr_db,mean_sinr_db,min_bandwidth_hz,mean_bandwidth_hz,bandwidth_lower_bound,objective\n";
    for (const SweepRow &r : rows)
        os << csv_number(r.offset_deg) << ',' << csv_number(r.min_sinr_db) << ',' << csv_number(r.mean_sinr_db) << ','
           << csv_number(r.min_bandwidth_hz) << ',' << csv_number(r.mean_bandwidth_hz) << ','
           << (r.bandwidth_lower_bound ? "true" : "false") << ',' << csv_number(r.objective) << '\n';
    return os.str();
}

// ------------------------------------------------------------------ manifest

inline std::string utc_timestamp(std::chrono::system_clock::time_point t)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
#if defined(_WIN32)
    gmtime_s(&tm, &tt);
#else
    gmtime_r(&tt, &tm);
#endif
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Provenance record of one CLI invocation. Timestamps make it the one output that differs between reruns.
struct RunManifest
{
    std::string command;
    std::vector<std::string> config_hashes;
    std::vector<std::string> runs;
    std::vector<std::string> outputs;
    std::chrono::system_clock::time_point started = std::chrono::system_clock::now();

    json to_json(std::chrono::system_clock::time_point finished = std::chrono::system_clock::now()) const
    {
        return {{"schema_version", 1},
                {"kind", "run_manifest"},
                {"tool", "owcsim"},
                {"version", tool_version},
                {"command", command},
                {"runs", runs},
                {"config_hashes", config_hashes},
                {"started_utc", utc_timestamp(started)},
                {"finished_utc", utc_timestamp(finished)},
                {"outputs", outputs}};
    }
};

} // namespace owc

#endif
