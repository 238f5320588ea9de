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

#include "owcsim/lp_export.hpp"
#include "owcsim/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{

using namespace owc;

constexpr int exit_runtime = 1;
constexpr int exit_config = 2;
constexpr int exit_check_failed = 3;

struct Selection
{
    int scenario = 0;
    int system = 0;
    std::string config;
    bool all = false;
    std::string orders;
};

struct Common
{
    unsigned threads = 0;
    std::string out;
};

void add_selection(CLI::App *cmd, Selection &sel)
{
    cmd->add_option("--scenario", sel.scenario, "Built-in user layout (1 or 2)")->check(CLI::Range(1, 2));
    cmd->add_option("--system", sel.system, "Built-in ADR orientation (1, 2 or 3)")->check(CLI::Range(1, 3));
    cmd->add_option("--config", sel.config, "JSON scenario file")->check(CLI::ExistingFile);
    cmd->add_flag("--all", sel.all, "All six built-in scenario/system pairs");
    cmd->add_option("--orders", sel.orders, "Reflection orders: los,first,second or all");
}

void add_common(CLI::App *cmd, Common &c)
{
    cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
    cmd->add_option("--out", c.out, std::string("Output directory (default $") + out_dir_env + " or ./results)");
}

std::vector<ScenarioSpec> select_specs(const Selection &sel)
{
    std::vector<ScenarioSpec> specs;
    if (sel.all)
    {
        for (int sc = 1; sc <= 2; ++sc)
            for (int sy = 1; sy <= 3; ++sy)
                specs.push_back(builtin(sc, sy));
    }
    else if (!sel.config.empty())
    {
        if (sel.scenario || sel.system)
            throw ConfigError("--config cannot be combined with --scenario/--system");
        specs.push_back(load_config(sel.config));
    }
    else
    {
        if (!sel.scenario || !sel.system)
            throw ConfigError("select a run with --scenario and --system, --config, or --all");
        specs.push_back(builtin(sel.scenario, sel.system));
    }
    if (!sel.orders.empty())
    {
        const ReflectionOrders o = parse_orders(sel.orders);
        for (ScenarioSpec &s : specs)
        {
            s.channel.orders = o;
            s.validate();
        }
    }
    return specs;
}

void write_output(const fs::path &path, const std::string &text, RunManifest &manifest)
{
    write_text(path, text);
    manifest.outputs.push_back(path.generic_string());
}

void finish(const fs::path &dir, RunManifest &manifest)
{
    const fs::path path = dir / ("manifest_" + manifest.command + ".json");
    write_text(path, manifest.to_json().dump(2) + "\n");
    std::cout << "manifest: " << path.generic_string() << '\n';
}

// ------------------------------------------------------------------ simulate

int cmd_simulate(const Selection &sel, const Common &c, bool dump_ir)
{
    const fs::path dir = resolve_out_dir(c.out);
    RunManifest manifest;
    manifest.command = "simulate";
    for (const ScenarioSpec &spec : select_specs(sel))
    {
        std::cout << "simulating " << spec.name << " (" << spec.users.size() << " users, " << spec.ap_positions.size()
                  << " APs, orders " << to_string(spec.channel.orders) << ")\n";
        const SimulationResult r = simulate(spec, c.threads, dump_ir);
        std::cout << "  " << timing_summary(r) << '\n';
        manifest.runs.push_back(spec.name);
        manifest.config_hashes.push_back(config_hash(spec));
        write_output(dir / ("tensor_" + spec.name + ".json"), tensor_to_json(r.tensor, spec).dump(1) + "\n", manifest);
        write_output(dir / ("tensor_" + spec.name + ".csv"), tensor_csv(r.tensor), manifest);
        if (dump_ir)
            for (std::size_t u = 0; u < r.tensor.users; ++u)
                for (std::size_t b = 0; b < r.tensor.branches; ++b)
                    for (std::size_t a = 0; a < r.tensor.aps; ++a)
                    {
                        const ImpulseResponse &ir = r.tensor.response(u, b, a);
                        if (ir.dc_gain() <= 0.0)
                            continue;
                        const std::string name = "u" + std::to_string(u + 1) + "_b" + std::to_string(b + 1) + "_a" +
                                                 std::to_string(a + 1) + ".csv";
                        write_output(dir / "ir" / spec.name / name, impulse_response_csv(ir), manifest);
                    }
    }
    finish(dir, manifest);
    return 0;
}

// ------------------------------------------------------------------ allocate

int cmd_three_user(const fs::path &dir, ObjectiveMode mode)
{
    AllocationProblem p = three_user_problem();
    p.objective = mode;
    SolveStats stats;
    const Assignment a = solve_exact(p, &stats);
    const Evaluation e = evaluate_assignment(a, p);
    json users = json::array();
    std::cout << "three-user, three-AP, two-wavelength example (" << to_string(mode) << " objective)\n";
    for (std::size_t u = 0; u < p.users; ++u)
    {
        const LinkChoice &c = a.at(u);
        std::cout << "  user " << u + 1 << ": " << to_string(c) << ", SINR " << to_db(e.sinr_linear[u]) << " dB\n";
        json row = link_json(c);
        row["user"] = u + 1;
        row["sinr_db"] = to_db(e.sinr_linear[u]);
        users.push_back(row);
    }
    RunManifest manifest;
    manifest.command = "allocate";
    manifest.runs.push_back("three_user");
    const json j = {{"schema_version", 1},
                    {"kind", "three_user_assignment"},
                    {"objective_mode", to_string(mode)},
                    {"objective_value", a.objective_value},
                    {"users", users}};
    write_output(dir / "three_user_assignment.json", j.dump(2) + "\n", manifest);
    write_output(dir / "three_user_model.lp", export_milp(p).text, manifest);
    finish(dir, manifest);
    return 0;
}

int cmd_allocate(const Selection &sel, const Common &c, const std::string &tensor_path, const std::string &objective,
                 bool three_user, bool write_lp)
{
    const fs::path dir = resolve_out_dir(c.out);
    std::vector<ObjectiveMode> modes;
    if (objective == "both")
        modes = {ObjectiveMode::SumLinear, ObjectiveMode::SumDb};
    else
        modes = {parse_objective(objective)};
    if (three_user)
    {
        for (ObjectiveMode m : modes)
            cmd_three_user(dir, m);
        return 0;
    }

    const std::vector<ScenarioSpec> specs = select_specs(sel);
    if (!tensor_path.empty() && specs.size() != 1)
        throw ConfigError("--tensor needs exactly one scenario selection");

    RunManifest manifest;
    manifest.command = "allocate";
    bool all_dominant = true;
    for (const ScenarioSpec &spec : specs)
    {
        GainTensor tensor;
        if (!tensor_path.empty())
        {
            tensor = load_tensor(tensor_path);
            std::cout << "loaded tensor " << tensor_path << " (no impulse responses; bandwidth not reported)\n";
        }
        else
        {
            const SimulationResult r = simulate(spec, c.threads, true);
            std::cout << spec.name << ": " << timing_summary(r) << '\n';
            tensor = r.tensor;
        }
        manifest.runs.push_back(spec.name);
        manifest.config_hashes.push_back(config_hash(spec));
        for (ObjectiveMode m : modes)
        {
            const AllocationResult r = allocate(spec, tensor, m);
            std::cout << spec.name << " [" << to_string(m) << " objective]\n" << reference_diff_table(r);
            all_dominant = all_dominant && r.dominance_holds();
            const std::string suffix = m == ObjectiveMode::SumDb ? "_db" : "";
            write_output(dir / ("allocation_" + spec.name + suffix + ".json"), allocation_to_json(r).dump(2) + "\n",
                         manifest);
            if (write_lp)
            {
                const AllocationProblem p = AllocationProblem::from_tensor(tensor, spec.access_points(), spec.noise, m);
                write_output(dir / ("model_" + spec.name + ".lp"), export_milp(p).text, manifest);
            }
        }
    }
    finish(dir, manifest);
    if (!all_dominant)
    {
        std::cerr << "error: a reference assignment scores above the solver's optimum\n";
        return exit_check_failed;
    }
    return 0;
}

// ------------------------------------------------------------------ report

int cmd_report(const std::string &results, const Common &c)
{
    const fs::path in = resolve_out_dir(results);
    const fs::path dir = c.out.empty() ? in : fs::path(c.out);
    const ReportFiles files = build_report(in);
    RunManifest manifest;
    manifest.command = "report";
    for (const auto &[name, text] : files.files)
        write_output(dir / name, text, manifest);
    std::cout << files.table;
    finish(dir, manifest);
    return 0;
}

// ------------------------------------------------------------------ sweep

int cmd_sweep(const Selection &sel, const Common &c, double start, double stop, double step,
              const std::vector<double> &explicit_offsets, const std::string &objective)
{
    if (sel.all)
        throw ConfigError("sweep takes a single scenario (--scenario, or --config)");
    Selection s = sel;
    if (s.config.empty() && s.scenario && !s.system)
        s.system = 1;
    const ScenarioSpec base = select_specs(s).front();
    const ObjectiveMode mode = parse_objective(objective);
    const std::vector<double> offsets = explicit_offsets.empty() ? sweep_offsets(start, stop, step) : explicit_offsets;

    const fs::path dir = resolve_out_dir(c.out);
    RunManifest manifest;
    manifest.command = "sweep";
    manifest.runs.push_back(base.name);
    manifest.config_hashes.push_back(config_hash(base));
    std::vector<SweepRow> rows;
    for (double off : offsets)
    {
        const ScenarioSpec spec = with_azimuth_offset(base, off);
        const SimulationResult sim = simulate(spec, c.threads, true);
        const AllocationResult r = allocate(spec, sim.tensor, mode);
        rows.push_back(summarize(off, r));
        std::printf("offset %6.1f deg: min SINR %6.2f dB, mean %6.2f dB, objective %.6g (%.1f s)\n", off,
                    rows.back().min_sinr_db, rows.back().mean_sinr_db, rows.back().objective, sim.wall_s);
    }
    write_output(dir / ("sweep_" + base.name + ".csv"), sweep_csv(rows), manifest);
    finish(dir, manifest);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Indoor optical wireless channel simulator and WDMA allocator"};
    app.set_version_flag("--version", std::string(owc::tool_version));
    app.require_subcommand(1);

    Selection sel;
    Common common;

    auto *sim = app.add_subcommand("simulate", "Trace the channel and write the gain tensor");
    add_selection(sim, sel);
    add_common(sim, common);
    bool dump_ir = false;
    sim->add_flag("--dump-ir", dump_ir, "Also write every non-zero impulse response as CSV");

    auto *alloc = app.add_subcommand("allocate", "Solve the allocation and compare with the reference rows");
    add_selection(alloc, sel);
    add_common(alloc, common);
    std::string tensor_path, objective = "linear";
    bool three_user = false, write_lp = false;
    alloc->add_option("--tensor", tensor_path, "Use a gain tensor JSON instead of tracing")->check(CLI::ExistingFile);
    alloc->add_option("--objective", objective, "linear, db or both")
        ->check(CLI::IsMember({"linear", "db", "both"}));
    alloc->add_flag("--three-user", three_user, "Solve the built-in three-user interference example");
    alloc->add_flag("--lp", write_lp, "Also export the linearised MILP in LP format");

    auto *rep = app.add_subcommand("report", "Build CSV, threshold table and SVG charts from allocation results");
    std::string results;
    rep->add_option("--results", results, "Directory holding allocation_*.json (default: output directory)");
    rep->add_option("--out", common.out, "Where to write the report (default: the results directory)");

    auto *sweep = app.add_subcommand("sweep", "Re-solve the allocation over ADR azimuth offsets");
    add_selection(sweep, sel);
    add_common(sweep, common);
    double start = 0.0, stop = 90.0, step = 30.0;
    std::vector<double> offsets;
    std::string sweep_objective = "linear";
    sweep->add_option("--start", start, "First offset (deg)");
    sweep->add_option("--stop", stop, "End of the half-open range (deg)");
    sweep->add_option("--step", step, "Offset step (deg)");
    sweep->add_option("--offsets", offsets, "Explicit offsets (deg), overrides the range")->delimiter(',');
    sweep->add_option("--objective", sweep_objective, "linear or db")->check(CLI::IsMember({"linear", "db"}));

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (sim->parsed())
            return cmd_simulate(sel, common, dump_ir);
        if (alloc->parsed())
            return cmd_allocate(sel, common, tensor_path, objective, three_user, write_lp);
        if (rep->parsed())
            return cmd_report(results, common);
        if (sweep->parsed())
            return cmd_sweep(sel, common, start, stop, step, offsets, sweep_objective);
    }
    catch (const owc::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return 0;
}
