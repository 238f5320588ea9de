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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero if any hard
// criterion fails. Criterion 4 is soft: it is reported but does not change the exit status.

#include "owcsim/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <set>

using namespace owc;

namespace
{
constexpr double sinr_threshold_db = 15.6;
constexpr double bandwidth_lo_hz = 3.0e9, bandwidth_hi_hz = 5.5e9;
constexpr double concordance_expected = 0.60;
constexpr std::size_t min_random_instances = 200;
constexpr double exactness_rel = 1e-12;
constexpr double exactness_budget_s = 60.0;
constexpr double grid_tolerance = 0.05;
constexpr double energy_bound = 0.8;
constexpr double ber_lo = 1e-11, ber_hi = 1e-9;

int hard_failures = 0;

void report(int id, const char *title, bool pass, const std::string &detail, bool soft = false)
{
    std::printf("criterion %d %-28s %s  %s%s\n", id, title, pass ? "PASS" : "FAIL", detail.c_str(),
                soft ? " (soft)" : "");
    std::fflush(stdout);
    if (!pass && !soft)
        ++hard_failures;
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct BuiltinRun
{
    ScenarioSpec spec;
    AllocationResult result;
};

std::vector<BuiltinRun> run_builtins()
{
    std::vector<BuiltinRun> runs;
    for (int sc = 1; sc <= 2; ++sc)
        for (int sy = 1; sy <= 3; ++sy)
        {
            const ScenarioSpec s = builtin(sc, sy);
            runs.push_back({s, allocate(s, simulate(s, 0, true).tensor, ObjectiveMode::SumLinear)});
        }
    return runs;
}

void criterion_threshold(const std::vector<BuiltinRun> &runs)
{
    std::size_t ok = 0, total = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const BuiltinRun &r : runs)
        for (const UserReport &u : r.result.users)
        {
            ++total;
            ok += u.sinr_db >= sinr_threshold_db;
            worst = std::min(worst, u.sinr_db);
        }
    report(1, "SINR threshold", ok == total && total == 48,
           fmt("%zu/%zu users >= %.1f dB, minimum %.2f dB", ok, total, sinr_threshold_db, worst));
}

void criterion_bandwidth(const std::vector<BuiltinRun> &runs)
{
    double lowest = std::numeric_limits<double>::infinity();
    bool lowest_is_bound = false;
    std::size_t bounds = 0, total = 0;
    for (const BuiltinRun &r : runs)
        for (const UserReport &u : r.result.users)
        {
            ++total;
            bounds += u.bandwidth.lower_bound;
            if (u.bandwidth.hz < lowest)
            {
                lowest = u.bandwidth.hz;
                lowest_is_bound = u.bandwidth.lower_bound;
            }
        }
    const bool pass = !lowest_is_bound && lowest >= bandwidth_lo_hz && lowest <= bandwidth_hi_hz;
    report(2, "bandwidth envelope", pass,
           fmt("minimum %.3f GHz%s, target [%.1f, %.1f] GHz; %zu/%zu users without a 3-dB crossing", lowest / 1e9,
               lowest_is_bound ? " (lower bound)" : "", bandwidth_lo_hz / 1e9, bandwidth_hi_hz / 1e9, bounds, total));
}

void criterion_dominance(const std::vector<BuiltinRun> &runs)
{
    std::size_t ok = 0;
    std::string detail;
    for (const BuiltinRun &r : runs)
    {
        const bool d = r.result.reference_evaluation && r.result.dominance_holds();
        ok += d;
        detail += fmt("%s%s %.4g>=%.4g", detail.empty() ? "" : "; ", r.spec.name.c_str(),
                      r.result.assignment.objective_value,
                      r.result.reference_evaluation ? r.result.reference_evaluation->objective : 0.0);
    }
    report(3, "optimality dominance", ok == runs.size() && runs.size() == 6, fmt("%zu/6: ", ok) + detail);
}

void criterion_concordance(const std::vector<BuiltinRun> &runs)
{
    std::size_t match = 0, total = 0;
    std::string detail;
    for (const BuiltinRun &r : runs)
    {
        match += r.result.concordant_rows();
        total += r.result.reference.size();
        detail += fmt("%s%zu", detail.empty() ? "" : ",", r.result.concordant_rows());
    }
    const double frac = total ? double(match) / double(total) : 0.0;
    report(4, "assignment concordance", frac >= concordance_expected,
           fmt("%zu/%zu (%.1f%%) AP+wavelength rows match, per case %s; expected >= %.0f%%", match, total, 100.0 * frac,
               detail.c_str(), 100.0 * concordance_expected),
           true);
}

AllocationProblem random_instance(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<std::size_t> users(1, 4), aps(1, 3), wls(1, 2), brs(1, 2);
    std::uniform_real_distribution<double> gain(0.0, 1.5e-6), unit(0.0, 1.0);
    AllocationProblem p;
    for (;;)
    {
        p.users = users(rng);
        p.aps = aps(rng);
        p.branches = brs(rng);
        std::vector<Wavelength> pool(all_wavelengths.begin(), all_wavelengths.end());
        std::shuffle(pool.begin(), pool.end(), rng);
        pool.resize(wls(rng));
        std::sort(pool.begin(), pool.end());
        p.wavelengths = pool;
        if (p.users <= p.slots())
            break;
    }
    p.gains.resize(p.users * p.branches * p.aps);
    for (double &g : p.gains)
        g = unit(rng) < 0.25 ? 0.0 : gain(rng);
    const TransmitterSpec tx;
    p.tx_power_w.assign(p.aps, {});
    for (auto &row : p.tx_power_w)
        for (Wavelength w : all_wavelengths)
            row[w] = tx.ld_power_w[w] * tx.lds_per_unit;
    p.objective = unit(rng) < 0.5 ? ObjectiveMode::SumLinear : ObjectiveMode::SumDb;
    return p;
}

void criterion_exactness()
{
    std::mt19937_64 rng(20260514);
    std::size_t checked = 0, value_ok = 0, links_ok = 0;
    const auto t0 = std::chrono::steady_clock::now();
    while (checked < 2 * min_random_instances)
    {
        const AllocationProblem p = random_instance(rng);
        const Assignment e = solve_exact(p), b = solve_bruteforce(p);
        ++checked;
        const double scale = std::max(1.0, std::abs(b.objective_value));
        value_ok += std::abs(e.objective_value - b.objective_value) <= exactness_rel * scale;
        links_ok += e.links == b.links;
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = checked >= min_random_instances && value_ok == checked && links_ok == checked &&
                      s <= exactness_budget_s;
    report(5, "solver exactness", pass,
           fmt("%zu instances: %zu objectives within %.0e, %zu identical assignments, %.2f s (budget %.0f s)", checked,
               value_ok, exactness_rel, links_ok, s, exactness_budget_s));
}

void criterion_three_user()
{
    const AllocationProblem p = three_user_problem();
    const Assignment a = solve_exact(p);
    const bool pass = a.at(0).ap == 0 && a.at(0).wavelength == Wavelength::Blue && a.at(1).ap == 1 &&
                      a.at(1).wavelength == Wavelength::Red && a.at(2).ap == 2 && a.at(2).wavelength == Wavelength::Red;
    report(6, "three-user example", pass,
           "user 1 " + to_string(a.at(0)) + ", user 2 " + to_string(a.at(1)) + ", user 3 " + to_string(a.at(2)));
}

void criterion_physics()
{
    std::string detail;
    bool pass = true;

    // Inverse square, exact.
    bool inverse_square = true;
    for (double d : {0.5, 1.0, 2.0, 3.3, 7.0})
        inverse_square = inverse_square && lambertian_gain(1.0, 2 * d, 0.9, 0.8, 1e-4) * 4.0 ==
                                               lambertian_gain(1.0, d, 0.9, 0.8, 1e-4);
    pass = pass && inverse_square;
    detail += inverse_square ? "inverse-square exact" : "inverse-square broken";

    // Energy collected by the reflecting surfaces from one unit emitter.
    const ScenarioSpec spec = builtin(1, 1);
    const auto fine = discretize(spec.room, spec.channel.fine_element_m);
    double worst_energy = 0.0;
    for (const Vec3 &pos : spec.ap_positions)
    {
        const Emitter e{pos, {0, 0, -1}, 1.0, spec.transmitter.lambertian_order};
        double collected = 0.0;
        for (const SurfacePatch &p : fine)
            collected += detail::source_to_patch(e, p).gain;
        worst_energy = std::max(worst_energy, collected);
    }
    pass = pass && worst_energy <= energy_bound;
    detail += fmt("; reflected energy max %.4f (<= %.1f)", worst_energy, energy_bound);

    // First-order grid convergence on the four strongest (AP, branch) pairs of user 1.
    ChannelConfig base = spec.channel;
    base.orders = parse_orders("first");
    base.keep_responses = false;
    ChannelConfig half = base;
    half.fine_element_m = base.fine_element_m / 2.0;
    const std::vector<ADR> rx{spec.receivers()[0]};
    const auto aps = spec.access_points();
    const GainTensor a = gain_tensor(aps, rx, RoomSurfaces::build(spec.room, base), base);
    const GainTensor b = gain_tensor(aps, rx, RoomSurfaces::build(spec.room, half), half);
    std::vector<std::size_t> idx(a.dc.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return a.dc[x] > a.dc[y]; });
    double worst_change = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        worst_change = std::max(worst_change, std::abs(b.dc[idx[k]] / a.dc[idx[k]] - 1.0));
    pass = pass && worst_change < grid_tolerance;
    detail += fmt("; grid change max %.2f%% on 4 pairs (< %.0f%%)", 100.0 * worst_change, 100.0 * grid_tolerance);

    // A user directly beneath an AP sees no LOS on any 60-degree branch.
    const ADR below = build_adr({1.0, 7.0, 1.0}, 1, spec.optics);
    double los = 0.0;
    for (const ReceiverBranch &br : below.branches)
        los += los_contribution(aps[3], br).gain;
    pass = pass && los == 0.0;
    detail += fmt("; LOS beneath AP %g", los);

    report(7, "physics properties", pass, detail);
}

void criterion_ber()
{
    const double ber = ber_ook(from_db(sinr_threshold_db));
    report(8, "BER at threshold", ber > ber_lo && ber <= ber_hi,
           fmt("BER(%.1f dB) = %.4e, required in (%.0e, %.0e]", sinr_threshold_db, ber, ber_lo, ber_hi));
}
} // namespace

int main()
{
    try
    {
        const std::vector<BuiltinRun> runs = run_builtins();
        criterion_threshold(runs);
        criterion_bandwidth(runs);
        criterion_dominance(runs);
        criterion_concordance(runs);
        criterion_exactness();
        criterion_three_user();
        criterion_physics();
        criterion_ber();
    }
    catch (const std::exception &e)
    {
        std::printf("acceptance aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%s: %d hard criteria failed\n", hard_failures ? "FAIL" : "PASS", hard_failures);
    return hard_failures ? 1 : 0;
}
