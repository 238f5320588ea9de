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

#include "owcsim/allocator.hpp"
#include "owcsim/scenarios.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <set>

using namespace owc;

namespace
{
AllocationProblem random_problem(std::mt19937_64 &rng, std::size_t users, std::size_t aps, std::size_t wls,
                                 std::size_t branches, ObjectiveMode mode)
{
    std::uniform_real_distribution<double> g(0.0, 1.5e-6), blocked(0.0, 1.0);
    AllocationProblem p;
    p.users = users;
    p.aps = aps;
    p.branches = branches;
    p.objective = mode;
    for (std::size_t k = 0; k < users * aps * branches; ++k)
        p.gains.push_back(blocked(rng) < 0.2 ? 0.0 : g(rng));
    for (std::size_t a = 0; a < aps; ++a)
        p.tx_power_w.push_back({{9.6, 6.0, 3.6, 3.6}});
    std::vector<Wavelength> all(all_wavelengths.begin(), all_wavelengths.end());
    std::shuffle(all.begin(), all.end(), rng);
    p.wavelengths.assign(all.begin(), all.begin() + std::ptrdiff_t(wls));
    std::sort(p.wavelengths.begin(), p.wavelengths.end());
    return p;
}

bool feasible(const Assignment &a, const AllocationProblem &p)
{
    std::set<std::pair<std::size_t, Wavelength>> slots;
    for (std::size_t u = 0; u < p.users; ++u)
    {
        const LinkChoice &l = a.at(u);
        if (l.ap >= p.aps || l.branch >= p.branches)
            return false;
        if (std::find(p.wavelengths.begin(), p.wavelengths.end(), l.wavelength) == p.wavelengths.end())
            return false;
        if (!slots.insert({l.ap, l.wavelength}).second)
            return false;
    }
    return true;
}

// Interference-free SINR of one user written out directly.
double lone_sinr(const AllocationProblem &p, std::size_t u, const LinkChoice &l)
{
    double total = 0.0;
    for (std::size_t a = 0; a < p.aps; ++a)
        total += p.tx_power_w[a][l.wavelength] * p.gain(u, l.branch, a);
    const double R = p.noise.responsivity[l.wavelength];
    const double s = R * p.tx_power_w[l.ap][l.wavelength] * p.gain(u, l.branch, l.ap);
    const double var = p.noise.preamp_variance() + 2.0 * p.noise.electron_charge * R * total * p.noise.bandwidth_hz;
    return s * s / var;
}
} // namespace

TEST(Exact, SingleUserTakesBestLoneLink)
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t)
    {
        const AllocationProblem p = random_problem(rng, 1, 3, 4, 2, ObjectiveMode::SumLinear);
        double best = -1.0;
        LinkChoice arg{};
        for (std::size_t a = 0; a < p.aps; ++a)
            for (Wavelength w : p.wavelengths)
                for (std::size_t b = 0; b < p.branches; ++b)
                {
                    const LinkChoice l{a, w, b};
                    const double s = lone_sinr(p, 0, l);
                    if (s > best)
                    {
                        best = s;
                        arg = l;
                    }
                }
        const Assignment got = solve_exact(p);
        EXPECT_EQ(got.at(0), arg);
        EXPECT_NEAR(got.objective_value, best, 1e-12 * best);
    }
}

TEST(Exact, ThreeUserPattern)
{
    const AllocationProblem p = three_user_problem();
    const Assignment a = solve_exact(p);
    EXPECT_EQ(a.at(0).ap, 0u);
    EXPECT_EQ(a.at(0).wavelength, Wavelength::Blue);
    EXPECT_EQ(a.at(1).ap, 1u);
    EXPECT_EQ(a.at(1).wavelength, Wavelength::Red);
    EXPECT_EQ(a.at(2).ap, 2u);
    EXPECT_EQ(a.at(2).wavelength, Wavelength::Red);
    EXPECT_EQ(solve_bruteforce(p).links, a.links);
}

TEST(Exact, FourUsersTwoApsTwoWavelengthsMatchesBruteForce)
{
    std::mt19937_64 rng(2);
    const AllocationProblem p = random_problem(rng, 4, 2, 2, 1, ObjectiveMode::SumLinear);
    const Assignment e = solve_exact(p), b = solve_bruteforce(p);
    EXPECT_EQ(e.links, b.links);
    EXPECT_EQ(e.objective_value, b.objective_value);
}

TEST(Exact, MatchesBruteForceOnRandomInstancesProperty)
{
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<std::size_t> nu(1, 4), na(1, 3), nw(1, 2), nb(1, 2);
    const auto t0 = std::chrono::steady_clock::now();
    int solved = 0;
    for (int t = 0; t < 400; ++t)
    {
        const std::size_t a = na(rng), w = nw(rng);
        const std::size_t u = std::min(nu(rng), a * w);
        const ObjectiveMode mode = t % 2 ? ObjectiveMode::SumDb : ObjectiveMode::SumLinear;
        const AllocationProblem p = random_problem(rng, u, a, w, nb(rng), mode);
        const Assignment e = solve_exact(p), b = solve_bruteforce(p);
        ASSERT_TRUE(feasible(e, p));
        const double scale = std::max(1.0, std::abs(b.objective_value));
        EXPECT_NEAR(e.objective_value, b.objective_value, 1e-12 * scale) << "instance " << t;
        EXPECT_EQ(e.links, b.links) << "instance " << t;
        ++solved;
    }
    EXPECT_GE(solved, 200);
    EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 60.0);
}

TEST(Exact, TiesResolveToLexicographicallySmallest)
{
    // Identical users and identical APs: every permutation scores the same.
    AllocationProblem p;
    p.users = 2;
    p.aps = 2;
    p.branches = 2;
    p.gains = std::vector<double>(8, 1e-6);
    p.tx_power_w = {{{9.6, 6.0, 3.6, 3.6}}, {{9.6, 6.0, 3.6, 3.6}}};
    p.wavelengths = {Wavelength::Green, Wavelength::Blue};
    const Assignment e = solve_exact(p), b = solve_bruteforce(p);
    EXPECT_EQ(e.links, b.links);
    EXPECT_EQ(e.at(0), (LinkChoice{0, Wavelength::Green, 0}));
}

TEST(Exact, DeterministicAcrossRuns)
{
    std::mt19937_64 rng(4);
    const AllocationProblem p = random_problem(rng, 6, 4, 4, 4, ObjectiveMode::SumLinear);
    const Assignment a = solve_exact(p), b = solve_exact(p);
    EXPECT_EQ(a.links, b.links);
    EXPECT_EQ(a.objective_value, b.objective_value);
}

TEST(Exact, PaperScaleRandomInstanceIsFeasible)
{
    std::mt19937_64 rng(5);
    const AllocationProblem p = random_problem(rng, 8, 8, 4, 4, ObjectiveMode::SumLinear);
    SolveStats stats;
    const Assignment a = solve_exact(p, &stats);
    EXPECT_TRUE(feasible(a, p));
    EXPECT_GT(stats.nodes, 0u);
    EXPECT_NEAR(evaluate_assignment(a, p).objective, a.objective_value, 1e-12 * a.objective_value);
}

TEST(Exact, InfeasibleWhenSlotsExhausted)
{
    std::mt19937_64 rng(6);
    const AllocationProblem p = random_problem(rng, 3, 1, 2, 1, ObjectiveMode::SumLinear);
    EXPECT_THROW(solve_exact(p), InfeasibleError);
    EXPECT_THROW(solve_bruteforce(p), InfeasibleError);
}

TEST(BruteForce, SingleUserPicksStrongerAp)
{
    AllocationProblem p;
    p.users = 1;
    p.aps = 2;
    p.branches = 1;
    p.gains = {2e-7, 9e-7};
    p.tx_power_w = {{{9.6, 6.0, 3.6, 3.6}}, {{9.6, 6.0, 3.6, 3.6}}};
    p.wavelengths = {Wavelength::Red};
    EXPECT_EQ(solve_bruteforce(p).at(0).ap, 1u);
}

TEST(BruteForce, SingleApForcesDistinctWavelengths)
{
    AllocationProblem p;
    p.users = 2;
    p.aps = 1;
    p.branches = 1;
    p.gains = {1e-6, 8e-7};
    p.tx_power_w = {{{9.6, 6.0, 3.6, 3.6}}};
    p.wavelengths = {Wavelength::Red, Wavelength::Yellow};
    const Assignment a = solve_bruteforce(p);
    EXPECT_NE(a.at(0).wavelength, a.at(1).wavelength);
}

TEST(BruteForce, RefusesHugeInstancesWithEstimate)
{
    std::mt19937_64 rng(7);
    const AllocationProblem p = random_problem(rng, 8, 8, 4, 4, ObjectiveMode::SumLinear);
    try
    {
        (void)solve_bruteforce(p);
        FAIL() << "expected refusal";
    }
    catch (const std::invalid_argument &e)
    {
        EXPECT_NE(std::string(e.what()).find("128^8"), std::string::npos) << e.what();
    }
}

TEST(Evaluate, InterferenceFreeMatchesLoneSinr)
{
    std::mt19937_64 rng(8);
    const AllocationProblem p = random_problem(rng, 3, 3, 4, 2, ObjectiveMode::SumLinear);
    Assignment a;
    a.links = {LinkChoice{0, p.wavelengths[0], 1}, LinkChoice{1, p.wavelengths[1], 0}, LinkChoice{2, p.wavelengths[2], 1}};
    const Evaluation ev = evaluate_assignment(a, p);
    for (std::size_t u = 0; u < 3; ++u)
    {
        const double s = lone_sinr(p, u, a.at(u));
        EXPECT_NEAR(ev.sinr_linear[u], s, 1e-12 * std::max(s, 1e-300));
    }
}

TEST(Evaluate, SharedSlotReportsOffendingPair)
{
    std::mt19937_64 rng(9);
    const AllocationProblem p = random_problem(rng, 3, 2, 2, 1, ObjectiveMode::SumLinear);
    Assignment a;
    a.links = {LinkChoice{0, p.wavelengths[0], 0}, LinkChoice{1, p.wavelengths[0], 0}, LinkChoice{1, p.wavelengths[0], 0}};
    try
    {
        (void)evaluate_assignment(a, p);
        FAIL() << "expected rejection";
    }
    catch (const std::invalid_argument &e)
    {
        EXPECT_NE(std::string(e.what()).find("Users 2 and 3"), std::string::npos) << e.what();
    }
}

TEST(Evaluate, SwappingTriplesOnSymmetricInstance)
{
    // Identical users: exchanging their complete links is a relabelling.
    AllocationProblem p;
    p.users = 2;
    p.aps = 2;
    p.branches = 1;
    p.gains = {1e-6, 2e-7, 1e-6, 2e-7};
    p.tx_power_w = {{{9.6, 6.0, 3.6, 3.6}}, {{9.6, 6.0, 3.6, 3.6}}};
    p.wavelengths = {Wavelength::Red};
    Assignment a, b;
    a.links = {LinkChoice{0, Wavelength::Red, 0}, LinkChoice{1, Wavelength::Red, 0}};
    b.links = {LinkChoice{1, Wavelength::Red, 0}, LinkChoice{0, Wavelength::Red, 0}};
    const Evaluation ea = evaluate_assignment(a, p);
    const Evaluation eb = evaluate_assignment(b, p);
    EXPECT_NEAR(ea.objective, eb.objective, 1e-12 * ea.objective);
    EXPECT_EQ(ea.sinr_linear[0], eb.sinr_linear[1]);
    EXPECT_EQ(ea.sinr_linear[1], eb.sinr_linear[0]);
}

TEST(Evaluate, DominatedByExactSolution)
{
    std::mt19937_64 rng(10);
    for (int t = 0; t < 30; ++t)
    {
        const AllocationProblem p = random_problem(rng, 4, 3, 2, 2, ObjectiveMode::SumLinear);
        const Assignment best = solve_exact(p);
        // Any feasible assignment: users on consecutive (ap, wavelength) slots.
        Assignment a;
        for (std::size_t u = 0; u < p.users; ++u)
            a.links.emplace_back(LinkChoice{u % p.aps, p.wavelengths[u / p.aps], u % p.branches});
        EXPECT_GE(best.objective_value, evaluate_assignment(a, p).objective);
    }
}

TEST(Problem, ValidationErrors)
{
    AllocationProblem p = three_user_problem();
    p.gains.pop_back();
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = three_user_problem();
    p.wavelengths = {Wavelength::Blue, Wavelength::Red};
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = three_user_problem();
    p.gains[0] = -1.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Objective, DbModeUsesFloor)
{
    EXPECT_NEAR(objective_term(100.0, ObjectiveMode::SumDb), 20.0, 1e-12);
    EXPECT_NEAR(objective_term(0.0, ObjectiveMode::SumDb), -300.0, 1e-9);
    EXPECT_EQ(objective_term(3.5, ObjectiveMode::SumLinear), 3.5);
    EXPECT_EQ(parse_objective("db"), ObjectiveMode::SumDb);
    EXPECT_THROW(parse_objective("log"), std::invalid_argument);
}
