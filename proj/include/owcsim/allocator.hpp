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

#ifndef OWCSIM_ALLOCATOR_HPP
#define OWCSIM_ALLOCATOR_HPP

#include "owcsim/assignment.hpp"
#include "owcsim/channel.hpp"
#include "owcsim/receiver.hpp"
#include "owcsim/wavelength.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace owc
{

class InfeasibleError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Joint (AP, wavelength, branch) allocation instance.
struct AllocationProblem
{
    std::size_t users = 0;
    std::size_t branches = 0;
    std::size_t aps = 0;
    std::vector<double> gains;                     // DC gains [user][branch][ap]
    std::vector<PerWavelength<double>> tx_power_w; // per AP
    NoiseModel noise;
    std::vector<Wavelength> wavelengths{all_wavelengths.begin(), all_wavelengths.end()};
    ObjectiveMode objective = ObjectiveMode::SumLinear;

    double gain(std::size_t u, std::size_t b, std::size_t a) const { return gains[(u * branches + b) * aps + a]; }

    std::size_t slots() const { return aps * wavelengths.size(); }

    void validate() const
    {
        if (users == 0 || branches == 0 || aps == 0)
            throw std::invalid_argument("Allocation problem needs at least one user, branch and AP.");
        if (gains.size() != users * branches * aps)
            throw std::invalid_argument("Gain table size does not match users x branches x APs.");
        if (tx_power_w.size() != aps)
            throw std::invalid_argument("Transmit power table must have one entry per AP.");
        if (wavelengths.empty() || wavelengths.size() > num_wavelengths)
            throw std::invalid_argument("Between one and four wavelengths must be offered.");
        if (!std::is_sorted(wavelengths.begin(), wavelengths.end()) ||
            std::adjacent_find(wavelengths.begin(), wavelengths.end()) != wavelengths.end())
            throw std::invalid_argument("Wavelength set must be sorted and free of duplicates.");
        for (double g : gains)
            if (!(g >= 0.0))
                throw std::invalid_argument("Channel gains must be non-negative.");
        noise.validate();
    }

    static AllocationProblem from_tensor(const GainTensor &tensor, const std::vector<AccessPoint> &ap_list,
                                         const NoiseModel &noise, ObjectiveMode mode = ObjectiveMode::SumLinear)
    {
        if (ap_list.size() != tensor.aps)
            throw std::invalid_argument("AP list does not match the gain tensor.");
        AllocationProblem p;
        p.users = tensor.users;
        p.branches = tensor.branches;
        p.aps = tensor.aps;
        p.gains = tensor.dc;
        for (const AccessPoint &ap : ap_list)
            p.tx_power_w.push_back(ap.tx_power_w);
        p.noise = noise;
        p.objective = mode;
        return p;
    }
};

namespace detail
{
// Per-(user, branch, ap, wavelength) photocurrents and per-(user, branch, wavelength) noise, shared
// by both solvers and by evaluate_assignment so their objective values are computed identically.
class LinkTable
{
  public:
    explicit LinkTable(const AllocationProblem &p) : p_(p), W_(p.wavelengths.size())
    {
        p.validate();
        current_.resize(p.users * p.branches * p.aps * W_);
        noise_.resize(p.users * p.branches * W_);
        for (std::size_t u = 0; u < p.users; ++u)
            for (std::size_t b = 0; b < p.branches; ++b)
                for (std::size_t wi = 0; wi < W_; ++wi)
                {
                    const Wavelength w = p.wavelengths[wi];
                    double total = 0.0;
                    for (std::size_t a = 0; a < p.aps; ++a)
                    {
                        const double power = p.tx_power_w[a][w] * p.gain(u, b, a);
                        total += power;
                        current_[idx(u, b, a, wi)] = p.noise.responsivity[w] * power;
                    }
                    noise_[(u * p.branches + b) * W_ + wi] = noise_variance(total, w, p.noise);
                }
    }

    std::size_t idx(std::size_t u, std::size_t b, std::size_t a, std::size_t wi) const
    {
        return ((u * p_.branches + b) * p_.aps + a) * W_ + wi;
    }
    double current(std::size_t u, std::size_t b, std::size_t a, std::size_t wi) const { return current_[idx(u, b, a, wi)]; }
    double noise(std::size_t u, std::size_t b, std::size_t wi) const { return noise_[(u * p_.branches + b) * W_ + wi]; }

    std::size_t choices() const { return p_.aps * W_ * p_.branches; }

    // Choice index c <-> (ap, wavelength index, branch), lexicographic.
    std::size_t ap_of(std::size_t c) const { return c / (W_ * p_.branches); }
    std::size_t wi_of(std::size_t c) const { return (c / p_.branches) % W_; }
    std::size_t branch_of(std::size_t c) const { return c % p_.branches; }
    std::size_t slot_of(std::size_t c) const { return ap_of(c) * W_ + wi_of(c); }

    LinkChoice link(std::size_t c) const { return {ap_of(c), p_.wavelengths[wi_of(c)], branch_of(c)}; }

    std::size_t choice_of(const LinkChoice &l) const
    {
        const auto it = std::find(p_.wavelengths.begin(), p_.wavelengths.end(), l.wavelength);
        if (it == p_.wavelengths.end())
            throw std::invalid_argument("Wavelength " + std::string(name_of(l.wavelength)) + " is not offered.");
        if (l.ap >= p_.aps || l.branch >= p_.branches)
            throw std::invalid_argument("Link " + to_string(l) + " is out of range.");
        return (l.ap * W_ + std::size_t(it - p_.wavelengths.begin())) * p_.branches + l.branch;
    }

    // SINR of user u on choice c with co-wavelength users listed in (users, choices).
    double sinr_of(std::size_t u, std::size_t c, const std::vector<std::size_t> &choice_per_user) const
    {
        const std::size_t a = ap_of(c), wi = wi_of(c), b = branch_of(c);
        double interference = 0.0;
        for (std::size_t k = 0; k < choice_per_user.size(); ++k)
        {
            if (k == u)
                continue;
            const std::size_t ck = choice_per_user[k];
            if (wi_of(ck) != wi || ap_of(ck) == a)
                continue;
            const double i = current(u, b, ap_of(ck), wi);
            interference += i * i;
        }
        const double s = current(u, b, a, wi);
        return s * s / (noise(u, b, wi) + interference);
    }

    // Objective of a complete assignment, summed in user order.
    double objective(const std::vector<std::size_t> &choice_per_user, std::vector<double> *sinr_out = nullptr) const
    {
        double total = 0.0;
        for (std::size_t u = 0; u < choice_per_user.size(); ++u)
        {
            const double s = sinr_of(u, choice_per_user[u], choice_per_user);
            if (sinr_out)
                sinr_out->push_back(s);
            total += objective_term(s, p_.objective);
        }
        return total;
    }

    const AllocationProblem &problem() const { return p_; }
    std::size_t num_wavelengths() const { return W_; }

  private:
    const AllocationProblem &p_;
    std::size_t W_;
    std::vector<double> current_;
    std::vector<double> noise_;
};

inline Assignment to_assignment(const LinkTable &t, const std::vector<std::size_t> &choices, double objective)
{
    Assignment out;
    out.objective = t.problem().objective;
    out.objective_value = objective;
    for (std::size_t c : choices)
        out.links.emplace_back(t.link(c));
    return out;
}

inline void check_capacity(const AllocationProblem &p)
{
    if (p.users > p.slots())
    {
        std::ostringstream msg;
        msg << "Infeasible: " << p.users << " users but only " << p.slots() << " (AP, wavelength) slots.";
        throw InfeasibleError(msg.str());
    }
}
} // namespace detail

struct Evaluation
{
    std::vector<double> sinr_linear;
    double objective = 0.0;
};

/// Scores a given assignment under the problem's objective. Throws on any constraint violation.
inline Evaluation evaluate_assignment(const Assignment &assignment, const AllocationProblem &problem)
{
    const detail::LinkTable table(problem);
    if (assignment.links.size() != problem.users)
        throw std::invalid_argument("Assignment covers " + std::to_string(assignment.links.size()) + " users, problem has " +
                                    std::to_string(problem.users) + ".");
    std::vector<std::size_t> choices;
    for (std::size_t u = 0; u < problem.users; ++u)
        choices.push_back(table.choice_of(assignment.at(u)));
    for (std::size_t u = 0; u < problem.users; ++u)
        for (std::size_t v = u + 1; v < problem.users; ++v)
            if (table.slot_of(choices[u]) == table.slot_of(choices[v]))
                throw std::invalid_argument("Users " + std::to_string(u + 1) + " and " + std::to_string(v + 1) +
                                            " share AP " + std::to_string(assignment.at(u).ap + 1) + " on " +
                                            std::string(name_of(assignment.at(u).wavelength)) + ".");
    Evaluation ev;
    ev.objective = table.objective(choices, &ev.sinr_linear);
    return ev;
}

/// Objective values within this distance of the optimum count as ties.
inline double tie_tolerance(double optimum) { return 1e-12 * std::max(1.0, std::abs(optimum)); }

/// Exhaustive search over all feasible joint assignments. Ties (objective within tie_tolerance of
/// the optimum) go to the lexicographically smallest (ap, wavelength, branch) vector in user order.
inline Assignment solve_bruteforce(const AllocationProblem &problem, double max_leaves = 1e8)
{
    const detail::LinkTable table(problem);
    detail::check_capacity(problem);
    const double leaves = std::pow(double(table.choices()), double(problem.users));
    if (leaves > max_leaves)
    {
        std::ostringstream msg;
        msg << "Instance too large for exhaustive search: " << table.choices() << "^" << problem.users << " = " << leaves
            << " joint assignments (limit " << max_leaves << ").";
        throw std::invalid_argument(msg.str());
    }

    const std::size_t n = problem.users, C = table.choices();
    std::vector<std::size_t> cur(n, 0), best;
    std::vector<char> slot_used(problem.slots(), 0);
    double best_obj = -std::numeric_limits<double>::infinity();
    double target = best_obj;
    bool first_pass = true;

    // Pass one finds the optimum, pass two the first assignment in lexicographic order within the
    // tie tolerance of it.
    auto recurse = [&](auto &&self, std::size_t u) -> bool
    {
        if (u == n)
        {
            const double obj = table.objective(cur);
            if (first_pass)
            {
                best_obj = std::max(best_obj, obj);
                return false;
            }
            if (obj >= target)
            {
                best = cur;
                best_obj = obj;
                return true;
            }
            return false;
        }
        for (std::size_t c = 0; c < C; ++c)
        {
            const std::size_t s = table.slot_of(c);
            if (slot_used[s])
                continue;
            slot_used[s] = 1;
            cur[u] = c;
            const bool done = self(self, u + 1);
            slot_used[s] = 0;
            if (done)
                return true;
        }
        return false;
    };
    recurse(recurse, 0);
    target = best_obj - tie_tolerance(best_obj);
    first_pass = false;
    recurse(recurse, 0);
    return detail::to_assignment(table, best, best_obj);
}

/// Search statistics of the last solve_exact call.
struct SolveStats
{
    std::size_t nodes = 0;
    std::size_t leaves = 0;
    std::size_t pruned = 0;
};

namespace detail
{
// Users on one wavelength interact only with each other, so a joint assignment splits into
// independent wavelength classes. values[wi][mask] is the best summed objective of the users in
// mask sharing wavelength wi, over all maps to distinct APs with each user on its best branch.
inline std::vector<std::vector<double>> class_values(const LinkTable &table)
{
    const AllocationProblem &p = table.problem();
    const std::size_t n = p.users, A = p.aps, B = p.branches, W = table.num_wavelengths();
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> values(W, std::vector<double>(std::size_t(1) << n, ninf));

    std::vector<std::size_t> ap_of(n, 0), members;
    std::vector<char> ap_used(A, 0);
    for (std::size_t wi = 0; wi < W; ++wi)
    {
        std::vector<double> &v = values[wi];
        auto leaf = [&](std::size_t mask)
        {
            double total = 0.0;
            for (std::size_t k : members)
            {
                double best = 0.0;
                for (std::size_t b = 0; b < B; ++b)
                {
                    double interference = 0.0;
                    for (std::size_t j : members)
                        if (j != k)
                        {
                            const double i = table.current(k, b, ap_of[j], wi);
                            interference += i * i;
                        }
                    const double c = table.current(k, b, ap_of[k], wi);
                    best = std::max(best, c * c / (table.noise(k, b, wi) + interference));
                }
                total += objective_term(best, p.objective);
            }
            v[mask] = std::max(v[mask], total);
        };
        auto recurse = [&](auto &&self, std::size_t u, std::size_t mask) -> void
        {
            if (u == n)
            {
                leaf(mask);
                return;
            }
            self(self, u + 1, mask);
            if (members.size() == A)
                return;
            for (std::size_t a = 0; a < A; ++a)
            {
                if (ap_used[a])
                    continue;
                ap_used[a] = 1;
                ap_of[u] = a;
                members.push_back(u);
                self(self, u + 1, mask | (std::size_t(1) << u));
                members.pop_back();
                ap_used[a] = 0;
            }
        };
        recurse(recurse, 0, 0);
    }
    return values;
}

// Best split of the users in `full` (a bitmask) over the wavelength classes, given per-class
// value tables h[wi][sub] indexed by sub-masks of `full` compressed to `bits` positions.
inline double best_partition(const std::vector<std::vector<double>> &h, std::size_t bits)
{
    const std::size_t full = (std::size_t(1) << bits) - 1;
    std::vector<double> g = h[0], next(g.size());
    for (std::size_t wi = 1; wi < h.size(); ++wi)
    {
        for (std::size_t y = 0; y <= full; ++y)
        {
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t x = y;; x = (x - 1) & y)
            {
                best = std::max(best, g[y & ~x] + h[wi][x]);
                if (x == 0)
                    break;
            }
            next[y] = best;
        }
        std::swap(g, next);
    }
    return g[full];
}
} // namespace detail

/// Exact solver.
///
/// The optimum is the best split of the users over wavelength classes, each class valued exactly
/// by enumerating its AP maps. A branch-and-bound over users in index order, with candidates in
/// lexicographic (ap, wavelength, branch) order, then returns the first assignment whose objective
/// is within tie_tolerance of that optimum, so the tie-break matches solve_bruteforce. Its bound
/// at a node keeps the placed users' wavelengths and, per class, takes the smaller of the class
/// value of placed plus free users, and the placed users' SINR under placed interference plus the
/// class value of the free users alone; interference only lowers SINR, so both are admissible.
/// Class tables hold 2^users entries per wavelength, so the solver is meant for modest user counts.
inline Assignment solve_exact(const AllocationProblem &problem, SolveStats *stats = nullptr)
{
    const detail::LinkTable table(problem);
    detail::check_capacity(problem);
    const std::size_t n = problem.users, C = table.choices(), W = table.num_wavelengths();
    if (n > 20)
        throw std::invalid_argument("Exact solver supports at most 20 users, got " + std::to_string(n) + ".");
    const ObjectiveMode mode = problem.objective;
    const std::vector<std::vector<double>> values = detail::class_values(table);

    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> choice(n, none);
    std::vector<char> slot_used(problem.slots(), 0);
    SolveStats st;

    // Objective term of placed user k under interference from the other placed users.
    auto placed_term = [&](std::size_t k, std::size_t depth)
    {
        const std::size_t c = choice[k], a = table.ap_of(c), wi = table.wi_of(c), b = table.branch_of(c);
        double interference = 0.0;
        for (std::size_t j = 0; j < depth; ++j)
        {
            if (j == k || table.wi_of(choice[j]) != wi || table.ap_of(choice[j]) == a)
                continue;
            const double i = table.current(k, b, table.ap_of(choice[j]), wi);
            interference += i * i;
        }
        const double s = table.current(k, b, a, wi);
        return objective_term(s * s / (table.noise(k, b, wi) + interference), mode);
    };

    std::vector<std::vector<double>> h(W);
    auto bound = [&](std::size_t depth)
    {
        const std::size_t m = n - depth;
        std::vector<std::size_t> placed_mask(W, 0);
        std::vector<double> placed_sum(W, 0.0);
        for (std::size_t k = 0; k < depth; ++k)
        {
            const std::size_t wi = table.wi_of(choice[k]);
            placed_mask[wi] |= std::size_t(1) << k;
            placed_sum[wi] += placed_term(k, depth);
        }
        for (std::size_t wi = 0; wi < W; ++wi)
        {
            h[wi].assign(std::size_t(1) << m, 0.0);
            for (std::size_t x = 0; x < h[wi].size(); ++x)
            {
                const std::size_t free = x << depth;
                const double joint = values[wi][placed_mask[wi] | free];
                const double split = placed_sum[wi] + values[wi][free];
                h[wi][x] = std::min(joint, split);
            }
        }
        return detail::best_partition(h, m);
    };

    const double optimum = bound(0);
    if (!std::isfinite(optimum))
        throw InfeasibleError("Infeasible: no assignment gives every user a distinct (AP, wavelength) slot.");
    const double target = optimum - tie_tolerance(optimum);
    const double slack = 1e-10 * std::max(1.0, std::abs(optimum));

    std::vector<std::size_t> result;
    double found_obj = 0.0;
    auto recurse = [&](auto &&self, std::size_t depth) -> bool
    {
        ++st.nodes;
        if (depth == n)
        {
            ++st.leaves;
            const double obj = table.objective(choice);
            if (obj >= target)
            {
                found_obj = obj;
                result = choice;
                return true;
            }
            return false;
        }
        for (std::size_t c = 0; c < C; ++c)
        {
            const std::size_t s = table.slot_of(c);
            if (slot_used[s])
                continue;
            slot_used[s] = 1;
            choice[depth] = c;
            bool done = false;
            if (bound(depth + 1) < target - slack)
                ++st.pruned;
            else
                done = self(self, depth + 1);
            choice[depth] = none;
            slot_used[s] = 0;
            if (done)
                return true;
        }
        return false;
    };
    const bool ok = recurse(recurse, 0);
    if (stats)
        *stats = st;
    if (!ok)
        throw std::logic_error("Exact solver failed to reach its own optimum.");
    return detail::to_assignment(table, result, found_obj);
}

} // namespace owc

#endif
