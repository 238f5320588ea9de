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

#ifndef OWCSIM_ASSIGNMENT_HPP
#define OWCSIM_ASSIGNMENT_HPP

#include "owcsim/wavelength.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace owc
{

/// One user's resources. Indices are zero-based; files and printouts use 1-based ids.
struct LinkChoice
{
    std::size_t ap = 0;
    Wavelength wavelength = Wavelength::Red;
    std::size_t branch = 0;

    // Lexicographic (ap, wavelength, branch), the tie-break order of the solvers.
    friend auto operator<=>(const LinkChoice &a, const LinkChoice &b)
    {
        return std::tuple(a.ap, index_of(a.wavelength), a.branch) <=> std::tuple(b.ap, index_of(b.wavelength), b.branch);
    }
    friend bool operator==(const LinkChoice &, const LinkChoice &) = default;
};

inline std::string to_string(const LinkChoice &c)
{
    return "(AP " + std::to_string(c.ap + 1) + ", " + std::string(name_of(c.wavelength)) + ", branch " +
           std::to_string(c.branch + 1) + ")";
}

enum class ObjectiveMode
{
    SumLinear, // sum of linear SINRs
    SumDb      // sum of SINRs in dB
};

inline std::string to_string(ObjectiveMode m) { return m == ObjectiveMode::SumLinear ? "linear" : "db"; }

inline ObjectiveMode parse_objective(const std::string &s)
{
    if (s == "linear")
        return ObjectiveMode::SumLinear;
    if (s == "db")
        return ObjectiveMode::SumDb;
    throw std::invalid_argument("Unknown objective '" + s + "' (expected linear or db).");
}

// SINR floor used by the dB objective so a blocked link scores -300 dB instead of -inf.
inline constexpr double db_objective_floor = 1e-30;

inline double objective_term(double sinr_linear, ObjectiveMode mode)
{
    if (mode == ObjectiveMode::SumLinear)
        return sinr_linear;
    return 10.0 * std::log10(std::max(sinr_linear, db_objective_floor));
}

struct Assignment
{
    std::vector<std::optional<LinkChoice>> links; // one per user
    double objective_value = 0.0;
    ObjectiveMode objective = ObjectiveMode::SumLinear;

    const LinkChoice &at(std::size_t user) const
    {
        if (user >= links.size() || !links[user])
            throw std::invalid_argument("User " + std::to_string(user + 1) + " has no assigned link.");
        return *links[user];
    }
};

} // namespace owc

#endif
