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

#ifndef OWCSIM_SCENARIOS_HPP
#define OWCSIM_SCENARIOS_HPP

#include "owcsim/allocator.hpp"
#include "owcsim/assignment.hpp"
#include "owcsim/channel.hpp"
#include "owcsim/geometry.hpp"
#include "owcsim/receiver.hpp"

#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace owc
{

/// Validation failure of a scenario; the message starts with the offending field path.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct TransmitterSpec
{
    PerWavelength<double> ld_power_w{{0.8, 0.5, 0.3, 0.3}};
    int lds_per_unit = 12;
    double lambertian_order = 1.0;
    LdLayout layout;

    friend bool operator==(const TransmitterSpec &, const TransmitterSpec &) = default;
};

/// Everything needed to trace and allocate one room configuration.
struct ScenarioSpec
{
    std::string name;
    int scenario_id = 0; // 1 or 2 for the built-in user layouts, 0 otherwise
    int system_id = 0;   // 1..3 for the built-in ADR orientations, 0 for a custom offset
    double azimuth_offset_deg = 0.0;

    Room room;
    std::vector<Vec3> ap_positions;
    TransmitterSpec transmitter;
    ReceiverOptics optics;
    NoiseModel noise;
    std::vector<Vec3> users;
    std::vector<LinkChoice> reference; // published allocation, empty when unknown
    ChannelConfig channel;
    double data_rate_bps = 5.7e9;
    double sinr_threshold_db = 15.6;

    std::vector<AccessPoint> access_points() const
    {
        std::vector<AccessPoint> aps;
        for (std::size_t i = 0; i < ap_positions.size(); ++i)
            aps.push_back(make_access_point(int(i + 1), ap_positions[i], transmitter.ld_power_w, transmitter.lds_per_unit,
                                            transmitter.layout, transmitter.lambertian_order));
        return aps;
    }

    std::vector<ADR> receivers() const
    {
        std::vector<ADR> out;
        for (const Vec3 &u : users)
        {
            ADR adr = build_adr_with_offset(u, azimuth_offset_deg, optics);
            adr.system_id = system_id;
            out.push_back(adr);
        }
        return out;
    }

    void validate() const;

    friend bool operator==(const ScenarioSpec &, const ScenarioSpec &) = default;
};

namespace detail
{
[[noreturn]] inline void config_fail(const std::string &path, const std::string &what)
{
    throw ConfigError(path + ": " + what);
}

inline void check_range(const std::string &path, double v, double lo, double hi, bool open_lo, bool open_hi)
{
    const bool ok = (open_lo ? v > lo : v >= lo) && (open_hi ? v < hi : v <= hi);
    if (!ok)
    {
        std::ostringstream msg;
        msg << v << " is outside " << (open_lo ? '(' : '[') << lo << ", " << hi << (open_hi ? ')' : ']');
        config_fail(path, msg.str());
    }
}

inline void check_point(const std::string &path, const Vec3 &p, const Room &room, bool strict_z)
{
    check_range(path + ".x_m", p.x, 0.0, room.width_x, false, false);
    check_range(path + ".y_m", p.y, 0.0, room.length_y, false, false);
    if (strict_z)
        check_range(path + ".z_m", p.z, 0.0, room.height_z, true, true);
    else
        check_range(path + ".z_m", p.z, 0.0, room.height_z, true, false);
}
} // namespace detail

inline void ScenarioSpec::validate() const
{
    using detail::check_range;
    const double inf = std::numeric_limits<double>::infinity();
    check_range("room.width_x_m", room.width_x, 0.0, inf, true, true);
    check_range("room.length_y_m", room.length_y, 0.0, inf, true, true);
    check_range("room.height_z_m", room.height_z, 0.0, inf, true, true);
    check_range("room.reflectivity_walls_ceiling", room.reflectivity_walls_ceiling, 0.0, 1.0, false, false);
    check_range("room.reflectivity_floor", room.reflectivity_floor, 0.0, 1.0, false, false);
    check_range("room.comm_floor_z_m", room.comm_floor_z, 0.0, room.height_z, true, true);

    if (ap_positions.empty())
        detail::config_fail("access_points", "at least one access point is required");
    for (std::size_t i = 0; i < ap_positions.size(); ++i)
        detail::check_point("access_points[" + std::to_string(i) + "]", ap_positions[i], room, false);

    for (Wavelength w : all_wavelengths)
        check_range("transmitter.ld_power_w." + std::string(name_of(w)), transmitter.ld_power_w[w], 0.0, inf, false, true);
    if (transmitter.lds_per_unit < 1)
        detail::config_fail("transmitter.lds_per_unit", "must be >= 1");
    check_range("transmitter.lambertian_order", transmitter.lambertian_order, 0.0, inf, true, true);
    if (transmitter.layout.kind == LdLayout::Kind::Grid)
    {
        if (transmitter.layout.rows < 1 || transmitter.layout.cols < 1)
            detail::config_fail("transmitter.ld_layout", "grid needs rows >= 1 and cols >= 1");
        check_range("transmitter.ld_layout.pitch_m", transmitter.layout.pitch_m, 0.0, inf, false, true);
    }

    check_range("receiver.elevation_deg", optics.elevation_deg, 0.0, 90.0, false, false);
    check_range("receiver.fov_deg", optics.fov_deg, 0.0, 90.0, true, false);
    check_range("receiver.pd_area_m2", optics.area_m2, 0.0, inf, true, true);
    check_range("receiver.noise_current_density_a_per_sqrt_hz", noise.preamp_current_density, 0.0, inf, true, true);
    check_range("receiver.bandwidth_hz", noise.bandwidth_hz, 0.0, inf, true, true);
    for (Wavelength w : all_wavelengths)
        check_range("receiver.responsivity_a_per_w." + std::string(name_of(w)), noise.responsivity[w], 0.0, inf, true, true);
    if (system_id < 0 || system_id > 3)
        detail::config_fail("receiver.system_id", "must be 1, 2, 3 (or 0 for a custom azimuth offset)");

    if (users.empty())
        detail::config_fail("users", "at least one user is required");
    for (std::size_t i = 0; i < users.size(); ++i)
        detail::check_point("users[" + std::to_string(i) + "]", users[i], room, true);

    if (!reference.empty())
    {
        if (reference.size() != users.size())
            detail::config_fail("reference_assignment", "must have one row per user");
        for (std::size_t i = 0; i < reference.size(); ++i)
        {
            const std::string path = "reference_assignment[" + std::to_string(i) + "]";
            if (reference[i].ap >= ap_positions.size())
                detail::config_fail(path + ".ap", "refers to a missing access point");
            if (reference[i].branch >= adr_branches)
                detail::config_fail(path + ".branch", "must be 1..4");
        }
    }

    check_range("simulation.bin_width_s", channel.bin_width_s, 0.0, inf, true, true);
    check_range("simulation.fine_element_m", channel.fine_element_m, 0.0, inf, true, true);
    check_range("simulation.coarse_element_m", channel.coarse_element_m, 0.0, inf, true, true);
    auto check_grid = [&](double edge)
    {
        try
        {
            (void)detail::tile_count(room.width_x, edge, "width_x");
            (void)detail::tile_count(room.length_y, edge, "length_y");
            (void)detail::tile_count(room.height_z, edge, "height_z");
        }
        catch (const std::invalid_argument &e)
        {
            detail::config_fail("simulation", e.what());
        }
    };
    if (channel.orders.first)
        check_grid(channel.fine_element_m);
    if (channel.orders.second)
        check_grid(channel.coarse_element_m);
    check_range("data_rate_bps", data_rate_bps, 0.0, inf, true, true);
}

/// Room, light units, optics and noise of the reference system, with no users.
inline ScenarioSpec default_spec()
{
    ScenarioSpec s;
    s.name = "custom";
    for (double x : {1.0, 3.0})
        for (double y : {1.0, 3.0, 5.0, 7.0})
            s.ap_positions.push_back({x, y, 3.0});
    return s;
}

namespace detail
{
struct ReferenceRow
{
    Vec3 position;
    std::array<LinkChoice, 3> systems; // 1-based values converted below
};

inline LinkChoice row(int ap, int branch, Wavelength w)
{
    return {std::size_t(ap - 1), w, std::size_t(branch - 1)};
}

// Published allocations, one row per user, columns System 1..3.
inline const std::array<ReferenceRow, 8> &scenario1_rows()
{
    constexpr auto R = Wavelength::Red, Y = Wavelength::Yellow;
    static const std::array<ReferenceRow, 8> rows = {{
        {{0.5, 6.5, 1.0}, {row(4, 1, R), row(4, 1, R), row(3, 4, R)}},
        {{0.5, 7.5, 1.0}, {row(4, 3, Y), row(4, 4, Y), row(4, 4, Y)}},
        {{1.5, 6.5, 1.0}, {row(3, 3, R), row(3, 3, R), row(8, 1, R)}},
        {{1.5, 7.5, 1.0}, {row(8, 4, R), row(8, 4, R), row(4, 3, R)}},
        {{2.5, 0.5, 1.0}, {row(1, 2, R), row(1, 2, R), row(5, 1, R)}},
        {{2.5, 1.5, 1.0}, {row(6, 1, R), row(6, 1, R), row(1, 3, R)}},
        {{3.5, 0.5, 1.0}, {row(5, 2, Y), row(5, 2, Y), row(5, 2, Y)}},
        {{3.5, 1.5, 1.0}, {row(5, 3, R), row(5, 3, R), row(6, 2, R)}},
    }};
    return rows;
}

inline const std::array<ReferenceRow, 8> &scenario2_rows()
{
    constexpr auto R = Wavelength::Red, Y = Wavelength::Yellow;
    static const std::array<ReferenceRow, 8> rows = {{
        {{0.5, 1.5, 1.0}, {row(1, 4, R), row(1, 4, R), row(1, 4, Y)}},
        {{0.5, 5.5, 1.0}, {row(3, 3, Y), row(3, 4, Y), row(3, 4, Y)}},
        {{0.5, 6.5, 1.0}, {row(4, 1, R), row(4, 1, R), row(4, 1, Y)}},
        {{1.5, 3.5, 1.0}, {row(2, 3, R), row(2, 3, R), row(2, 3, R)}},
        {{2.5, 1.5, 1.0}, {row(5, 4, R), row(5, 4, R), row(5, 4, R)}},
        {{2.5, 6.5, 1.0}, {row(8, 1, R), row(8, 1, R), row(8, 1, R)}},
        {{3.5, 3.5, 1.0}, {row(6, 3, Y), row(6, 3, Y), row(6, 3, Y)}},
        {{3.5, 5.5, 1.0}, {row(7, 4, R), row(7, 3, R), row(7, 3, R)}},
    }};
    return rows;
}
} // namespace detail

/// Built-in configuration: user layout 1 (four users around each of two APs) or 2 (users spread
/// over the room), ADR orientation system 1..3, with the published allocation as reference.
inline ScenarioSpec builtin(int scenario, int system)
{
    if (scenario != 1 && scenario != 2)
        throw std::invalid_argument("Scenario must be 1 or 2, got " + std::to_string(scenario) + ".");
    const double offset = system_azimuth_offset(system);

    ScenarioSpec s = default_spec();
    s.name = "scenario" + std::to_string(scenario) + "_system" + std::to_string(system);
    s.scenario_id = scenario;
    s.system_id = system;
    s.azimuth_offset_deg = offset;
    const auto &rows = scenario == 1 ? detail::scenario1_rows() : detail::scenario2_rows();
    for (const auto &r : rows)
    {
        s.users.push_back(r.position);
        s.reference.push_back(r.systems[std::size_t(system - 1)]);
    }
    return s;
}

/// Three users, three APs, Red and Blue only, a single detector per user. User u sees AP u strongly
/// and the other APs moderately, except that users 2 and 3 barely see each other's AP.
inline AllocationProblem three_user_problem()
{
    AllocationProblem p;
    p.users = 3;
    p.branches = 1;
    p.aps = 3;
    p.gains = {
        1.2e-6, 3.0e-7, 3.0e-7, // user 1
        3.0e-7, 1.2e-6, 1.0e-8, // user 2
        3.0e-7, 1.0e-8, 1.2e-6, // user 3
    };
    const TransmitterSpec tx;
    for (int a = 0; a < 3; ++a)
    {
        PerWavelength<double> unit;
        for (Wavelength w : all_wavelengths)
            unit[w] = tx.ld_power_w[w] * tx.lds_per_unit;
        p.tx_power_w.push_back(unit);
    }
    p.wavelengths = {Wavelength::Red, Wavelength::Blue};
    return p;
}

} // namespace owc

#endif
