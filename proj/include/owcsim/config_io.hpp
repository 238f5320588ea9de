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

#ifndef OWCSIM_CONFIG_IO_HPP
#define OWCSIM_CONFIG_IO_HPP

#include "owcsim/scenarios.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace owc
{

using json = nlohmann::json;

inline constexpr int config_schema_version = 1;

namespace detail
{
inline void reject_unknown(const json &obj, const std::string &path, std::initializer_list<const char *> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it)
    {
        bool known = false;
        for (const char *k : allowed)
            known = known || it.key() == k;
        if (!known)
            config_fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
}

inline const json &object_at(const json &parent, const char *key, const std::string &path)
{
    const json &v = parent.at(key);
    if (!v.is_object())
        config_fail(path, "expected an object");
    return v;
}

inline double number_or(const json &obj, const char *key, const std::string &path, double fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_number())
        config_fail(path + "." + key, "expected a number");
    return v.get<double>();
}

inline int integer_or(const json &obj, const char *key, const std::string &path, int fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json &v = obj.at(key);
    if (!v.is_number_integer())
        config_fail(path + "." + key, "expected an integer");
    return v.get<int>();
}

inline PerWavelength<double> per_wavelength_or(const json &obj, const char *key, const std::string &path,
                                               PerWavelength<double> fallback)
{
    if (!obj.contains(key))
        return fallback;
    const std::string p = path + "." + key;
    const json &v = obj.at(key);
    if (!v.is_object())
        config_fail(p, "expected an object keyed by red/yellow/green/blue");
    reject_unknown(v, p, {"red", "yellow", "green", "blue"});
    PerWavelength<double> out = fallback;
    for (Wavelength w : all_wavelengths)
    {
        std::string name(name_of(w));
        name[0] = char(std::tolower(name[0]));
        out[w] = number_or(v, name.c_str(), p, fallback[w]);
    }
    return out;
}

inline json per_wavelength_json(const PerWavelength<double> &v)
{
    return {{"red", v[Wavelength::Red]}, {"yellow", v[Wavelength::Yellow]}, {"green", v[Wavelength::Green]},
            {"blue", v[Wavelength::Blue]}};
}

inline std::vector<Vec3> points_from(const json &arr, const std::string &path, double default_z, bool z_required)
{
    if (!arr.is_array())
        config_fail(path, "expected an array of {x_m, y_m, z_m} objects");
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        const std::string p = path + "[" + std::to_string(i) + "]";
        const json &e = arr[i];
        if (!e.is_object())
            config_fail(p, "expected an object");
        reject_unknown(e, p, {"x_m", "y_m", "z_m"});
        if (!e.contains("x_m") || !e.contains("y_m"))
            config_fail(p, "x_m and y_m are required");
        if (z_required && !e.contains("z_m"))
            config_fail(p, "z_m is required");
        out.push_back({number_or(e, "x_m", p, 0.0), number_or(e, "y_m", p, 0.0), number_or(e, "z_m", p, default_z)});
    }
    return out;
}

inline json points_json(const std::vector<Vec3> &pts)
{
    json arr = json::array();
    for (const Vec3 &p : pts)
        arr.push_back({{"x_m", p.x}, {"y_m", p.y}, {"z_m", p.z}});
    return arr;
}
} // namespace detail

inline json link_json(const LinkChoice &c)
{
    std::string w(name_of(c.wavelength));
    w[0] = char(std::tolower(w[0]));
    return {{"ap", c.ap + 1}, {"branch", c.branch + 1}, {"wavelength", w}};
}

inline LinkChoice link_from_json(const json &j, const std::string &path)
{
    if (!j.is_object())
        detail::config_fail(path, "expected an object {ap, branch, wavelength}");
    detail::reject_unknown(j, path, {"ap", "branch", "wavelength"});
    if (!j.contains("ap") || !j.contains("branch") || !j.contains("wavelength"))
        detail::config_fail(path, "ap, branch and wavelength are required");
    const int ap = detail::integer_or(j, "ap", path, 0), br = detail::integer_or(j, "branch", path, 0);
    if (ap < 1)
        detail::config_fail(path + ".ap", "must be >= 1");
    if (br < 1)
        detail::config_fail(path + ".branch", "must be >= 1");
    if (!j.at("wavelength").is_string())
        detail::config_fail(path + ".wavelength", "expected a string");
    try
    {
        return {std::size_t(ap - 1), parse_wavelength(j.at("wavelength").get<std::string>()), std::size_t(br - 1)};
    }
    catch (const std::invalid_argument &e)
    {
        detail::config_fail(path + ".wavelength", e.what());
    }
}

/// Canonical JSON form of a scenario. Every field is written, so the output reloads to an equal spec.
inline json to_json(const ScenarioSpec &s)
{
    json j;
    j["schema_version"] = config_schema_version;
    j["name"] = s.name;
    j["scenario_id"] = s.scenario_id;
    j["room"] = {{"width_x_m", s.room.width_x},
                 {"length_y_m", s.room.length_y},
                 {"height_z_m", s.room.height_z},
                 {"reflectivity_walls_ceiling", s.room.reflectivity_walls_ceiling},
                 {"reflectivity_floor", s.room.reflectivity_floor},
                 {"comm_floor_z_m", s.room.comm_floor_z}};
    j["access_points"] = detail::points_json(s.ap_positions);

    json layout = {{"kind", s.transmitter.layout.kind == LdLayout::Kind::Grid ? "grid" : "colocated"}};
    if (s.transmitter.layout.kind == LdLayout::Kind::Grid)
    {
        layout["rows"] = s.transmitter.layout.rows;
        layout["cols"] = s.transmitter.layout.cols;
        layout["pitch_m"] = s.transmitter.layout.pitch_m;
    }
    j["transmitter"] = {{"lds_per_unit", s.transmitter.lds_per_unit},
                        {"ld_power_w", detail::per_wavelength_json(s.transmitter.ld_power_w)},
                        {"lambertian_order", s.transmitter.lambertian_order},
                        {"ld_layout", layout}};
    j["receiver"] = {{"system_id", s.system_id},
                     {"azimuth_offset_deg", s.azimuth_offset_deg},
                     {"elevation_deg", s.optics.elevation_deg},
                     {"fov_deg", s.optics.fov_deg},
                     {"pd_area_m2", s.optics.area_m2},
                     {"responsivity_a_per_w", detail::per_wavelength_json(s.noise.responsivity)},
                     {"noise_current_density_a_per_sqrt_hz", s.noise.preamp_current_density},
                     {"bandwidth_hz", s.noise.bandwidth_hz},
                     {"electron_charge_c", s.noise.electron_charge}};
    j["users"] = detail::points_json(s.users);
    json ref = json::array();
    for (const LinkChoice &c : s.reference)
        ref.push_back(link_json(c));
    j["reference_assignment"] = ref;
    json orders = json::array();
    if (s.channel.orders.los)
        orders.push_back("los");
    if (s.channel.orders.first)
        orders.push_back("first");
    if (s.channel.orders.second)
        orders.push_back("second");
    j["simulation"] = {{"bin_width_s", s.channel.bin_width_s},
                       {"fine_element_m", s.channel.fine_element_m},
                       {"coarse_element_m", s.channel.coarse_element_m},
                       {"orders", orders}};
    j["evaluation"] = {{"data_rate_bps", s.data_rate_bps}, {"sinr_threshold_db", s.sinr_threshold_db}};
    return j;
}

/// Parses and validates a scenario document. Missing sections fall back to the reference system
/// defaults; only the user list is mandatory.
inline ScenarioSpec scenario_from_json(const json &j)
{
    using namespace detail;
    if (!j.is_object())
        config_fail("$", "expected a JSON object");
    reject_unknown(j, "", {"schema_version", "name", "scenario_id", "room", "access_points", "transmitter", "receiver",
                           "users", "reference_assignment", "simulation", "evaluation"});
    const int version = integer_or(j, "schema_version", "$", config_schema_version);
    if (version != config_schema_version)
        config_fail("schema_version", "unsupported version " + std::to_string(version));

    ScenarioSpec s = default_spec();
    if (j.contains("name"))
    {
        if (!j.at("name").is_string())
            config_fail("name", "expected a string");
        s.name = j.at("name").get<std::string>();
    }
    s.scenario_id = integer_or(j, "scenario_id", "$", 0);

    if (j.contains("room"))
    {
        const json &r = object_at(j, "room", "room");
        reject_unknown(r, "room", {"width_x_m", "length_y_m", "height_z_m", "reflectivity_walls_ceiling",
                                   "reflectivity_floor", "comm_floor_z_m"});
        s.room.width_x = number_or(r, "width_x_m", "room", s.room.width_x);
        s.room.length_y = number_or(r, "length_y_m", "room", s.room.length_y);
        s.room.height_z = number_or(r, "height_z_m", "room", s.room.height_z);
        s.room.reflectivity_walls_ceiling =
            number_or(r, "reflectivity_walls_ceiling", "room", s.room.reflectivity_walls_ceiling);
        s.room.reflectivity_floor = number_or(r, "reflectivity_floor", "room", s.room.reflectivity_floor);
        s.room.comm_floor_z = number_or(r, "comm_floor_z_m", "room", s.room.comm_floor_z);
    }

    if (j.contains("access_points"))
        s.ap_positions = points_from(j.at("access_points"), "access_points", s.room.height_z, false);

    if (j.contains("transmitter"))
    {
        const json &t = object_at(j, "transmitter", "transmitter");
        reject_unknown(t, "transmitter", {"lds_per_unit", "ld_power_w", "lambertian_order", "ld_layout"});
        s.transmitter.lds_per_unit = integer_or(t, "lds_per_unit", "transmitter", s.transmitter.lds_per_unit);
        s.transmitter.ld_power_w = per_wavelength_or(t, "ld_power_w", "transmitter", s.transmitter.ld_power_w);
        s.transmitter.lambertian_order = number_or(t, "lambertian_order", "transmitter", s.transmitter.lambertian_order);
        if (t.contains("ld_layout"))
        {
            const json &l = object_at(t, "ld_layout", "transmitter.ld_layout");
            reject_unknown(l, "transmitter.ld_layout", {"kind", "rows", "cols", "pitch_m"});
            const std::string kind = l.value("kind", std::string("colocated"));
            if (kind == "colocated")
                s.transmitter.layout.kind = LdLayout::Kind::Colocated;
            else if (kind == "grid")
                s.transmitter.layout.kind = LdLayout::Kind::Grid;
            else
                config_fail("transmitter.ld_layout.kind", "expected colocated or grid");
            s.transmitter.layout.rows = integer_or(l, "rows", "transmitter.ld_layout", s.transmitter.layout.rows);
            s.transmitter.layout.cols = integer_or(l, "cols", "transmitter.ld_layout", s.transmitter.layout.cols);
            s.transmitter.layout.pitch_m = number_or(l, "pitch_m", "transmitter.ld_layout", s.transmitter.layout.pitch_m);
        }
    }

    if (j.contains("receiver"))
    {
        const json &r = object_at(j, "receiver", "receiver");
        reject_unknown(r, "receiver", {"system_id", "azimuth_offset_deg", "elevation_deg", "fov_deg", "pd_area_m2",
                                       "responsivity_a_per_w", "noise_current_density_a_per_sqrt_hz", "bandwidth_hz",
                                       "electron_charge_c"});
        s.system_id = integer_or(r, "system_id", "receiver", 0);
        if (s.system_id < 0 || s.system_id > 3)
            config_fail("receiver.system_id", "must be 1, 2, 3 (or 0 for a custom azimuth offset)");
        const double implied = s.system_id > 0 ? system_azimuth_offset(s.system_id) : 0.0;
        s.azimuth_offset_deg = number_or(r, "azimuth_offset_deg", "receiver", implied);
        if (s.system_id > 0 && std::abs(s.azimuth_offset_deg - implied) > 1e-12)
            config_fail("receiver.azimuth_offset_deg", "contradicts system_id " + std::to_string(s.system_id));
        s.optics.elevation_deg = number_or(r, "elevation_deg", "receiver", s.optics.elevation_deg);
        s.optics.fov_deg = number_or(r, "fov_deg", "receiver", s.optics.fov_deg);
        s.optics.area_m2 = number_or(r, "pd_area_m2", "receiver", s.optics.area_m2);
        s.noise.responsivity = per_wavelength_or(r, "responsivity_a_per_w", "receiver", s.noise.responsivity);
        s.noise.preamp_current_density =
            number_or(r, "noise_current_density_a_per_sqrt_hz", "receiver", s.noise.preamp_current_density);
        s.noise.bandwidth_hz = number_or(r, "bandwidth_hz", "receiver", s.noise.bandwidth_hz);
        s.noise.electron_charge = number_or(r, "electron_charge_c", "receiver", s.noise.electron_charge);
    }

    if (!j.contains("users"))
        config_fail("users", "required field is missing");
    s.users = points_from(j.at("users"), "users", s.room.comm_floor_z, false);

    if (j.contains("reference_assignment"))
    {
        const json &ref = j.at("reference_assignment");
        if (!ref.is_array())
            config_fail("reference_assignment", "expected an array");
        for (std::size_t i = 0; i < ref.size(); ++i)
            s.reference.push_back(link_from_json(ref[i], "reference_assignment[" + std::to_string(i) + "]"));
    }

    if (j.contains("simulation"))
    {
        const json &m = object_at(j, "simulation", "simulation");
        reject_unknown(m, "simulation", {"bin_width_s", "fine_element_m", "coarse_element_m", "orders"});
        s.channel.bin_width_s = number_or(m, "bin_width_s", "simulation", s.channel.bin_width_s);
        s.channel.fine_element_m = number_or(m, "fine_element_m", "simulation", s.channel.fine_element_m);
        s.channel.coarse_element_m = number_or(m, "coarse_element_m", "simulation", s.channel.coarse_element_m);
        if (m.contains("orders"))
        {
            const json &o = m.at("orders");
            if (!o.is_array() || o.empty())
                config_fail("simulation.orders", "expected a non-empty array of los/first/second");
            std::string joined;
            for (const json &e : o)
            {
                if (!e.is_string())
                    config_fail("simulation.orders", "expected strings");
                joined += (joined.empty() ? "" : ",") + e.get<std::string>();
            }
            try
            {
                s.channel.orders = parse_orders(joined);
            }
            catch (const std::invalid_argument &e)
            {
                config_fail("simulation.orders", e.what());
            }
        }
    }

    if (j.contains("evaluation"))
    {
        const json &e = object_at(j, "evaluation", "evaluation");
        reject_unknown(e, "evaluation", {"data_rate_bps", "sinr_threshold_db"});
        s.data_rate_bps = number_or(e, "data_rate_bps", "evaluation", s.data_rate_bps);
        s.sinr_threshold_db = number_or(e, "sinr_threshold_db", "evaluation", s.sinr_threshold_db);
    }

    s.validate();
    return s;
}

inline ScenarioSpec load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open configuration file");
    json j;
    try
    {
        j = json::parse(in);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(path + ": invalid JSON: " + e.what());
    }
    return scenario_from_json(j);
}

inline void save_config(const std::string &path, const ScenarioSpec &s)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("Cannot write " + path);
    out << to_json(s).dump(2) << '\n';
}

/// 64-bit FNV-1a of the canonical JSON text; identifies a configuration in run manifests.
inline std::string config_hash(const ScenarioSpec &s)
{
    const std::string text = to_json(s).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

} // namespace owc

#endif
