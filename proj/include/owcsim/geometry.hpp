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

#ifndef OWCSIM_GEOMETRY_HPP
#define OWCSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace owc
{

inline constexpr double pi = std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0; // m/s

inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

inline constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3 &v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3 &v)
{
    const double n = norm(v);
    if (n == 0.0)
        throw std::invalid_argument("Cannot normalize a zero-length vector.");
    return v * (1.0 / n);
}

// Rotates v about the vertical (z) axis by angle_deg, counterclockwise seen from above.
inline Vec3 rotate_about_z(const Vec3 &v, double angle_deg)
{
    const double c = std::cos(deg_to_rad(angle_deg)), s = std::sin(deg_to_rad(angle_deg));
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

/// Empty box room with the origin at one floor corner.
struct Room
{
    double width_x = 4.0;  // m
    double length_y = 8.0; // m
    double height_z = 3.0; // m
    double reflectivity_walls_ceiling = 0.8;
    double reflectivity_floor = 0.3;
    double comm_floor_z = 1.0; // m, receiver plane

    Vec3 center() const { return {width_x / 2.0, length_y / 2.0, height_z / 2.0}; }
    double surface_area() const { return 2.0 * (width_x * length_y + width_x * height_z + length_y * height_z); }

    bool contains(const Vec3 &p) const
    {
        return p.x >= 0.0 && p.x <= width_x && p.y >= 0.0 && p.y <= length_y && p.z >= 0.0 && p.z <= height_z;
    }

    void validate() const
    {
        if (!(width_x > 0.0) || !(length_y > 0.0) || !(height_z > 0.0))
            throw std::invalid_argument("Room dimensions must be positive.");
        if (!(reflectivity_walls_ceiling >= 0.0 && reflectivity_walls_ceiling <= 1.0))
            throw std::invalid_argument("Wall/ceiling reflectivity must be in [0, 1].");
        if (!(reflectivity_floor >= 0.0 && reflectivity_floor <= 1.0))
            throw std::invalid_argument("Floor reflectivity must be in [0, 1].");
        if (!(comm_floor_z > 0.0 && comm_floor_z < height_z))
            throw std::invalid_argument("Communication floor height must lie strictly between floor and ceiling.");
    }

    friend bool operator==(const Room &, const Room &) = default;
};

enum class Surface
{
    Floor,
    Ceiling,
    WallX0,
    WallXMax,
    WallY0,
    WallYMax
};

/// Discretized room surface element acting as a secondary Lambertian emitter.
struct SurfacePatch
{
    Vec3 center;
    Vec3 normal; // unit, pointing into the room
    double area = 0.0;
    double reflectivity = 0.0;
    double lambertian_order = 1.0;
    Surface surface = Surface::Floor;
};

namespace detail
{
// Number of tiles of size edge along dim; throws if edge does not divide dim.
inline std::size_t tile_count(double dim, double edge, const char *dim_name)
{
    const double ratio = dim / edge;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
    {
        std::ostringstream msg;
        msg << "Element edge " << edge << " m does not divide room dimension " << dim_name << " = " << dim << " m.";
        throw std::invalid_argument(msg.str());
    }
    return static_cast<std::size_t>(n);
}
} // namespace detail

/// Tiles all six room surfaces with square elements of the given edge length.
///
/// Patch positions are cell centers. Order: floor, ceiling, wall x=0, wall x=W, wall y=0, wall y=L;
/// row-major inside each surface. The order is part of the contract because reductions over
/// patches are accumulated in this order.
inline std::vector<SurfacePatch> discretize(const Room &room, double element_edge)
{
    room.validate();
    if (!(element_edge > 0.0))
        throw std::invalid_argument("Element edge must be positive.");

    const std::size_t nx = detail::tile_count(room.width_x, element_edge, "width_x");
    const std::size_t ny = detail::tile_count(room.length_y, element_edge, "length_y");
    const std::size_t nz = detail::tile_count(room.height_z, element_edge, "height_z");

    const double dx = room.width_x / double(nx), dy = room.length_y / double(ny), dz = room.height_z / double(nz);
    const double rho_wall = room.reflectivity_walls_ceiling, rho_floor = room.reflectivity_floor;

    std::vector<SurfacePatch> patches;
    patches.reserve(2 * (nx * ny + nx * nz + ny * nz));

    auto horizontal = [&](double z, Vec3 normal, double rho, Surface s)
    {
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t j = 0; j < ny; ++j)
                patches.push_back({{(double(i) + 0.5) * dx, (double(j) + 0.5) * dy, z}, normal, dx * dy, rho, 1.0, s});
    };
    horizontal(0.0, {0.0, 0.0, 1.0}, rho_floor, Surface::Floor);
    horizontal(room.height_z, {0.0, 0.0, -1.0}, rho_wall, Surface::Ceiling);

    auto wall_x = [&](double x, Vec3 normal, Surface s)
    {
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t k = 0; k < nz; ++k)
                patches.push_back({{x, (double(j) + 0.5) * dy, (double(k) + 0.5) * dz}, normal, dy * dz, rho_wall, 1.0, s});
    };
    wall_x(0.0, {1.0, 0.0, 0.0}, Surface::WallX0);
    wall_x(room.width_x, {-1.0, 0.0, 0.0}, Surface::WallXMax);

    auto wall_y = [&](double y, Vec3 normal, Surface s)
    {
        for (std::size_t i = 0; i < nx; ++i)
            for (std::size_t k = 0; k < nz; ++k)
                patches.push_back({{(double(i) + 0.5) * dx, y, (double(k) + 0.5) * dz}, normal, dx * dz, rho_wall, 1.0, s});
    };
    wall_y(0.0, {0.0, 1.0, 0.0}, Surface::WallY0);
    wall_y(room.length_y, {0.0, -1.0, 0.0}, Surface::WallYMax);

    return patches;
}

/// Unit pointing vector for a detector. Elevation is measured up from the horizontal plane
/// (90 deg = zenith), azimuth counterclockwise from +x seen from above.
inline Vec3 az_el_to_normal(double azimuth_deg, double elevation_deg)
{
    if (!(azimuth_deg >= 0.0 && azimuth_deg < 360.0))
        throw std::invalid_argument("Azimuth must be in [0, 360) degrees.");
    if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0))
        throw std::invalid_argument("Elevation must be in [0, 90] degrees.");

    const double az = deg_to_rad(azimuth_deg), el = deg_to_rad(elevation_deg);
    return normalized({std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)});
}

/// Single-hop Lambertian power transfer: (n+1)/(2 pi d^2) cos^n(emit) cos(incid) A_rx.
/// Back-hemisphere cosines (<= 0) give zero.
inline double lambertian_gain(double order, double distance, double cos_emit, double cos_incid, double area_rx)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("Lambertian hop requires distinct points (distance > 0).");
    if (cos_emit <= 0.0 || cos_incid <= 0.0)
        return 0.0;
    const double emit = order == 1.0 ? cos_emit : std::pow(cos_emit, order);
    return (order + 1.0) / (2.0 * pi * distance * distance) * emit * cos_incid * area_rx;
}

/// Lambertian order for a given half-power semi-angle: n = -ln 2 / ln cos(phi_half).
inline double lambertian_order_from_semi_angle(double semi_angle_deg)
{
    return -std::log(2.0) / std::log(std::cos(deg_to_rad(semi_angle_deg)));
}

} // namespace owc

#endif
