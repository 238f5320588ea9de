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

#ifndef OWCSIM_RECEIVER_HPP
#define OWCSIM_RECEIVER_HPP

#include "owcsim/geometry.hpp"
#include "owcsim/wavelength.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace owc
{

inline constexpr std::size_t adr_branches = 4;

/// One photodetector of an angle diversity receiver.
struct ReceiverBranch
{
    Vec3 position;
    Vec3 normal; // unit
    double azimuth_deg = 0.0;
    double elevation_deg = 60.0;
    double fov_deg = 25.0;
    double area_m2 = 20e-6;

    double cos_fov() const { return std::cos(deg_to_rad(fov_deg)); }
};

/// Detector parameters shared by every branch.
struct ReceiverOptics
{
    double elevation_deg = 60.0;
    double fov_deg = 25.0;
    double area_m2 = 20e-6;

    friend bool operator==(const ReceiverOptics &, const ReceiverOptics &) = default;
};

/// Four-branch angle diversity receiver. The detectors are co-located at the user position.
struct ADR
{
    Vec3 position;
    std::array<ReceiverBranch, adr_branches> branches;
    int system_id = 0; // 1..3 for the built-in orientation systems, 0 for a custom offset
    double azimuth_offset_deg = 0.0;
};

inline double wrap_degrees(double deg)
{
    double r = std::fmod(deg, 360.0);
    if (r < 0.0)
        r += 360.0;
    if (r >= 360.0)
        r = 0.0;
    return r;
}

/// Receiver with branch azimuths {0, 90, 180, 270} + offset.
inline ADR build_adr_with_offset(const Vec3 &user_position, double azimuth_offset_deg, const ReceiverOptics &optics = {})
{
    if (!(optics.fov_deg > 0.0 && optics.fov_deg <= 90.0))
        throw std::invalid_argument("Detector FOV must be in (0, 90] degrees.");
    if (!(optics.area_m2 > 0.0))
        throw std::invalid_argument("Detector area must be positive.");

    ADR adr;
    adr.position = user_position;
    adr.azimuth_offset_deg = azimuth_offset_deg;
    for (std::size_t k = 0; k < adr_branches; ++k)
    {
        ReceiverBranch &b = adr.branches[k];
        b.position = user_position;
        b.azimuth_deg = wrap_degrees(90.0 * double(k) + azimuth_offset_deg);
        b.elevation_deg = optics.elevation_deg;
        b.normal = az_el_to_normal(b.azimuth_deg, b.elevation_deg);
        b.fov_deg = optics.fov_deg;
        b.area_m2 = optics.area_m2;
    }
    return adr;
}

/// Azimuth offset of orientation system 1, 2 or 3 (0, 30, 60 degrees).
inline double system_azimuth_offset(int system_id)
{
    if (system_id < 1 || system_id > 3)
        throw std::invalid_argument("Receiver orientation system must be 1, 2 or 3, got " + std::to_string(system_id) + ".");
    return 30.0 * double(system_id - 1);
}

inline ADR build_adr(const Vec3 &user_position, int system_id, const ReceiverOptics &optics = {})
{
    ADR adr = build_adr_with_offset(user_position, system_azimuth_offset(system_id), optics);
    adr.system_id = system_id;
    return adr;
}

/// Receiver front-end noise: white preamplifier current plus shot noise of all received light.
struct NoiseModel
{
    double preamp_current_density = 4.47e-12; // A/sqrt(Hz)
    double bandwidth_hz = 4e9;
    PerWavelength<double> responsivity{{0.4, 0.35, 0.3, 0.2}}; // A/W
    double electron_charge = 1.602176634e-19;                    // C

    double preamp_variance() const { return preamp_current_density * preamp_current_density * bandwidth_hz; }

    void validate() const
    {
        if (!(preamp_current_density > 0.0) || !(bandwidth_hz > 0.0) || !(electron_charge > 0.0))
            throw std::invalid_argument("Noise model parameters must be positive.");
        for (double r : responsivity.values)
            if (!(r > 0.0))
                throw std::invalid_argument("Responsivities must be positive.");
    }

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

/// sigma^2 = density^2 B + 2 q R_w P_total B, in A^2.
inline double noise_variance(double total_received_power_w, Wavelength w, const NoiseModel &model)
{
    if (!(total_received_power_w >= 0.0))
        throw std::invalid_argument("Received optical power must be non-negative.");
    const double shot = 2.0 * model.electron_charge * model.responsivity[w] * total_received_power_w * model.bandwidth_hz;
    return model.preamp_variance() + shot;
}

} // namespace owc

#endif
