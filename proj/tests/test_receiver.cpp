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

#include "owcsim/receiver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace owc;

namespace
{
void expect_azimuths(int system, std::array<double, 4> expected)
{
    const ADR adr = build_adr({1.0, 2.0, 1.0}, system);
    EXPECT_EQ(adr.system_id, system);
    for (std::size_t k = 0; k < 4; ++k)
    {
        EXPECT_DOUBLE_EQ(adr.branches[k].azimuth_deg, expected[k]) << "system " << system << " branch " << k + 1;
        EXPECT_EQ(adr.branches[k].elevation_deg, 60.0);
        EXPECT_EQ(adr.branches[k].fov_deg, 25.0);
        EXPECT_EQ(adr.branches[k].area_m2, 20e-6);
        EXPECT_EQ(adr.branches[k].position, (Vec3{1.0, 2.0, 1.0}));
    }
}
} // namespace

TEST(Adr, SystemOneAzimuths) { expect_azimuths(1, {0, 90, 180, 270}); }
TEST(Adr, SystemTwoAzimuths) { expect_azimuths(2, {30, 120, 210, 300}); }
TEST(Adr, SystemThreeAzimuths) { expect_azimuths(3, {60, 150, 240, 330}); }

TEST(Adr, InvalidSystemRejected)
{
    EXPECT_THROW(build_adr({}, 0), std::invalid_argument);
    EXPECT_THROW(build_adr({}, 4), std::invalid_argument);
}

TEST(Adr, BranchesNinetyDegreesApartProperty)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> off(0.0, 360.0);
    for (int t = 0; t < 200; ++t)
    {
        const ADR adr = build_adr_with_offset({2, 4, 1}, off(rng));
        for (std::size_t k = 0; k < 4; ++k)
        {
            const Vec3 a = adr.branches[k].normal, b = adr.branches[(k + 1) % 4].normal;
            // Horizontal components are perpendicular; the vertical component is shared.
            EXPECT_NEAR(a.x * b.x + a.y * b.y, 0.0, 1e-12);
            EXPECT_NEAR(a.z, b.z, 1e-12);
            EXPECT_NEAR(a.x * b.y - a.y * b.x, 0.25, 1e-12); // cos^2(60) * sin(+90)
        }
    }
}

TEST(Adr, NextSystemRotatesByThirtyDegrees)
{
    for (int s = 1; s <= 2; ++s)
    {
        const ADR a = build_adr({1, 1, 1}, s), b = build_adr({1, 1, 1}, s + 1);
        for (std::size_t k = 0; k < 4; ++k)
        {
            const Vec3 r = rotate_about_z(a.branches[k].normal, 30.0);
            EXPECT_NEAR(r.x, b.branches[k].normal.x, 1e-12);
            EXPECT_NEAR(r.y, b.branches[k].normal.y, 1e-12);
            EXPECT_NEAR(r.z, b.branches[k].normal.z, 1e-12);
        }
    }
}

TEST(Noise, PreampFloor)
{
    const NoiseModel m;
    // (4.47e-12)^2 * 4e9
    EXPECT_NEAR(noise_variance(0.0, Wavelength::Red, m), 7.99236e-14, 1e-26);
}

TEST(Noise, ShotTermAtOneMicrowattRed)
{
    const NoiseModel m;
    const double shot = noise_variance(1e-6, Wavelength::Red, m) - noise_variance(0.0, Wavelength::Red, m);
    // 2 * 1.602176634e-19 * 0.4 * 1e-6 * 4e9
    EXPECT_NEAR(shot, 5.1269652288e-16, 1e-26);
}

TEST(Noise, DoublingBandwidthDoublesBothTerms)
{
    NoiseModel m, m2;
    m2.bandwidth_hz = 2.0 * m.bandwidth_hz;
    for (double p : {0.0, 1e-7, 3e-5})
        EXPECT_NEAR(noise_variance(p, Wavelength::Green, m2), 2.0 * noise_variance(p, Wavelength::Green, m),
                    1e-15 * noise_variance(p, Wavelength::Green, m2));
}

TEST(Noise, ResponsivitiesPerWavelength)
{
    const NoiseModel m;
    EXPECT_EQ(m.responsivity[Wavelength::Red], 0.4);
    EXPECT_EQ(m.responsivity[Wavelength::Yellow], 0.35);
    EXPECT_EQ(m.responsivity[Wavelength::Green], 0.3);
    EXPECT_EQ(m.responsivity[Wavelength::Blue], 0.2);
}

TEST(Noise, MonotoneAndPositiveProperty)
{
    const NoiseModel m;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> p(0.0, 1e-3);
    for (int k = 0; k < 1000; ++k)
    {
        double a = p(rng), b = p(rng);
        if (a > b)
            std::swap(a, b);
        for (Wavelength w : all_wavelengths)
        {
            EXPECT_GT(noise_variance(a, w, m), 0.0);
            EXPECT_LE(noise_variance(a, w, m), noise_variance(b, w, m));
        }
    }
}

TEST(Noise, NegativePowerRejected)
{
    EXPECT_THROW(noise_variance(-1e-9, Wavelength::Blue, NoiseModel{}), std::invalid_argument);
}
