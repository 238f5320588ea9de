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

#ifndef OWCSIM_WAVELENGTH_HPP
#define OWCSIM_WAVELENGTH_HPP

#include <array>
#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace owc
{

/// The four laser-diode colours of an RYGB light unit. Underlying values are the tie-break index.
enum class Wavelength : int
{
    Red = 0,
    Yellow = 1,
    Green = 2,
    Blue = 3
};

inline constexpr std::size_t num_wavelengths = 4;
inline constexpr std::array<Wavelength, num_wavelengths> all_wavelengths = {Wavelength::Red, Wavelength::Yellow,
                                                                           Wavelength::Green, Wavelength::Blue};

inline constexpr std::size_t index_of(Wavelength w) { return static_cast<std::size_t>(w); }

inline constexpr std::string_view name_of(Wavelength w)
{
    constexpr std::array<std::string_view, num_wavelengths> names = {"Red", "Yellow", "Green", "Blue"};
    return names[index_of(w)];
}

inline constexpr char letter_of(Wavelength w) { return name_of(w)[0]; }

/// Accepts "red", "Red", "R", ... (case-insensitive).
inline Wavelength parse_wavelength(std::string_view text)
{
    std::string lower;
    for (char c : text)
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (Wavelength w : all_wavelengths)
    {
        std::string name(name_of(w));
        for (char &c : name)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (lower == name || (lower.size() == 1 && lower[0] == name[0]))
            return w;
    }
    throw std::invalid_argument("Unknown wavelength '" + std::string(text) + "' (expected red, yellow, green or blue).");
}

/// Fixed-size table indexed by wavelength.
template <typename T>
struct PerWavelength
{
    std::array<T, num_wavelengths> values{};

    constexpr T &operator[](Wavelength w) { return values[index_of(w)]; }
    constexpr const T &operator[](Wavelength w) const { return values[index_of(w)]; }
    friend constexpr bool operator==(const PerWavelength &, const PerWavelength &) = default;
};

} // namespace owc

#endif
