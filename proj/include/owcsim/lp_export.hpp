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

#ifndef OWCSIM_LP_EXPORT_HPP
#define OWCSIM_LP_EXPORT_HPP

#include "owcsim/allocator.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace owc
{

/// CPLEX-LP text of the allocation MILP together with its size.
struct LpModel
{
    std::string text;
    std::size_t x_variables = 0;
    std::size_t z_variables = 0;
    std::size_t constraints = 0;

    std::size_t binaries() const { return x_variables + z_variables; }
};

// Coefficients are written in microamperes to keep them O(1).
inline constexpr double lp_current_scale = 1e6;

inline std::string lp_x_name(std::size_t u, std::size_t a, Wavelength w, std::size_t b)
{
    return "x_u" + std::to_string(u + 1) + "_a" + std::to_string(a + 1) + "_" + letter_of(w) + "_b" + std::to_string(b + 1);
}

inline std::string lp_z_name(std::size_t u, std::size_t b, std::size_t a, std::size_t v, std::size_t a2, Wavelength w)
{
    return "z_u" + std::to_string(u + 1) + "_b" + std::to_string(b + 1) + "_a" + std::to_string(a + 1) + "_v" +
           std::to_string(v + 1) + "_a" + std::to_string(a2 + 1) + "_" + letter_of(w);
}

namespace detail
{
inline std::string lp_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Writes "name: t1 + t2 ..." wrapping every few terms; terms are (coefficient, variable).
class LpRow
{
  public:
    explicit LpRow(std::ostringstream &os) : os_(os) {}

    void term(double coef, const std::string &var)
    {
        if (n_ > 0 && n_ % 6 == 0)
            os_ << "\n   ";
        if (coef < 0.0)
            os_ << " - ";
        else if (n_ > 0)
            os_ << " + ";
        else
            os_ << ' ';
        const double mag = coef < 0.0 ? -coef : coef;
        if (mag != 1.0)
            os_ << lp_number(mag) << ' ';
        os_ << var;
        ++n_;
    }
    std::size_t size() const { return n_; }

  private:
    std::ostringstream &os_;
    std::size_t n_ = 0;
};
} // namespace detail

/// Linearised allocation model.
///
/// x[u][a][w][b] = 1 when user u is served by AP a on wavelength w through branch b.
/// z[u,b,a,v,a',w] = x[u][a][w][b] AND (user v on AP a' at w), linearised with the three usual rows.
/// The objective maximises signal current minus co-wavelength interference current, a linear
/// stand-in for the sum-of-SINR objective that the exact solver optimises.
inline LpModel export_milp(const AllocationProblem &problem)
{
    problem.validate();
    const auto &P = problem;
    const auto current = [&](std::size_t u, std::size_t b, std::size_t a, Wavelength w)
    { return P.noise.responsivity[w] * P.tx_power_w[a][w] * P.gain(u, b, a); };

    struct ZVar
    {
        std::size_t u, b, a, v, a2;
        Wavelength w;
        double weight;
    };
    std::vector<ZVar> zs;
    for (std::size_t u = 0; u < P.users; ++u)
        for (std::size_t b = 0; b < P.branches; ++b)
            for (std::size_t a = 0; a < P.aps; ++a)
                for (Wavelength w : P.wavelengths)
                    for (std::size_t v = 0; v < P.users; ++v)
                    {
                        if (v == u)
                            continue;
                        for (std::size_t a2 = 0; a2 < P.aps; ++a2)
                        {
                            if (a2 == a)
                                continue;
                            const double i = current(u, b, a2, w);
                            if (i > 0.0)
                                zs.push_back({u, b, a, v, a2, w, i});
                        }
                    }

    LpModel model;
    std::ostringstream os;
    os << "\\ WDMA access point / wavelength / branch allocation\n"
       << "\\ users " << P.users << ", APs " << P.aps << ", wavelengths " << P.wavelengths.size() << ", branches "
       << P.branches << "\n"
       << "\\ Surrogate objective: signal photocurrent minus co-wavelength interference photocurrent (uA).\n"
       << "\\ It is linear and therefore not the sum-of-SINR objective (" << to_string(P.objective)
       << " mode) optimised by the exact solver.\n";

    os << "Maximize\n obj:";
    {
        detail::LpRow row(os);
        for (std::size_t u = 0; u < P.users; ++u)
            for (std::size_t a = 0; a < P.aps; ++a)
                for (Wavelength w : P.wavelengths)
                    for (std::size_t b = 0; b < P.branches; ++b)
                        row.term(lp_current_scale * current(u, b, a, w), lp_x_name(u, a, w, b));
        for (const ZVar &z : zs)
            row.term(-lp_current_scale * z.weight, lp_z_name(z.u, z.b, z.a, z.v, z.a2, z.w));
    }
    os << "\nSubject To\n";

    // Each user gets exactly one (AP, wavelength, branch).
    for (std::size_t u = 0; u < P.users; ++u)
    {
        os << " assign_u" << u + 1 << ":";
        detail::LpRow row(os);
        for (std::size_t a = 0; a < P.aps; ++a)
            for (Wavelength w : P.wavelengths)
                for (std::size_t b = 0; b < P.branches; ++b)
                    row.term(1.0, lp_x_name(u, a, w, b));
        os << " = 1\n";
        ++model.constraints;
    }
    // Each (AP, wavelength) serves at most one user.
    for (std::size_t a = 0; a < P.aps; ++a)
        for (Wavelength w : P.wavelengths)
        {
            os << " slot_a" << a + 1 << "_" << letter_of(w) << ":";
            detail::LpRow row(os);
            for (std::size_t u = 0; u < P.users; ++u)
                for (std::size_t b = 0; b < P.branches; ++b)
                    row.term(1.0, lp_x_name(u, a, w, b));
            os << " <= 1\n";
            ++model.constraints;
        }
    // Interference indicators.
    for (const ZVar &z : zs)
    {
        const std::string zn = lp_z_name(z.u, z.b, z.a, z.v, z.a2, z.w);
        const std::string x1 = lp_x_name(z.u, z.a, z.w, z.b);
        {
            os << " lo_" << zn << ":";
            detail::LpRow row(os);
            row.term(1.0, zn);
            row.term(-1.0, x1);
            for (std::size_t b2 = 0; b2 < P.branches; ++b2)
                row.term(-1.0, lp_x_name(z.v, z.a2, z.w, b2));
            os << " >= -1\n";
        }
        os << " u1_" << zn << ": " << zn << " - " << x1 << " <= 0\n";
        {
            os << " u2_" << zn << ":";
            detail::LpRow row(os);
            row.term(1.0, zn);
            for (std::size_t b2 = 0; b2 < P.branches; ++b2)
                row.term(-1.0, lp_x_name(z.v, z.a2, z.w, b2));
            os << " <= 0\n";
        }
        model.constraints += 3;
    }

    os << "Binary\n";
    for (std::size_t u = 0; u < P.users; ++u)
        for (std::size_t a = 0; a < P.aps; ++a)
            for (Wavelength w : P.wavelengths)
                for (std::size_t b = 0; b < P.branches; ++b)
                {
                    os << ' ' << lp_x_name(u, a, w, b) << '\n';
                    ++model.x_variables;
                }
    for (const ZVar &z : zs)
        os << ' ' << lp_z_name(z.u, z.b, z.a, z.v, z.a2, z.w) << '\n';
    model.z_variables = zs.size();
    os << "End\n";

    model.text = os.str();
    return model;
}

} // namespace owc

#endif
