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

#ifndef OWCSIM_METRICS_HPP
#define OWCSIM_METRICS_HPP

#include "owcsim/assignment.hpp"
#include "owcsim/channel.hpp"
#include "owcsim/receiver.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace owc
{

inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

/// Photocurrents and noise behind one user's SINR.
struct SinrBreakdown
{
    double signal_current_a = 0.0;
    double signal_power_w = 0.0; // received optical power of the desired link
    std::vector<double> interference_current_a; // per AP, zero where no co-wavelength user transmits
    std::vector<double> interference_power_w;
    double total_power_w = 0.0; // all light at the user's wavelength on the user's branch
    double noise_variance_a2 = 0.0;
    double sinr_linear = 0.0;
};

/// Electrical SINR of one user: S^2 / (sigma^2 + sum_k I_k^2).
///
/// Interference comes from every other user on the same wavelength served by a different AP.
/// Shot noise is driven by the light of that wavelength from all APs, modulated or not.
inline SinrBreakdown sinr(std::size_t user, const Assignment &assignment, const GainTensor &tensor,
                          const std::vector<AccessPoint> &aps, const NoiseModel &noise)
{
    if (aps.size() != tensor.aps)
        throw std::invalid_argument("AP list does not match the gain tensor.");
    const LinkChoice &own = assignment.at(user);
    const Wavelength w = own.wavelength;
    const double resp = noise.responsivity[w];

    SinrBreakdown out;
    out.signal_power_w = aps[own.ap].tx_power_w[w] * tensor.dc_gain(user, own.branch, own.ap);
    out.signal_current_a = resp * out.signal_power_w;
    out.interference_current_a.assign(tensor.aps, 0.0);
    out.interference_power_w.assign(tensor.aps, 0.0);

    double interference = 0.0;
    for (std::size_t k = 0; k < assignment.links.size(); ++k)
    {
        if (k == user)
            continue;
        const LinkChoice &other = assignment.at(k);
        if (other.wavelength != w || other.ap == own.ap)
            continue;
        const double p = aps[other.ap].tx_power_w[w] * tensor.dc_gain(user, own.branch, other.ap);
        out.interference_power_w[other.ap] += p;
        out.interference_current_a[other.ap] += resp * p;
        interference += (resp * p) * (resp * p);
    }

    for (std::size_t a = 0; a < tensor.aps; ++a)
        out.total_power_w += aps[a].tx_power_w[w] * tensor.dc_gain(user, own.branch, a);
    out.noise_variance_a2 = noise_variance(out.total_power_w, w, noise);
    out.sinr_linear = out.signal_current_a * out.signal_current_a / (out.noise_variance_a2 + interference);
    return out;
}

/// OOK bit error rate Q(sqrt(SINR)).
inline double ber_ook(double sinr_linear)
{
    if (!(sinr_linear >= 0.0))
        throw std::invalid_argument("SINR must be non-negative.");
    return 0.5 * std::erfc(std::sqrt(sinr_linear) / std::sqrt(2.0));
}

struct Bandwidth
{
    double hz = 0.0;
    bool lower_bound = false; // no 3-dB crossing below the Nyquist limit of the binning
};

namespace detail
{
inline double magnitude_at(const ImpulseResponse &ir, double f_hz)
{
    const auto &bins = ir.bins();
    const double theta = -2.0 * pi * f_hz * ir.bin_width();
    // Recompute the phasor exactly every block to keep the rotation recurrence from drifting.
    constexpr std::size_t block = 256;
    std::complex<double> acc{0.0, 0.0};
    const std::complex<double> step = std::polar(1.0, theta);
    std::complex<double> phasor{1.0, 0.0};
    for (std::size_t k = 0; k < bins.size(); ++k)
    {
        if (k % block == 0)
            phasor = std::polar(1.0, theta * double(k));
        if (bins[k] != 0.0)
            acc += bins[k] * phasor;
        phasor *= step;
    }
    return std::abs(acc);
}
} // namespace detail

/// Optical 3-dB bandwidth: lowest f with |H(f)| <= |H(0)|/sqrt(2).
///
/// |H| is scanned on a grid of resolution_hz up to the Nyquist frequency of the bins, and the
/// first crossing is refined by bisection on the continuous transform.
inline Bandwidth channel_bandwidth(const ImpulseResponse &ir, double resolution_hz = 10e6)
{
    if (!(resolution_hz > 0.0))
        throw std::invalid_argument("Frequency resolution must be positive.");
    const double h0 = ir.dc_gain();
    if (!(h0 > 0.0))
        throw std::invalid_argument("Channel bandwidth needs a response with non-zero DC gain.");

    const double target = h0 / std::sqrt(2.0);
    const double nyquist = 0.5 / ir.bin_width();
    const auto steps = static_cast<std::size_t>(std::floor(nyquist / resolution_hz));

    for (std::size_t m = 1; m <= steps; ++m)
    {
        const double f = double(m) * resolution_hz;
        if (detail::magnitude_at(ir, f) > target)
            continue;
        double lo = f - resolution_hz, hi = f;
        for (int it = 0; it < 60 && hi - lo > 1e-6 * resolution_hz; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (detail::magnitude_at(ir, mid) > target ? lo : hi) = mid;
        }
        return {hi, false};
    }
    return {nyquist, true};
}

/// Per-user line of the SINR / bandwidth report.
struct UserReport
{
    std::size_t user = 0;
    LinkChoice link;
    double sinr_linear = 0.0;
    double sinr_db = 0.0;
    double ber = 0.0;
    Bandwidth bandwidth;
    double signal_power_w = 0.0;
    std::vector<double> interference_power_w;
    double noise_variance_a2 = 0.0;
};

/// One entry per user. Bandwidth is taken from the response of the user's assigned (AP, branch)
/// path and left at zero when the tensor carries no responses.
inline std::vector<UserReport> sinr_report(const Assignment &assignment, const GainTensor &tensor,
                                           const std::vector<AccessPoint> &aps, const NoiseModel &noise,
                                           double resolution_hz = 10e6)
{
    std::vector<UserReport> out;
    out.reserve(assignment.links.size());
    for (std::size_t u = 0; u < assignment.links.size(); ++u)
    {
        const SinrBreakdown s = sinr(u, assignment, tensor, aps, noise);
        UserReport r;
        r.user = u;
        r.link = assignment.at(u);
        r.sinr_linear = s.sinr_linear;
        r.sinr_db = s.sinr_linear > 0.0 ? to_db(s.sinr_linear) : -std::numeric_limits<double>::infinity();
        r.ber = ber_ook(s.sinr_linear);
        r.signal_power_w = s.signal_power_w;
        r.interference_power_w = s.interference_power_w;
        r.noise_variance_a2 = s.noise_variance_a2;
        if (tensor.has_responses())
        {
            const ImpulseResponse &ir = tensor.response(u, r.link.branch, r.link.ap);
            if (ir.dc_gain() > 0.0)
                r.bandwidth = channel_bandwidth(ir, resolution_hz);
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace owc

#endif
