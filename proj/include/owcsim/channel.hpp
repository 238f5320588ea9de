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

#ifndef OWCSIM_CHANNEL_HPP
#define OWCSIM_CHANNEL_HPP

#include "owcsim/geometry.hpp"
#include "owcsim/parallel.hpp"
#include "owcsim/receiver.hpp"
#include "owcsim/wavelength.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace owc
{

// ------------------------------------------------------------------------------------------------
// Transmitters
// ------------------------------------------------------------------------------------------------

/// A point emitter carrying a fraction (weight) of its light unit's power.
struct Emitter
{
    Vec3 position;
    Vec3 orientation{0.0, 0.0, -1.0};
    double lambertian_order = 1.0;
    double weight = 1.0;
};

/// Spatial arrangement of the laser diodes inside one light unit.
struct LdLayout
{
    enum class Kind
    {
        Colocated, // all LDs at the unit centre
        Grid       // rows x cols rectangular grid in the ceiling plane, centred on the unit
    };
    Kind kind = Kind::Colocated;
    int rows = 3;
    int cols = 4;
    double pitch_m = 0.05;

    friend bool operator==(const LdLayout &, const LdLayout &) = default;
};

/// Ceiling light unit (access point) with RYGB laser diodes.
struct AccessPoint
{
    int id = 1;
    Vec3 position;
    Vec3 orientation{0.0, 0.0, -1.0};
    double lambertian_order = 1.0;
    PerWavelength<double> tx_power_w{}; // whole-unit optical power per wavelength
    std::vector<Vec3> emitter_offsets{Vec3{}};

    std::vector<Emitter> emitters() const
    {
        std::vector<Emitter> out;
        out.reserve(emitter_offsets.size());
        const double w = 1.0 / double(emitter_offsets.size());
        for (const Vec3 &off : emitter_offsets)
            out.push_back({position + off, orientation, lambertian_order, w});
        return out;
    }
};

inline std::vector<Vec3> ld_offsets(const LdLayout &layout)
{
    if (layout.kind == LdLayout::Kind::Colocated)
        return {Vec3{}};
    if (layout.rows < 1 || layout.cols < 1 || !(layout.pitch_m >= 0.0))
        throw std::invalid_argument("LD grid layout needs rows, cols >= 1 and a non-negative pitch.");
    std::vector<Vec3> out;
    for (int r = 0; r < layout.rows; ++r)
        for (int c = 0; c < layout.cols; ++c)
            out.push_back({(double(c) - 0.5 * double(layout.cols - 1)) * layout.pitch_m,
                           (double(r) - 0.5 * double(layout.rows - 1)) * layout.pitch_m, 0.0});
    return out;
}

/// Unit power is the per-LD power times the LD count.
inline AccessPoint make_access_point(int id, const Vec3 &position, const PerWavelength<double> &ld_power_w,
                                     int lds_per_unit, const LdLayout &layout = {}, double lambertian_order = 1.0)
{
    if (lds_per_unit < 1)
        throw std::invalid_argument("A light unit needs at least one LD.");
    AccessPoint ap;
    ap.id = id;
    ap.position = position;
    ap.lambertian_order = lambertian_order;
    for (Wavelength w : all_wavelengths)
        ap.tx_power_w[w] = ld_power_w[w] * double(lds_per_unit);
    ap.emitter_offsets = ld_offsets(layout);
    return ap;
}

// ------------------------------------------------------------------------------------------------
// Impulse response
// ------------------------------------------------------------------------------------------------

/// Time-binned received power per unit transmitted power. Bin k covers [t0 + k w, t0 + (k+1) w).
class ImpulseResponse
{
  public:
    ImpulseResponse() = default;
    ImpulseResponse(double bin_width_s, double t0_s) : bin_width_(bin_width_s), t0_(t0_s)
    {
        if (!(bin_width_s > 0.0))
            throw std::invalid_argument("Impulse response bin width must be positive.");
    }

    double bin_width() const { return bin_width_; }
    double t0() const { return t0_; }
    const std::vector<double> &bins() const { return bins_; }

    void add(double delay_s, double gain)
    {
        const double offset = (delay_s - t0_) / bin_width_;
        // Paths are never shorter than the straight line; only rounding can put them before t0.
        if (offset < -1e-6)
            throw std::logic_error("Path arrives before the impulse response start time.");
        const std::size_t k = offset <= 0.0 ? 0 : static_cast<std::size_t>(offset);
        if (k >= bins_.size())
            bins_.resize(k + 1, 0.0);
        bins_[k] += gain;
    }

    void merge(const ImpulseResponse &other)
    {
        if (other.bin_width_ != bin_width_ || other.t0_ != t0_)
            throw std::invalid_argument("Cannot merge impulse responses with different time grids.");
        if (other.bins_.size() > bins_.size())
            bins_.resize(other.bins_.size(), 0.0);
        for (std::size_t k = 0; k < other.bins_.size(); ++k)
            bins_[k] += other.bins_[k];
    }

    /// Sum of bins in index order.
    double dc_gain() const
    {
        double s = 0.0;
        for (double b : bins_)
            s += b;
        return s;
    }

    friend bool operator==(const ImpulseResponse &, const ImpulseResponse &) = default;

  private:
    double bin_width_ = 1e-11;
    double t0_ = 0.0;
    std::vector<double> bins_;
};

/// CSV dump with columns time_s,gain_per_bin (bin start times; trailing zeros trimmed).
inline void write_impulse_response_csv(std::ostream &os, const ImpulseResponse &ir)
{
    os << "time_s,gain_per_bin\n";
    os.precision(17);
    const auto &bins = ir.bins();
    for (std::size_t k = 0; k < bins.size(); ++k)
        os << ir.t0() + double(k) * ir.bin_width() << ',' << bins[k] << '\n';
}

// ------------------------------------------------------------------------------------------------
// Single hops
// ------------------------------------------------------------------------------------------------

struct PathGain
{
    double gain = 0.0;
    double delay_s = 0.0;
};

namespace detail
{
struct Leg
{
    double gain = 0.0;
    double distance = 0.0;
};

// Emitter -> patch, including the patch reflectivity and the emitter's power weight.
inline Leg source_to_patch(const Emitter &e, const SurfacePatch &p)
{
    const Vec3 d = p.center - e.position;
    const double dist = norm(d);
    const Vec3 u = d * (1.0 / dist);
    const double g = lambertian_gain(e.lambertian_order, dist, dot(e.orientation, u), -dot(p.normal, u), p.area);
    return {p.reflectivity * e.weight * g, dist};
}

// Patch a re-emits (Lambertian, order of a) onto patch b, including b's reflectivity.
inline Leg patch_to_patch(const SurfacePatch &a, const SurfacePatch &b)
{
    const Vec3 d = b.center - a.center;
    const double dist = norm(d);
    const Vec3 u = d * (1.0 / dist);
    const double g = lambertian_gain(a.lambertian_order, dist, dot(a.normal, u), -dot(b.normal, u), b.area);
    return {b.reflectivity * g, dist};
}

// Patch -> detector with the FOV hard cutoff.
inline Leg patch_to_branch(const SurfacePatch &p, const ReceiverBranch &br, double cos_fov)
{
    const Vec3 d = br.position - p.center;
    const double dist = norm(d);
    const Vec3 u = d * (1.0 / dist);
    const double cos_incid = -dot(br.normal, u);
    if (cos_incid < cos_fov)
        return {0.0, dist};
    return {lambertian_gain(p.lambertian_order, dist, dot(p.normal, u), cos_incid, br.area_m2), dist};
}

inline Leg source_to_branch(const Emitter &e, const ReceiverBranch &br, double cos_fov)
{
    const Vec3 d = br.position - e.position;
    const double dist = norm(d);
    const Vec3 u = d * (1.0 / dist);
    const double cos_incid = -dot(br.normal, u);
    if (cos_incid < cos_fov)
        return {0.0, dist};
    return {e.weight * lambertian_gain(e.lambertian_order, dist, dot(e.orientation, u), cos_incid, br.area_m2), dist};
}

inline double first_arrival(const std::vector<Emitter> &emitters, const ReceiverBranch &br)
{
    double t = std::numeric_limits<double>::infinity();
    for (const Emitter &e : emitters)
        t = std::min(t, norm(br.position - e.position) / speed_of_light);
    return t;
}
} // namespace detail

/// Straight-line delay of the earliest possible arrival; every path's response starts here.
inline double response_start_time(const AccessPoint &ap, const ReceiverBranch &branch)
{
    return detail::first_arrival(ap.emitters(), branch);
}

// ------------------------------------------------------------------------------------------------
// Per-order contributions
// ------------------------------------------------------------------------------------------------

/// Direct path. With several LDs per unit the gain is summed and the delay is the earliest arrival.
inline PathGain los_contribution(const AccessPoint &ap, const ReceiverBranch &branch)
{
    const double cos_fov = branch.cos_fov();
    PathGain out{0.0, std::numeric_limits<double>::infinity()};
    for (const Emitter &e : ap.emitters())
    {
        const detail::Leg leg = detail::source_to_branch(e, branch, cos_fov);
        out.gain += leg.gain;
        out.delay_s = std::min(out.delay_s, leg.distance / speed_of_light);
    }
    return out;
}

inline ImpulseResponse los_response(const AccessPoint &ap, const ReceiverBranch &branch, double bin_width_s)
{
    const auto emitters = ap.emitters();
    ImpulseResponse ir(bin_width_s, detail::first_arrival(emitters, branch));
    const double cos_fov = branch.cos_fov();
    for (const Emitter &e : emitters)
    {
        const detail::Leg leg = detail::source_to_branch(e, branch, cos_fov);
        if (leg.gain > 0.0)
            ir.add(leg.distance / speed_of_light, leg.gain);
    }
    return ir;
}

/// Single-bounce paths over the given (fine) patch set.
inline ImpulseResponse first_order_contribution(const AccessPoint &ap, const ReceiverBranch &branch,
                                                std::span<const SurfacePatch> patches, double bin_width_s)
{
    const auto emitters = ap.emitters();
    ImpulseResponse ir(bin_width_s, detail::first_arrival(emitters, branch));
    const double cos_fov = branch.cos_fov();
    for (const SurfacePatch &p : patches)
    {
        const detail::Leg l2 = detail::patch_to_branch(p, branch, cos_fov);
        if (l2.gain == 0.0)
            continue;
        for (const Emitter &e : emitters)
        {
            const detail::Leg l1 = detail::source_to_patch(e, p);
            if (l1.gain == 0.0)
                continue;
            ir.add((l1.distance + l2.distance) / speed_of_light, l1.gain * l2.gain);
        }
    }
    return ir;
}

/// Double-bounce paths over ordered pairs of distinct (coarse) patches. Mutual visibility follows
/// from the cosine signs alone since the room is convex.
inline ImpulseResponse second_order_contribution(const AccessPoint &ap, const ReceiverBranch &branch,
                                                 std::span<const SurfacePatch> patches, double bin_width_s)
{
    const auto emitters = ap.emitters();
    ImpulseResponse ir(bin_width_s, detail::first_arrival(emitters, branch));
    const double cos_fov = branch.cos_fov();
    for (std::size_t j = 0; j < patches.size(); ++j)
    {
        const detail::Leg l3 = detail::patch_to_branch(patches[j], branch, cos_fov);
        if (l3.gain == 0.0)
            continue;
        for (std::size_t i = 0; i < patches.size(); ++i)
        {
            if (i == j)
                continue;
            const detail::Leg l12 = detail::patch_to_patch(patches[i], patches[j]);
            if (l12.gain == 0.0)
                continue;
            for (const Emitter &e : emitters)
            {
                const detail::Leg l1 = detail::source_to_patch(e, patches[i]);
                if (l1.gain == 0.0)
                    continue;
                ir.add(((l1.distance + l12.distance) + l3.distance) / speed_of_light, (l1.gain * l12.gain) * l3.gain);
            }
        }
    }
    return ir;
}

// ------------------------------------------------------------------------------------------------
// Full trace
// ------------------------------------------------------------------------------------------------

struct ReflectionOrders
{
    bool los = true;
    bool first = true;
    bool second = true;

    friend bool operator==(const ReflectionOrders &, const ReflectionOrders &) = default;
};

/// Parses a comma separated list of "los", "first", "second" or "all".
inline ReflectionOrders parse_orders(const std::string &text)
{
    ReflectionOrders o{false, false, false};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item == "los")
            o.los = true;
        else if (item == "first")
            o.first = true;
        else if (item == "second")
            o.second = true;
        else if (item == "all")
            o = {};
        else
            throw std::invalid_argument("Unknown reflection order '" + item + "' (expected los, first, second or all).");
    }
    return o;
}

inline std::string to_string(const ReflectionOrders &o)
{
    std::string s;
    auto append = [&](bool on, const char *name)
    {
        if (!on)
            return;
        if (!s.empty())
            s += ',';
        s += name;
    };
    append(o.los, "los");
    append(o.first, "first");
    append(o.second, "second");
    return s;
}

struct ChannelConfig
{
    double bin_width_s = 0.01e-9;
    ReflectionOrders orders;
    double fine_element_m = 0.05;   // first-order grid
    double coarse_element_m = 0.20; // second-order grid
    unsigned threads = 0;           // 0 = hardware concurrency
    bool keep_responses = true;

    friend bool operator==(const ChannelConfig &, const ChannelConfig &) = default;
};

/// Patch sets needed by the enabled reflection orders.
struct RoomSurfaces
{
    std::vector<SurfacePatch> fine;
    std::vector<SurfacePatch> coarse;

    static RoomSurfaces build(const Room &room, const ChannelConfig &config)
    {
        RoomSurfaces s;
        if (config.orders.first)
            s.fine = discretize(room, config.fine_element_m);
        if (config.orders.second)
            s.coarse = discretize(room, config.coarse_element_m);
        return s;
    }
};

/// Impulse response of one (AP, branch) path plus the DC gain split by order.
struct ChannelResponse
{
    ImpulseResponse response;
    double los_gain = 0.0;
    double first_gain = 0.0;
    double second_gain = 0.0;

    double dc_gain() const { return response.dc_gain(); }
};

/// Reference single-path trace built from the per-order operations.
inline ChannelResponse impulse_response(const AccessPoint &ap, const ReceiverBranch &branch, const RoomSurfaces &surfaces,
                                        const ChannelConfig &config)
{
    ChannelResponse out;
    out.response = ImpulseResponse(config.bin_width_s, response_start_time(ap, branch));
    if (config.orders.los)
    {
        const ImpulseResponse los = los_response(ap, branch, config.bin_width_s);
        out.los_gain = los.dc_gain();
        out.response.merge(los);
    }
    if (config.orders.first)
    {
        const ImpulseResponse first = first_order_contribution(ap, branch, surfaces.fine, config.bin_width_s);
        out.first_gain = first.dc_gain();
        out.response.merge(first);
    }
    if (config.orders.second)
    {
        const ImpulseResponse second = second_order_contribution(ap, branch, surfaces.coarse, config.bin_width_s);
        out.second_gain = second.dc_gain();
        out.response.merge(second);
    }
    return out;
}

/// DC gains indexed [user][branch][ap], optionally with the full responses.
struct GainTensor
{
    std::size_t users = 0;
    std::size_t branches = 0;
    std::size_t aps = 0;
    std::vector<double> dc;
    std::vector<double> los;
    std::vector<double> first;
    std::vector<double> second;
    std::vector<ImpulseResponse> responses; // empty unless kept

    GainTensor() = default;
    GainTensor(std::size_t n_users, std::size_t n_branches, std::size_t n_aps)
        : users(n_users), branches(n_branches), aps(n_aps), dc(n_users * n_branches * n_aps, 0.0),
          los(dc.size(), 0.0), first(dc.size(), 0.0), second(dc.size(), 0.0)
    {
    }

    std::size_t index(std::size_t u, std::size_t b, std::size_t a) const
    {
        if (u >= users || b >= branches || a >= aps)
            throw std::out_of_range("Gain tensor index out of range.");
        return (u * branches + b) * aps + a;
    }
    double dc_gain(std::size_t u, std::size_t b, std::size_t a) const { return dc[index(u, b, a)]; }
    void set_dc_gain(std::size_t u, std::size_t b, std::size_t a, double g) { dc[index(u, b, a)] = g; }
    bool has_responses() const { return !responses.empty(); }
    const ImpulseResponse &response(std::size_t u, std::size_t b, std::size_t a) const
    {
        if (responses.empty())
            throw std::logic_error("Gain tensor was built without impulse responses.");
        return responses[index(u, b, a)];
    }
};

/// CPU seconds spent per reflection order, summed over workers.
struct TraceTimings
{
    double los_s = 0.0;
    double first_s = 0.0;
    double second_s = 0.0;
};

namespace detail
{
using Clock = std::chrono::steady_clock;
inline double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// All (branch, AP) responses of one receiver. Accumulates every bin in the same order as the
// reference per-order operations above, so results match impulse_response() bit for bit.
inline std::vector<ChannelResponse> trace_receiver(const std::vector<AccessPoint> &aps, const ADR &adr,
                                                   const RoomSurfaces &surfaces, const ChannelConfig &config,
                                                   TraceTimings &timings)
{
    const std::size_t n_ap = aps.size(), n_br = adr.branches.size();
    std::vector<std::vector<Emitter>> emitters(n_ap);
    for (std::size_t a = 0; a < n_ap; ++a)
        emitters[a] = aps[a].emitters();

    std::array<double, adr_branches> cos_fov{};
    for (std::size_t b = 0; b < n_br; ++b)
        cos_fov[b] = adr.branches[b].cos_fov();

    // per order, [b * n_ap + a]
    auto fresh = [&]
    {
        std::vector<ImpulseResponse> v;
        v.reserve(n_br * n_ap);
        for (std::size_t b = 0; b < n_br; ++b)
            for (std::size_t a = 0; a < n_ap; ++a)
                v.emplace_back(config.bin_width_s, first_arrival(emitters[a], adr.branches[b]));
        return v;
    };
    std::vector<ImpulseResponse> r_los = fresh(), r_first = fresh(), r_second = fresh();

    auto t = Clock::now();
    if (config.orders.los)
    {
        for (std::size_t b = 0; b < n_br; ++b)
            for (std::size_t a = 0; a < n_ap; ++a)
                for (const Emitter &e : emitters[a])
                {
                    const Leg leg = source_to_branch(e, adr.branches[b], cos_fov[b]);
                    if (leg.gain > 0.0)
                        r_los[b * n_ap + a].add(leg.distance / speed_of_light, leg.gain);
                }
    }
    timings.los_s += seconds_since(t);

    t = Clock::now();
    if (config.orders.first)
    {
        std::array<Leg, adr_branches> l2{};
        for (const SurfacePatch &p : surfaces.fine)
        {
            bool any = false;
            for (std::size_t b = 0; b < n_br; ++b)
            {
                l2[b] = patch_to_branch(p, adr.branches[b], cos_fov[b]);
                any = any || l2[b].gain != 0.0;
            }
            if (!any)
                continue;
            for (std::size_t a = 0; a < n_ap; ++a)
                for (const Emitter &e : emitters[a])
                {
                    const Leg l1 = source_to_patch(e, p);
                    if (l1.gain == 0.0)
                        continue;
                    for (std::size_t b = 0; b < n_br; ++b)
                        if (l2[b].gain != 0.0)
                            r_first[b * n_ap + a].add((l1.distance + l2[b].distance) / speed_of_light,
                                                      l1.gain * l2[b].gain);
                }
        }
    }
    timings.first_s += seconds_since(t);

    t = Clock::now();
    if (config.orders.second)
    {
        const auto &patches = surfaces.coarse;
        const std::size_t n_p = patches.size();

        // First hop from every emitter, flattened [source][patch].
        struct Source
        {
            std::size_t ap;
            const Emitter *emitter;
        };
        std::vector<Source> sources;
        for (std::size_t a = 0; a < n_ap; ++a)
            for (const Emitter &e : emitters[a])
                sources.push_back({a, &e});
        std::vector<Leg> hop1(sources.size() * n_p);
        std::vector<char> lit(n_p, 0);
        for (std::size_t s = 0; s < sources.size(); ++s)
            for (std::size_t i = 0; i < n_p; ++i)
            {
                hop1[s * n_p + i] = source_to_patch(*sources[s].emitter, patches[i]);
                if (hop1[s * n_p + i].gain != 0.0)
                    lit[i] = 1;
            }

        std::array<Leg, adr_branches> l3{};
        for (std::size_t j = 0; j < n_p; ++j)
        {
            bool any = false;
            for (std::size_t b = 0; b < n_br; ++b)
            {
                l3[b] = patch_to_branch(patches[j], adr.branches[b], cos_fov[b]);
                any = any || l3[b].gain != 0.0;
            }
            if (!any)
                continue;
            for (std::size_t i = 0; i < n_p; ++i)
            {
                if (i == j || !lit[i])
                    continue;
                const Leg l12 = patch_to_patch(patches[i], patches[j]);
                if (l12.gain == 0.0)
                    continue;
                for (std::size_t s = 0; s < sources.size(); ++s)
                {
                    const Leg &l1 = hop1[s * n_p + i];
                    if (l1.gain == 0.0)
                        continue;
                    const double g12 = l1.gain * l12.gain;
                    const double d12 = l1.distance + l12.distance;
                    for (std::size_t b = 0; b < n_br; ++b)
                        if (l3[b].gain != 0.0)
                            r_second[b * n_ap + sources[s].ap].add((d12 + l3[b].distance) / speed_of_light,
                                                                   g12 * l3[b].gain);
                }
            }
        }
    }
    timings.second_s += seconds_since(t);

    std::vector<ChannelResponse> out(n_br * n_ap);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        ChannelResponse &cr = out[k];
        cr.response = ImpulseResponse(config.bin_width_s, r_los[k].t0());
        if (config.orders.los)
        {
            cr.los_gain = r_los[k].dc_gain();
            cr.response.merge(r_los[k]);
        }
        if (config.orders.first)
        {
            cr.first_gain = r_first[k].dc_gain();
            cr.response.merge(r_first[k]);
        }
        if (config.orders.second)
        {
            cr.second_gain = r_second[k].dc_gain();
            cr.response.merge(r_second[k]);
        }
    }
    return out;
}
} // namespace detail

/// Traces every (user, branch, AP) path. Work is split per receiver; each receiver's responses are
/// accumulated sequentially, so the result does not depend on the thread count.
inline GainTensor gain_tensor(const std::vector<AccessPoint> &aps, const std::vector<ADR> &receivers,
                              const RoomSurfaces &surfaces, const ChannelConfig &config, TraceTimings *timings = nullptr)
{
    if (config.orders.first && surfaces.fine.empty())
        throw std::invalid_argument("First-order tracing requested without a fine patch set.");
    if (config.orders.second && surfaces.coarse.empty())
        throw std::invalid_argument("Second-order tracing requested without a coarse patch set.");
    if (aps.empty())
        throw std::invalid_argument("At least one access point is required.");

    const std::size_t n_u = receivers.size(), n_br = adr_branches, n_ap = aps.size();
    GainTensor tensor(n_u, n_br, n_ap);
    if (config.keep_responses)
        tensor.responses.resize(n_u * n_br * n_ap);

    std::vector<TraceTimings> per_user(n_u);
    parallel_for(n_u, config.threads,
                 [&](std::size_t u)
                 {
                     auto paths = detail::trace_receiver(aps, receivers[u], surfaces, config, per_user[u]);
                     for (std::size_t b = 0; b < n_br; ++b)
                         for (std::size_t a = 0; a < n_ap; ++a)
                         {
                             ChannelResponse &cr = paths[b * n_ap + a];
                             const std::size_t k = tensor.index(u, b, a);
                             tensor.dc[k] = cr.dc_gain();
                             tensor.los[k] = cr.los_gain;
                             tensor.first[k] = cr.first_gain;
                             tensor.second[k] = cr.second_gain;
                             if (config.keep_responses)
                                 tensor.responses[k] = std::move(cr.response);
                         }
                 });

    if (timings)
        for (const TraceTimings &t : per_user)
        {
            timings->los_s += t.los_s;
            timings->first_s += t.first_s;
            timings->second_s += t.second_s;
        }
    return tensor;
}

} // namespace owc

#endif
