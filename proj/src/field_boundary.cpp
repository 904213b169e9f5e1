// SPDX-License-Identifier: Apache-2.0
//
// xlmimo: near-field XL-MIMO channel modelling, analysis and detection
// Copyright (C) 2026 The xlmimo authors
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
#include "xlmimo/field_boundary.hpp"

#include "xlmimo/em_channel.hpp"
#include "xlmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace xlmimo
{
    namespace
    {
        // Numerator of the phase boundary: quadratic form in the corner offsets.
        double aperture_form(const ArrayConfig &c, double psi_x, double psi_y)
        {
            const double hx = c.half_extent_x() * c.delta_x();
            const double hy = c.half_extent_y() * c.delta_y();
            return hx * hx * (1.0 - psi_x * psi_x) + hy * hy * (1.0 - psi_y * psi_y) + 2.0 * hx * hy * std::abs(psi_x * psi_y);
        }

        // Lattice points on one axis: o + integer, |m| <= h, o = h mod 1.
        struct Axis
        {
            double half;
            double spacing;

            double clamp(double m) const { return std::clamp(m, -half, half); }
            double offset() const { return half - std::floor(half); }
            double floor_point(double x) const { return clamp(std::floor(x - offset()) + offset()); }
            double ceil_point(double x) const { return clamp(std::ceil(x - offset()) + offset()); }
        };

        void push_unique(std::vector<double> &v, double m)
        {
            if (std::find(v.begin(), v.end(), m) == v.end())
                v.push_back(m);
        }

        // Lattice points bracketing position x (metres) on the axis.
        void push_bracket(std::vector<double> &v, const Axis &a, double x)
        {
            push_unique(v, a.floor_point(x / a.spacing));
            push_unique(v, a.ceil_point(x / a.spacing));
        }

        double edge_away_from(const Axis &a, double u)
        {
            return u >= 0.0 ? -a.half : a.half;
        }

        struct Candidate
        {
            double m_x, m_y, power;
            std::size_t order;
        };

        std::size_t order_of(const ArrayConfig &c, double m_x, double m_y)
        {
            const auto ix = static_cast<std::size_t>(std::llround(m_x + c.half_extent_x()));
            const auto iy = static_cast<std::size_t>(std::llround(m_y + c.half_extent_y()));
            return iy * c.m_x() + ix;
        }

        template <typename Better>
        Candidate pick(const ArrayConfig &c, const UserLocation &u, const std::vector<double> &xs,
                       const std::vector<double> &ys, Better better)
        {
            Candidate best{0.0, 0.0, 0.0, 0};
            bool first = true;
            for (double my : ys)
                for (double mx : xs)
                {
                    const Candidate cand{mx, my, detail::element_power_raw(c, u.x(), u.y(), u.z(), mx, my), order_of(c, mx, my)};
                    if (first || better(cand.power, best.power) || (cand.power == best.power && cand.order < best.order))
                    {
                        best = cand;
                        first = false;
                    }
                }
            return best;
        }
    }

    const char *to_string(FieldRegion region)
    {
        switch (region)
        {
        case FieldRegion::near_both:
            return "near_both";
        case FieldRegion::near_phase_only:
            return "near_phase_only";
        case FieldRegion::near_power_only:
            return "near_power_only";
        case FieldRegion::far:
            return "far";
        }
        return "unknown";
    }

    double max_phase_error(const ArrayConfig &config, const UserLocation &u)
    {
        return std::numbers::pi / config.lambda() * aperture_form(config, u.psi_x(), u.psi_y()) / u.distance();
    }

    double phase_boundary_distance(const ArrayConfig &config, double psi_e, double psi_a)
    {
        if (!(psi_e >= 0.0 && psi_e <= std::numbers::pi / 2.0) || !std::isfinite(psi_a))
            throw DomainError("elevation must lie in [0, pi/2] and azimuth must be finite");
        const double s = std::sin(psi_e);
        return aperture_form(config, s * std::cos(psi_a), s * std::sin(psi_a)) / (config.lambda() / 8.0);
    }

    double fraunhofer_distance(const ArrayConfig &config, ApertureConvention convention)
    {
        double lx = config.length_x(), ly = config.length_y();
        if (convention == ApertureConvention::element_centers)
        {
            lx = 2.0 * config.half_extent_x() * config.delta_x();
            ly = 2.0 * config.half_extent_y() * config.delta_y();
        }
        return 2.0 * (lx * lx + ly * ly) / config.lambda();
    }

    double power_profile(double s, double v)
    {
        return s / std::pow(s + v, 2.5);
    }

    double power_profile_derivative(double s, double v)
    {
        return (v - 1.5 * s) / std::pow(s + v, 3.5);
    }

    ExtremalElements power_extremal_elements(const ArrayConfig &config, const UserLocation &u)
    {
        if (!(u.z() > 0.0))
            throw DomainError("extremal elements require u_z > 0");
        const Axis ax{config.half_extent_x(), config.delta_x()};
        const Axis ay{config.half_extent_y(), config.delta_y()};
        const double uz2 = u.z() * u.z();

        // Strongest: the y-offset only attenuates, so take the row nearest u_y. Along x
        // the profile peaks at s = 2v/3; outside [s_min, s_max] the peak is clamped.
        std::vector<double> max_y;
        push_bracket(max_y, ay, u.y());
        std::vector<double> max_x;
        for (double my : max_y)
        {
            const double dy = my * ay.spacing - u.y();
            const double peak = 2.0 * dy * dy / 3.0;
            const double near = ax.clamp(std::round((u.x() / ax.spacing) - ax.offset()) + ax.offset());
            const double dn = near * ax.spacing - u.x();
            const double far_edge = edge_away_from(ax, u.x());
            const double df = far_edge * ax.spacing - u.x();
            const double s_min = dn * dn + uz2;
            const double s_max = df * df + uz2;
            if (peak <= s_min)
                push_bracket(max_x, ax, u.x());
            else if (peak >= s_max)
            {
                push_unique(max_x, far_edge);
                push_unique(max_x, -far_edge);
            }
            else
            {
                const double w = std::sqrt(peak - uz2);
                push_bracket(max_x, ax, u.x() + w);
                push_bracket(max_x, ax, u.x() - w);
            }
        }
        const Candidate hi = pick(config, u, max_x, max_y, [](double a, double b) { return a > b; });

        // Weakest: the farthest row, and along x one of the endpoints of [s_min, s_max]
        // since the profile is unimodal in s.
        std::vector<double> min_y{edge_away_from(ay, u.y())};
        push_unique(min_y, -min_y.front());
        std::vector<double> min_x{-ax.half};
        push_unique(min_x, ax.half);
        push_bracket(min_x, ax, u.x());
        const Candidate lo = pick(config, u, min_x, min_y, [](double a, double b) { return a < b; });

        return {{hi.m_x, hi.m_y}, {lo.m_x, lo.m_y}, hi.power, lo.power};
    }

    double power_variation(const ArrayConfig &config, const UserLocation &u)
    {
        const auto e = power_extremal_elements(config, u);
        return e.min_power / e.max_power;
    }

    double power_boundary_distance(const ArrayConfig &config, double u_x, double u_y, double v_t)
    {
        if (!(v_t > 0.0 && v_t < 1.0))
            throw DomainError("power threshold must lie in (0, 1)");
        auto v_at = [&](double z) { return power_variation(config, UserLocation(u_x, u_y, z)); };

        double lo = 10.0 * std::max(config.a_x(), config.a_y());
        if (v_at(lo) >= v_t)
            return 0.0;
        double hi = 2.0 * lo;
        int expansions = 0;
        while (v_at(hi) <= v_t)
        {
            lo = hi;
            hi *= 2.0;
            if (++expansions > 200)
                throw SearchFailure("power boundary could not be bracketed");
        }
        for (int it = 0; it < 60; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            const double v = v_at(mid);
            if (std::abs(v - v_t) <= 1e-6)
                return mid;
            (v < v_t ? lo : hi) = mid;
        }
        const double mid = 0.5 * (lo + hi);
        if (std::abs(v_at(mid) - v_t) <= 1e-6)
            return mid;
        throw SearchFailure("power boundary bisection did not converge");
    }

    FieldRegion classify_field_region(const ArrayConfig &config, const UserLocation &u, double v_t)
    {
        if (!(v_t > 0.0 && v_t < 1.0))
            throw DomainError("power threshold must lie in (0, 1)");
        const bool near_phase = u.distance() < phase_boundary_distance(config, u.elevation(), u.azimuth());
        const bool near_power = power_variation(config, u) < v_t;
        if (near_phase && near_power)
            return FieldRegion::near_both;
        if (near_phase)
            return FieldRegion::near_phase_only;
        if (near_power)
            return FieldRegion::near_power_only;
        return FieldRegion::far;
    }
}
