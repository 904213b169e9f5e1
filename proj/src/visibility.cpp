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
#include "xlmimo/visibility.hpp"

#include "xlmimo/errors.hpp"
#include "xlmimo/snr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace xlmimo
{
    SubArrayGrid::SubArrayGrid(const ArrayConfig &config, std::size_t s_x, std::size_t s_y)
        : config_(config), s_x_(s_x), s_y_(s_y)
    {
        if (s_x == 0 || s_y == 0)
            throw DomainError("sub-array counts must be positive");
        if (config.m_x() % s_x != 0 || config.m_y() % s_y != 0)
            throw DomainError("sub-array counts must divide the antenna counts");
    }

    double subarray_power(const SubArrayGrid &grid, const UserLocation &u, double rho, std::size_t s_x, std::size_t s_y)
    {
        if (s_x >= grid.s_x() || s_y >= grid.s_y())
            throw DomainError("sub-array index out of range");
        if (!(std::isfinite(rho) && rho > 0.0))
            throw DomainError("rho must be positive and finite");
        if (u.z() == 0.0)
            return 0.0;
        const auto &c = grid.config();
        const double mx = static_cast<double>(c.m_x()), my = static_cast<double>(c.m_y());
        const double bx = static_cast<double>(grid.block_x()), by = static_cast<double>(grid.block_y());
        const double x1 = (-0.5 * mx + static_cast<double>(s_x) * bx) * c.delta_x() - u.x();
        const double x2 = x1 + bx * c.delta_x();
        const double y1 = (-0.5 * my + static_cast<double>(s_y) * by) * c.delta_y() - u.y();
        const double y2 = y1 + by * c.delta_y();
        const double uz = u.z();
        const double sum = aux_f(y2, x2, uz) - aux_f(y2, x1, uz) - aux_f(y1, x2, uz) + aux_f(y1, x1, uz);
        return rho * c.occupation_ratio() / (6.0 * std::numbers::pi) * sum;
    }

    std::vector<double> subarray_powers(const SubArrayGrid &grid, const UserLocation &u, double rho)
    {
        std::vector<double> p(grid.count());
        for (std::size_t sy = 0; sy < grid.s_y(); ++sy)
            for (std::size_t sx = 0; sx < grid.s_x(); ++sx)
                p[sy * grid.s_x() + sx] = subarray_power(grid, u, rho, sx, sy);
        return p;
    }

    VisibilityRegion detect_vr(const SubArrayGrid &grid, const UserLocation &u, double rho, double varpi, std::size_t user)
    {
        if (!(varpi >= 0.0 && varpi <= 1.0))
            throw DomainError("varpi must lie in [0, 1]");
        if (u.z() == 0.0)
            throw DegenerateUser("user with u_z = 0 receives no power");

        const std::vector<double> p = subarray_powers(grid, u, rho);
        std::vector<std::size_t> order(p.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

        VisibilityRegion vr;
        vr.user = user;
        for (std::size_t s : order)
            vr.target_power += p[s];
        if (!(vr.target_power > 0.0))
            throw DegenerateUser("user receives no power");

        std::size_t n = 0;
        while (vr.captured_power <= varpi * vr.target_power && n < order.size())
        {
            vr.captured_power += p[order[n]];
            vr.members.push_back(order[n]);
            ++n;
        }
        std::sort(vr.members.begin(), vr.members.end());
        return vr;
    }

    std::vector<std::size_t> subarray_antenna_indices(const SubArrayGrid &grid, std::size_t flat_id)
    {
        if (flat_id >= grid.count())
            throw DomainError("sub-array id out of range");
        const std::size_t sx = flat_id % grid.s_x(), sy = flat_id / grid.s_x();
        const std::size_t mx = grid.config().m_x();
        std::vector<std::size_t> idx;
        idx.reserve(grid.antennas_per_subarray());
        for (std::size_t iy = sy * grid.block_y(); iy < (sy + 1) * grid.block_y(); ++iy)
            for (std::size_t ix = sx * grid.block_x(); ix < (sx + 1) * grid.block_x(); ++ix)
                idx.push_back(iy * mx + ix);
        return idx;
    }

    std::vector<std::size_t> vr_antenna_indices(const SubArrayGrid &grid, const VisibilityRegion &vr)
    {
        std::vector<std::size_t> idx;
        idx.reserve(vr.members.size() * grid.antennas_per_subarray());
        for (std::size_t s : vr.members)
        {
            const auto block = subarray_antenna_indices(grid, s);
            idx.insert(idx.end(), block.begin(), block.end());
        }
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
        return idx;
    }

    double occupancy_ratio(const std::vector<VisibilityRegion> &vrs, std::size_t s)
    {
        if (vrs.empty())
            throw DomainError("occupancy ratio needs at least one visibility region");
        if (s == 0)
            throw DomainError("sub-array count must be positive");
        double total = 0.0;
        for (const auto &vr : vrs)
            total += static_cast<double>(vr.members.size()) / static_cast<double>(s);
        return total / static_cast<double>(vrs.size());
    }
}
