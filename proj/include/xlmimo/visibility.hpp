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
#ifndef XLMIMO_VISIBILITY_HPP
#define XLMIMO_VISIBILITY_HPP

#include "xlmimo/scenario.hpp"

#include <cstddef>
#include <vector>

namespace xlmimo
{
    // Regular partition of the array into S_x x S_y rectangular sub-arrays.
    // Sub-array (s_x, s_y) has flat id s_y * S_x + s_x.
    class SubArrayGrid
    {
    public:
        SubArrayGrid(const ArrayConfig &config, std::size_t s_x, std::size_t s_y);

        const ArrayConfig &config() const { return config_; }
        std::size_t s_x() const { return s_x_; }
        std::size_t s_y() const { return s_y_; }
        std::size_t count() const { return s_x_ * s_y_; }
        std::size_t block_x() const { return config_.m_x() / s_x_; }
        std::size_t block_y() const { return config_.m_y() / s_y_; }
        std::size_t antennas_per_subarray() const { return block_x() * block_y(); }

    private:
        ArrayConfig config_;
        std::size_t s_x_, s_y_;
    };

    struct VisibilityRegion
    {
        std::size_t user = 0;
        std::vector<std::size_t> members; // ascending flat ids
        double captured_power = 0.0;
        double target_power = 0.0;
    };

    // Closed-form received power of one sub-array (same kernel as the whole-array SNR,
    // evaluated over the sub-array's rectangle). Sums exactly to the whole-array value.
    double subarray_power(const SubArrayGrid &grid, const UserLocation &u, double rho, std::size_t s_x, std::size_t s_y);

    // All S sub-array powers indexed by flat id.
    std::vector<double> subarray_powers(const SubArrayGrid &grid, const UserLocation &u, double rho);

    // Greedy selection: strongest sub-arrays first (ties by ascending flat id) while the
    // captured power is <= varpi * target, target being the sum of all sub-array powers.
    VisibilityRegion detect_vr(const SubArrayGrid &grid, const UserLocation &u, double rho, double varpi,
                               std::size_t user = 0);

    // Antenna enumeration indices covered by the region, ascending.
    std::vector<std::size_t> vr_antenna_indices(const SubArrayGrid &grid, const VisibilityRegion &vr);

    // Antenna enumeration indices of a single sub-array, ascending.
    std::vector<std::size_t> subarray_antenna_indices(const SubArrayGrid &grid, std::size_t flat_id);

    // Mean of |B_k| / S.
    double occupancy_ratio(const std::vector<VisibilityRegion> &vrs, std::size_t s);
}

#endif
