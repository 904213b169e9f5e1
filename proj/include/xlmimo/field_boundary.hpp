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
#ifndef XLMIMO_FIELD_BOUNDARY_HPP
#define XLMIMO_FIELD_BOUNDARY_HPP

#include "xlmimo/scenario.hpp"

namespace xlmimo
{
    // Which aperture D enters 2 D^2 / lambda.
    enum class ApertureConvention
    {
        lattice,        // L_c = M_c delta_c
        element_centers // (M_c - 1) delta_c, distance between outermost element centres
    };

    struct ExtremalElements
    {
        AntennaIndex argmax_idx;
        AntennaIndex argmin_idx;
        double max_power = 0.0;
        double min_power = 0.0;
    };

    enum class FieldRegion
    {
        near_both,
        near_phase_only,
        near_power_only,
        far
    };

    const char *to_string(FieldRegion region);

    // Largest phase deviation of the spherical wavefront from the planar one over
    // the array, second-order expansion, attained at a pair of opposite corners.
    double max_phase_error(const ArrayConfig &config, const UserLocation &u);

    // Range at which max_phase_error equals pi / 8 in direction (psi_e, psi_a).
    double phase_boundary_distance(const ArrayConfig &config, double psi_e, double psi_a);

    // Classical 2 D^2 / lambda with D the array diagonal.
    double fraunhofer_distance(const ArrayConfig &config, ApertureConvention convention = ApertureConvention::lattice);

    // f(s) = s / (s + v)^(5/2): element power up to the factor A u_z / (4 pi), with
    // s = (m_x d_x - u_x)^2 + u_z^2 and v = (m_y d_y - u_y)^2.
    double power_profile(double s, double v);
    double power_profile_derivative(double s, double v);

    // Strongest and weakest elements, found from the stationary point of power_profile
    // rather than by scanning. Ties resolve to the smallest enumeration index.
    ExtremalElements power_extremal_elements(const ArrayConfig &config, const UserLocation &u);

    // min / max element power over the array.
    double power_variation(const ArrayConfig &config, const UserLocation &u);

    // u_z at which power_variation equals v_t, for the user column above (u_x, u_y).
    // Bisection to |v - v_t| <= 1e-6 within 60 iterations. Returns 0 when even the
    // closest admissible range (10 max(a_x, a_y)) already satisfies v >= v_t.
    double power_boundary_distance(const ArrayConfig &config, double u_x, double u_y, double v_t);

    // Near by phase: r_o < phase boundary. Near by power: v(u) < v_t.
    FieldRegion classify_field_region(const ArrayConfig &config, const UserLocation &u, double v_t);
}

#endif
