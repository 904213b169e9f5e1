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
#ifndef XLMIMO_SNR_HPP
#define XLMIMO_SNR_HPP

#include "xlmimo/scenario.hpp"

namespace xlmimo
{
    struct SnrQuery
    {
        ArrayConfig config;
        UserLocation user;
        double rho; // p / sigma^2, linear
    };

    // Which array extent enters the closed form.
    enum class Extent
    {
        lattice, // M_c delta_c
        physical // (M_c - 1) delta_c + A_c, edge to edge
    };

    enum class AsymptoteKind
    {
        discrete_polarized,
        discrete_unpolarized,
        continuous
    };

    enum class FarFieldForm
    {
        wavelength, // rho lambda^2 M / ((4 pi)^2 r^2)
        aperture    // rho M A cos(psi_e) / (4 pi r^2)
    };

    // F(a, b) = atan(a b / (u_z R)) + (u_z / 2) a / (a^2 + u_z^2) b / R,  R = sqrt(a^2 + b^2 + u_z^2).
    // Odd in a and in b. Requires u_z > 0.
    double aux_f(double a, double b, double u_z);

    // Polarisation-free kernel (3/2) atan(a b / (u_z R)).
    double aux_f_unpolarized(double a, double b, double u_z);

    // Linear-array kernel.
    double aux_f_ula(double a, double u_y, double u_z);

    // rho * sum of element powers.
    double snr_upa_sum(const SnrQuery &q);

    double snr_upa_closed(const SnrQuery &q, Extent extent = Extent::lattice);
    double snr_upa_no_polarization(const SnrQuery &q, Extent extent = Extent::lattice);

    // Same closed form written in direction cosines and range.
    double snr_upa_angles(double r_o, double psi_e, double psi_a, const ArrayConfig &config, double rho);

    double snr_asymptotic(AsymptoteKind kind, double eta, double rho);

    // Broadside user (u_x = u_y = 0) in terms of the view angles alpha and beta:
    //   tan(alpha) = L_y / (2 u_z),  cos(beta) = (L_x / 2) / sqrt((L_x/2)^2 + (L_y/2)^2 + u_z^2)
    double snr_perpendicular_geometric(const SnrQuery &q);

    struct ViewAngles
    {
        double alpha;
        double beta;
    };
    ViewAngles perpendicular_view_angles(double l_x, double l_y, double u_z);

    double snr_ula_closed(const SnrQuery &q);

    // Broadside ULA user: rho A sin(gamma) / (2 pi delta_x u_z) with tan(gamma) = M_x delta_x / (2 u_z).
    double snr_ula_broadside(const ArrayConfig &config, double u_z, double rho);

    double snr_ula_asymptotic(double u_y, double u_z, const ArrayConfig &config, double rho, bool polarized);
    double polarization_gap(double u_y, double u_z, const ArrayConfig &config, double rho);

    double snr_far_field_reference(const SnrQuery &q, FarFieldForm form = FarFieldForm::aperture);
}

#endif
