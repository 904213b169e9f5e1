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
#ifndef XLMIMO_EM_CHANNEL_HPP
#define XLMIMO_EM_CHANNEL_HPP

#include "xlmimo/scenario.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace xlmimo
{
    using cdouble = std::complex<double>;

    // Length-M channel, entries in enumeration order (m_y-major).
    using ChannelVector = Eigen::VectorXcd;

    // M x K channel, column k belongs to user k.
    using ChannelMatrix = Eigen::MatrixXcd;

    // Element power xi under the centre-point approximation of the aperture integral:
    //   xi = (A / 4 pi) u_z ((m_x d_x - u_x)^2 + u_z^2) / r^5
    // Returns 0 when u_z = 0. Throws SingularityError when the user is closer than
    // 10 max(a_x, a_y) to the element centre.
    double element_power(const ArrayConfig &config, const UserLocation &u, const AntennaIndex &idx);

    // Unwrapped phase chi = 2 pi r / lambda.
    double element_phase(const ArrayConfig &config, const UserLocation &u, const AntennaIndex &idx);

    // h = sqrt(xi) exp(-j chi) for every element.
    ChannelVector channel_vector(const ArrayConfig &config, const UserLocation &u);

    ChannelMatrix channel_matrix(const ArrayConfig &config, const std::vector<UserLocation> &users);

    // Field at array point p due to a unit y-polarised current at u, with kappa = 1.
    std::array<cdouble, 3> green_function_y(double lambda, const Vec3 &p, const UserLocation &u);

    // Integrand of the aperture power integral: (lambda^2 / pi) |G_y|^2 u_z / r.
    double green_power_density(double lambda, const Vec3 &p, const UserLocation &u);

    // Planar-wavefront ULA channel: amplitude sqrt(xi) of the centre element, phase
    // step 2 pi (delta_x / lambda) sin(psi) with sin(psi) = Psi_x. Requires M_y = 1.
    ChannelVector far_field_channel(const ArrayConfig &config, const UserLocation &u);

    namespace detail
    {
        // Element power at lattice value (m_x, m_y) without range or singularity checks.
        double element_power_raw(const ArrayConfig &config, double u_x, double u_y, double u_z, double m_x, double m_y);
    }
}

#endif
