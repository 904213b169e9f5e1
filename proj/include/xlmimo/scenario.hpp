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

#ifndef XLMIMO_SCENARIO_HPP
#define XLMIMO_SCENARIO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace xlmimo
{
    using Vec3 = std::array<double, 3>;

    // Planar array in the xoy plane, centred at the origin.
    //
    // Element (m_x, m_y) sits at [m_x * delta_x, m_y * delta_y, 0] with m_c drawn from the
    // symmetric lattice {-(M_c-1)/2, ..., (M_c-1)/2}. For even M_c the lattice values are
    // half-integers; the spacing stays one element.
    class ArrayConfig
    {
    public:
        ArrayConfig(std::size_t m_x, std::size_t m_y, double delta_x, double delta_y,
                    double a_x, double a_y, double lambda);

        // Square elements with effective area lambda^2 / (4 pi) and spacing delta_factor * lambda.
        static ArrayConfig isotropic(double lambda, std::size_t m_x, std::size_t m_y, double delta_factor = 0.5);

        std::size_t m_x() const { return m_x_; }
        std::size_t m_y() const { return m_y_; }
        std::size_t element_count() const { return m_x_ * m_y_; }
        double delta_x() const { return delta_x_; }
        double delta_y() const { return delta_y_; }
        double a_x() const { return a_x_; }
        double a_y() const { return a_y_; }
        double lambda() const { return lambda_; }
        double area() const { return a_x_ * a_y_; }
        double wavenumber() const { return 2.0 * std::numbers::pi / lambda_; }

        // eta = A / (delta_x delta_y)
        double occupation_ratio() const { return area() / (delta_x_ * delta_y_); }

        // L_c = M_c delta_c, the tiled extent used by the closed-form SNR.
        double length_x() const { return static_cast<double>(m_x_) * delta_x_; }
        double length_y() const { return static_cast<double>(m_y_) * delta_y_; }

        // Edge-to-edge physical span (M_c - 1) delta_c + A_c.
        double span_x() const { return static_cast<double>(m_x_ - 1) * delta_x_ + a_x_; }
        double span_y() const { return static_cast<double>(m_y_ - 1) * delta_y_ + a_y_; }

        // Largest lattice value (M_c - 1) / 2.
        double half_extent_x() const { return 0.5 * static_cast<double>(m_x_ - 1); }
        double half_extent_y() const { return 0.5 * static_cast<double>(m_y_ - 1); }

        bool operator==(const ArrayConfig &) const = default;

    private:
        std::size_t m_x_, m_y_;
        double delta_x_, delta_y_, a_x_, a_y_, lambda_;
    };

    // Signed lattice index of one element; values may be half-integers for even M.
    struct AntennaIndex
    {
        double m_x = 0.0;
        double m_y = 0.0;

        // Zero-based ordinals (0 .. M_c - 1) mapped onto the symmetric lattice.
        static AntennaIndex from_ordinal(const ArrayConfig &config, std::size_t ix, std::size_t iy);

        bool operator==(const AntennaIndex &) const = default;
    };

    // Throws DomainError when idx is not a lattice point of config.
    void check_index(const ArrayConfig &config, const AntennaIndex &idx);

    // Zero-based ordinals of a validated index.
    std::size_t ordinal_x(const ArrayConfig &config, const AntennaIndex &idx);
    std::size_t ordinal_y(const ArrayConfig &config, const AntennaIndex &idx);

    // Antenna enumeration is m_y-major: n = iy * M_x + ix.
    std::size_t enumeration_index(const ArrayConfig &config, const AntennaIndex &idx);
    AntennaIndex index_from_enumeration(const ArrayConfig &config, std::size_t n);

    // Single-antenna user in front of the array (u_z >= 0).
    class UserLocation
    {
    public:
        UserLocation(double u_x, double u_y, double u_z);

        // u = r [sin(psi_e) cos(psi_a), sin(psi_e) sin(psi_a), cos(psi_e)]
        static UserLocation from_polar(double r_o, double psi_e, double psi_a);

        double x() const { return u_[0]; }
        double y() const { return u_[1]; }
        double z() const { return u_[2]; }
        const Vec3 &position() const { return u_; }

        double distance() const { return r_o_; }
        double elevation() const;
        double azimuth() const;

        // Direction cosines Psi_c = u_c / r_o.
        double psi_x() const { return u_[0] / r_o_; }
        double psi_y() const { return u_[1] / r_o_; }
        double psi_z() const { return u_[2] / r_o_; }

        bool operator==(const UserLocation &) const = default;

    private:
        Vec3 u_;
        double r_o_;
    };

    Vec3 antenna_center(const ArrayConfig &config, const AntennaIndex &idx);

    // Distance between the user and the element centre.
    double element_distance(const ArrayConfig &config, const UserLocation &u, const AntennaIndex &idx);

    // Axis-aligned box on the xoz plane; users are drawn with u_y = 0.
    struct UserRegion
    {
        double x_min = -25.0;
        double x_max = 25.0;
        double z_min = 2.0;
        double z_max = 12.0;
    };

    // k users uniform over region. Draw order per user: x then z, using Rng(seed).
    std::vector<UserLocation> sample_users(const UserRegion &region, std::size_t k, std::uint64_t seed);

    // cos(psi_e) with the exact zero at psi_e = pi/2 preserved.
    double cos_elevation(double psi_e);
}

#endif
