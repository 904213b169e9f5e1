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

#include "xlmimo/scenario.hpp"

#include "xlmimo/errors.hpp"
#include "xlmimo/random.hpp"

#include <cmath>
#include <string>

namespace xlmimo
{
    namespace
    {
        bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

        // Ordinal of lattice value m on an axis with M elements, or throws.
        std::size_t lattice_ordinal(std::size_t count, double m, const char *axis)
        {
            const double shifted = m + 0.5 * static_cast<double>(count - 1);
            const double rounded = std::round(shifted);
            if (!std::isfinite(m) || std::abs(shifted - rounded) > 1e-9 || rounded < 0.0 ||
                rounded > static_cast<double>(count - 1))
                throw DomainError(std::string("antenna index out of range on ") + axis + ": " + std::to_string(m));
            return static_cast<std::size_t>(rounded);
        }
    }

    ArrayConfig::ArrayConfig(std::size_t m_x, std::size_t m_y, double delta_x, double delta_y,
                             double a_x, double a_y, double lambda)
        : m_x_(m_x), m_y_(m_y), delta_x_(delta_x), delta_y_(delta_y), a_x_(a_x), a_y_(a_y), lambda_(lambda)
    {
        if (m_x == 0 || m_y == 0)
            throw DomainError("antenna counts must be positive");
        if (!positive_finite(delta_x) || !positive_finite(delta_y) || !positive_finite(a_x) ||
            !positive_finite(a_y) || !positive_finite(lambda))
            throw DomainError("spacings, element sides and wavelength must be positive and finite");
        if (!(a_x < delta_x) || !(a_y < delta_y))
            throw DomainError("element sides must be smaller than the spacings (A_c < Delta_c)");
    }

    ArrayConfig ArrayConfig::isotropic(double lambda, std::size_t m_x, std::size_t m_y, double delta_factor)
    {
        if (!positive_finite(lambda) || !positive_finite(delta_factor))
            throw DomainError("wavelength and spacing factor must be positive");
        const double side = lambda / (2.0 * std::sqrt(std::numbers::pi)); // side^2 = lambda^2 / (4 pi)
        const double delta = delta_factor * lambda;
        return ArrayConfig(m_x, m_y, delta, delta, side, side, lambda);
    }

    AntennaIndex AntennaIndex::from_ordinal(const ArrayConfig &config, std::size_t ix, std::size_t iy)
    {
        if (ix >= config.m_x() || iy >= config.m_y())
            throw DomainError("antenna ordinal out of range");
        return {static_cast<double>(ix) - config.half_extent_x(), static_cast<double>(iy) - config.half_extent_y()};
    }

    void check_index(const ArrayConfig &config, const AntennaIndex &idx)
    {
        lattice_ordinal(config.m_x(), idx.m_x, "x");
        lattice_ordinal(config.m_y(), idx.m_y, "y");
    }

    std::size_t ordinal_x(const ArrayConfig &config, const AntennaIndex &idx)
    {
        return lattice_ordinal(config.m_x(), idx.m_x, "x");
    }

    std::size_t ordinal_y(const ArrayConfig &config, const AntennaIndex &idx)
    {
        return lattice_ordinal(config.m_y(), idx.m_y, "y");
    }

    std::size_t enumeration_index(const ArrayConfig &config, const AntennaIndex &idx)
    {
        return ordinal_y(config, idx) * config.m_x() + ordinal_x(config, idx);
    }

    AntennaIndex index_from_enumeration(const ArrayConfig &config, std::size_t n)
    {
        if (n >= config.element_count())
            throw DomainError("antenna enumeration index out of range");
        return AntennaIndex::from_ordinal(config, n % config.m_x(), n / config.m_x());
    }

    double cos_elevation(double psi_e)
    {
        if (psi_e == std::numbers::pi / 2.0)
            return 0.0;
        return std::cos(psi_e);
    }

    UserLocation::UserLocation(double u_x, double u_y, double u_z) : u_{u_x, u_y, u_z}
    {
        if (!std::isfinite(u_x) || !std::isfinite(u_y) || !std::isfinite(u_z))
            throw DomainError("user coordinates must be finite");
        if (u_z < 0.0)
            throw DomainError("users must lie in front of the array (u_z >= 0)");
        r_o_ = std::hypot(u_x, u_y, u_z);
        if (!(r_o_ > 0.0))
            throw DomainError("user must not coincide with the array origin");
    }

    UserLocation UserLocation::from_polar(double r_o, double psi_e, double psi_a)
    {
        if (!positive_finite(r_o))
            throw DomainError("distance must be positive");
        if (!(psi_e >= 0.0 && psi_e <= std::numbers::pi / 2.0))
            throw DomainError("elevation must lie in [0, pi/2]");
        if (!std::isfinite(psi_a))
            throw DomainError("azimuth must be finite");
        const double s = std::sin(psi_e);
        return UserLocation(r_o * s * std::cos(psi_a), r_o * s * std::sin(psi_a), r_o * cos_elevation(psi_e));
    }

    double UserLocation::elevation() const
    {
        return std::acos(std::min(1.0, u_[2] / r_o_));
    }

    double UserLocation::azimuth() const
    {
        double a = std::atan2(u_[1], u_[0]);
        if (a < 0.0)
            a += 2.0 * std::numbers::pi;
        return a;
    }

    Vec3 antenna_center(const ArrayConfig &config, const AntennaIndex &idx)
    {
        check_index(config, idx);
        return {idx.m_x * config.delta_x(), idx.m_y * config.delta_y(), 0.0};
    }

    double element_distance(const ArrayConfig &config, const UserLocation &u, const AntennaIndex &idx)
    {
        check_index(config, idx);
        const double dx = idx.m_x * config.delta_x() - u.x();
        const double dy = idx.m_y * config.delta_y() - u.y();
        return std::sqrt(dx * dx + dy * dy + u.z() * u.z());
    }

    std::vector<UserLocation> sample_users(const UserRegion &region, std::size_t k, std::uint64_t seed)
    {
        if (k == 0)
            throw DomainError("at least one user is required");
        if (!std::isfinite(region.x_min) || !std::isfinite(region.x_max) || !std::isfinite(region.z_min) ||
            !std::isfinite(region.z_max) || region.x_min > region.x_max || region.z_min > region.z_max)
            throw DomainError("user region bounds must be finite and ordered");
        if (!(region.z_min > 0.0))
            throw DomainError("user region must satisfy z_min > 0");

        Rng rng(seed);
        std::vector<UserLocation> users;
        users.reserve(k);
        for (std::size_t i = 0; i < k; ++i)
        {
            const double x = rng.uniform(region.x_min, region.x_max);
            const double z = rng.uniform(region.z_min, region.z_max);
            users.emplace_back(x, 0.0, z);
        }
        return users;
    }
}
