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
#include "xlmimo/em_channel.hpp"

#include "xlmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xlmimo
{
    namespace detail
    {
        double element_power_raw(const ArrayConfig &config, double u_x, double u_y, double u_z, double m_x, double m_y)
        {
            const double dx = m_x * config.delta_x() - u_x;
            const double dy = m_y * config.delta_y() - u_y;
            const double r2 = dx * dx + dy * dy + u_z * u_z;
            const double r = std::sqrt(r2);
            return config.area() / (4.0 * std::numbers::pi) * u_z * (dx * dx + u_z * u_z) / (r2 * r2 * r);
        }
    }

    double element_power(const ArrayConfig &config, const UserLocation &u, const AntennaIndex &idx)
    {
        check_index(config, idx);
        if (u.z() == 0.0)
            return 0.0;
        const double r = element_distance(config, u, idx);
        if (r < 10.0 * std::max(config.a_x(), config.a_y()))
            throw SingularityError("user is within 10 element sizes of an antenna centre");
        return detail::element_power_raw(config, u.x(), u.y(), u.z(), idx.m_x, idx.m_y);
    }

    double element_phase(const ArrayConfig &config, const UserLocation &u, const AntennaIndex &idx)
    {
        return config.wavenumber() * element_distance(config, u, idx);
    }

    ChannelVector channel_vector(const ArrayConfig &config, const UserLocation &u)
    {
        const std::size_t m = config.element_count();
        ChannelVector h = ChannelVector::Zero(static_cast<Eigen::Index>(m));
        if (u.z() == 0.0)
            return h;
        const double guard = 10.0 * std::max(config.a_x(), config.a_y());
        const double k0 = config.wavenumber();
        for (std::size_t iy = 0; iy < config.m_y(); ++iy)
        {
            const double my = static_cast<double>(iy) - config.half_extent_y();
            const double dy = my * config.delta_y() - u.y();
            for (std::size_t ix = 0; ix < config.m_x(); ++ix)
            {
                const double mx = static_cast<double>(ix) - config.half_extent_x();
                const double dx = mx * config.delta_x() - u.x();
                const double r = std::sqrt(dx * dx + dy * dy + u.z() * u.z());
                if (r < guard)
                    throw SingularityError("user is within 10 element sizes of an antenna centre");
                const double xi = detail::element_power_raw(config, u.x(), u.y(), u.z(), mx, my);
                h[static_cast<Eigen::Index>(iy * config.m_x() + ix)] = std::polar(std::sqrt(xi), -k0 * r);
            }
        }
        return h;
    }

    ChannelMatrix channel_matrix(const ArrayConfig &config, const std::vector<UserLocation> &users)
    {
        if (users.empty())
            throw DomainError("channel matrix needs at least one user");
        ChannelMatrix h(static_cast<Eigen::Index>(config.element_count()), static_cast<Eigen::Index>(users.size()));
        for (std::size_t k = 0; k < users.size(); ++k)
            h.col(static_cast<Eigen::Index>(k)) = channel_vector(config, users[k]);
        return h;
    }

    std::array<cdouble, 3> green_function_y(double lambda, const Vec3 &p, const UserLocation &u)
    {
        const double rx = p[0] - u.x();
        const double ry = p[1] - u.y();
        const double rz = p[2] - u.z();
        const double r2 = rx * rx + ry * ry + rz * rz;
        if (!(r2 > 0.0))
            throw SingularityError("field point coincides with the source");
        const double r = std::sqrt(r2);
        const cdouble scale = cdouble(0.0, -1.0) / (2.0 * lambda * r) * std::polar(1.0, -2.0 * std::numbers::pi * r / lambda);
        return {scale * (rx * ry / r2), scale * (1.0 - ry * ry / r2), scale * (-u.z() * ry / r2)};
    }

    double green_power_density(double lambda, const Vec3 &p, const UserLocation &u)
    {
        const auto g = green_function_y(lambda, p, u);
        const double norm2 = std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]);
        const double rx = p[0] - u.x(), ry = p[1] - u.y(), rz = p[2] - u.z();
        const double r = std::sqrt(rx * rx + ry * ry + rz * rz);
        return lambda * lambda / std::numbers::pi * norm2 * u.z() / r;
    }

    ChannelVector far_field_channel(const ArrayConfig &config, const UserLocation &u)
    {
        if (config.m_y() != 1)
            throw UnsupportedConfiguration("far-field channel is defined for linear arrays (M_y = 1) only");
        const double amplitude = std::sqrt(detail::element_power_raw(config, u.x(), u.y(), u.z(), 0.0, 0.0));
        const double step = 2.0 * std::numbers::pi * config.delta_x() / config.lambda() * u.psi_x();
        ChannelVector h(static_cast<Eigen::Index>(config.m_x()));
        for (std::size_t n = 0; n < config.m_x(); ++n)
            h[static_cast<Eigen::Index>(n)] = std::polar(amplitude, -step * static_cast<double>(n));
        return h;
    }
}
