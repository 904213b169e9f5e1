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
#include "xlmimo/snr.hpp"

#include "xlmimo/em_channel.hpp"
#include "xlmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xlmimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        void check_rho(double rho)
        {
            if (!(std::isfinite(rho) && rho > 0.0))
                throw DomainError("rho must be positive and finite");
        }

        double extent_x(const ArrayConfig &c, Extent e) { return e == Extent::lattice ? c.length_x() : c.span_x(); }
        double extent_y(const ArrayConfig &c, Extent e) { return e == Extent::lattice ? c.length_y() : c.span_y(); }

        template <typename Kernel>
        double four_terms(Kernel f, double hy, double hx, double uy, double ux)
        {
            return f(hy - uy, hx - ux) + f(hy - uy, hx + ux) + f(hy + uy, hx - ux) + f(hy + uy, hx + ux);
        }
    }

    double aux_f(double a, double b, double u_z)
    {
        if (!(u_z > 0.0))
            throw DomainError("aux_f requires u_z > 0");
        const double r = std::sqrt(a * a + b * b + u_z * u_z);
        return std::atan2(a * b, u_z * r) + 0.5 * u_z * a / (a * a + u_z * u_z) * b / r;
    }

    double aux_f_unpolarized(double a, double b, double u_z)
    {
        if (!(u_z > 0.0))
            throw DomainError("aux_f_unpolarized requires u_z > 0");
        const double r = std::sqrt(a * a + b * b + u_z * u_z);
        return 1.5 * std::atan2(a * b, u_z * r);
    }

    double aux_f_ula(double a, double u_y, double u_z)
    {
        const double p = u_y * u_y + u_z * u_z;
        if (!(p > 0.0))
            throw SingularityError("linear-array kernel is singular for u_y = u_z = 0");
        const double s = a * a + p;
        return a * (a * a * u_y * u_y + 3.0 * u_z * u_z * s) * u_z / (3.0 * p * p * s * std::sqrt(s));
    }

    double snr_upa_sum(const SnrQuery &q)
    {
        check_rho(q.rho);
        const auto &c = q.config;
        const auto &u = q.user;
        if (u.z() == 0.0)
            return 0.0;
        const double guard = 10.0 * std::max(c.a_x(), c.a_y());
        double total = 0.0;
        for (std::size_t iy = 0; iy < c.m_y(); ++iy)
        {
            const double my = static_cast<double>(iy) - c.half_extent_y();
            for (std::size_t ix = 0; ix < c.m_x(); ++ix)
            {
                const double mx = static_cast<double>(ix) - c.half_extent_x();
                const double dx = mx * c.delta_x() - u.x(), dy = my * c.delta_y() - u.y();
                if (std::sqrt(dx * dx + dy * dy + u.z() * u.z()) < guard)
                    throw SingularityError("user is within 10 element sizes of an antenna centre");
                total += detail::element_power_raw(c, u.x(), u.y(), u.z(), mx, my);
            }
        }
        return q.rho * total;
    }

    double snr_upa_closed(const SnrQuery &q, Extent extent)
    {
        check_rho(q.rho);
        const auto &u = q.user;
        if (u.z() == 0.0)
            return 0.0;
        const double uz = u.z();
        const double sum = four_terms([uz](double a, double b) { return aux_f(a, b, uz); },
                                      0.5 * extent_y(q.config, extent), 0.5 * extent_x(q.config, extent), u.y(), u.x());
        return q.rho * q.config.occupation_ratio() / (6.0 * pi) * sum;
    }

    double snr_upa_no_polarization(const SnrQuery &q, Extent extent)
    {
        check_rho(q.rho);
        const auto &u = q.user;
        if (u.z() == 0.0)
            return 0.0;
        const double uz = u.z();
        const double sum = four_terms([uz](double a, double b) { return aux_f_unpolarized(a, b, uz); },
                                      0.5 * extent_y(q.config, extent), 0.5 * extent_x(q.config, extent), u.y(), u.x());
        return q.rho * q.config.occupation_ratio() / (6.0 * pi) * sum;
    }

    double snr_upa_angles(double r_o, double psi_e, double psi_a, const ArrayConfig &config, double rho)
    {
        check_rho(rho);
        UserLocation::from_polar(r_o, psi_e, psi_a); // argument validation
        const double pz = cos_elevation(psi_e);
        if (pz == 0.0)
            return 0.0;
        const double px = std::sin(psi_e) * std::cos(psi_a);
        const double py = std::sin(psi_e) * std::sin(psi_a);
        const double sum = four_terms([pz](double a, double b) { return aux_f(a, b, pz); },
                                      config.length_y() / (2.0 * r_o), config.length_x() / (2.0 * r_o), py, px);
        return rho * config.occupation_ratio() / (6.0 * pi) * sum;
    }

    double snr_asymptotic(AsymptoteKind kind, double eta, double rho)
    {
        check_rho(rho);
        if (!(eta > 0.0 && eta <= 1.0))
            throw DomainError("occupation ratio must lie in (0, 1]");
        switch (kind)
        {
        case AsymptoteKind::discrete_polarized:
            return rho * eta / 3.0;
        case AsymptoteKind::discrete_unpolarized:
            return rho * eta / 2.0;
        case AsymptoteKind::continuous:
            return rho / 3.0;
        }
        throw DomainError("unknown asymptote kind");
    }

    ViewAngles perpendicular_view_angles(double l_x, double l_y, double u_z)
    {
        const double hx = 0.5 * l_x, hy = 0.5 * l_y;
        return {std::atan2(hy, u_z), std::acos(hx / std::sqrt(hx * hx + hy * hy + u_z * u_z))};
    }

    double snr_perpendicular_geometric(const SnrQuery &q)
    {
        check_rho(q.rho);
        const auto &u = q.user;
        if (u.x() != 0.0 || u.y() != 0.0 || !(u.z() > 0.0))
            throw DomainError("geometric form requires a broadside user (u_x = u_y = 0, u_z > 0)");
        const auto [alpha, beta] = perpendicular_view_angles(q.config.length_x(), q.config.length_y(), u.z());
        const double cb = std::cos(beta);
        return q.rho * 2.0 * q.config.occupation_ratio() / (3.0 * pi) *
               (std::atan(std::tan(alpha) * cb) + 0.5 * std::sin(alpha) * std::cos(alpha) * cb);
    }

    double snr_ula_closed(const SnrQuery &q)
    {
        check_rho(q.rho);
        const auto &c = q.config;
        if (c.m_y() != 1)
            throw UnsupportedConfiguration("linear-array closed form requires M_y = 1");
        const auto &u = q.user;
        const double h = 0.5 * c.length_x();
        return q.rho * c.area() / (4.0 * pi * c.delta_x()) *
               (aux_f_ula(h - u.x(), u.y(), u.z()) + aux_f_ula(h + u.x(), u.y(), u.z()));
    }

    double snr_ula_broadside(const ArrayConfig &config, double u_z, double rho)
    {
        check_rho(rho);
        if (!(u_z > 0.0))
            throw DomainError("broadside form requires u_z > 0");
        const double gamma = std::atan2(0.5 * config.length_x(), u_z);
        return rho * config.area() * std::sin(gamma) / (2.0 * pi * config.delta_x() * u_z);
    }

    double snr_ula_asymptotic(double u_y, double u_z, const ArrayConfig &config, double rho, bool polarized)
    {
        check_rho(rho);
        if (!(u_z > 0.0))
            throw DomainError("asymptotic form requires u_z > 0");
        const double p = u_y * u_y + u_z * u_z;
        const double scale = rho * config.area() / (2.0 * pi * config.delta_x());
        if (polarized)
            return scale * u_z * (u_y * u_y + 3.0 * u_z * u_z) / (3.0 * p * p);
        return scale * u_z / p;
    }

    double polarization_gap(double u_y, double u_z, const ArrayConfig &config, double rho)
    {
        check_rho(rho);
        if (!(u_z > 0.0))
            throw DomainError("polarization gap requires u_z > 0");
        const double p = u_y * u_y + u_z * u_z;
        return rho * config.area() / (3.0 * pi * config.delta_x()) * u_z * u_y * u_y / (p * p);
    }

    double snr_far_field_reference(const SnrQuery &q, FarFieldForm form)
    {
        check_rho(q.rho);
        const double r = q.user.distance();
        const double m = static_cast<double>(q.config.element_count());
        if (form == FarFieldForm::wavelength)
        {
            const double l = q.config.lambda();
            return q.rho * l * l * m / (16.0 * pi * pi * r * r);
        }
        return q.rho * m * q.config.area() * q.user.psi_z() / (4.0 * pi * r * r);
    }
}
