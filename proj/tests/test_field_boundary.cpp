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
#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "xlmimo/em_channel.hpp"
#include "xlmimo/errors.hpp"
#include "xlmimo/field_boundary.hpp"

#include <cmath>
#include <numbers>

using namespace xlmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const double lambda = 0.1256;
    const double pi = std::numbers::pi;
    const double delta = lambda / 2;
}

TEST_CASE("max phase error")
{
    const auto one = ArrayConfig::isotropic(lambda, 1, 1);
    CHECK(max_phase_error(one, UserLocation(1, 2, 3)) == 0.0);

    const auto c = ArrayConfig::isotropic(lambda, 25, 15);
    const double hx = 12 * delta, hy = 7 * delta;
    CHECK_THAT(max_phase_error(c, UserLocation(0, 0, 9)), WithinRel(pi / lambda * (hx * hx + hy * hy) / 9, 1e-14));

    // Against the exact spherical-minus-planar phase, maximised over the grid.
    const double aperture = std::hypot(c.length_x(), c.length_y());
    xlmimo::Rng rng(4);
    for (int t = 0; t < 100; ++t)
    {
        const auto u = UserLocation::from_polar(rng.uniform(10, 30) * aperture, rng.uniform(0, 1.5), rng.uniform(0, 2 * pi));
        CHECK_THAT(max_phase_error(c, u), WithinRel(oracle::scan_phase_error(c, u), 0.1));
        const auto v = UserLocation::from_polar(rng.uniform(100, 300) * aperture, rng.uniform(0, 1.5), rng.uniform(0, 2 * pi));
        CHECK_THAT(max_phase_error(c, v), WithinRel(oracle::scan_phase_error(c, v), 0.01));
    }
}

TEST_CASE("phase boundary")
{
    const auto sq = ArrayConfig::isotropic(lambda, 25, 25);
    const double h = 12 * delta;
    const double broadside = phase_boundary_distance(sq, 0, 0);
    CHECK_THAT(broadside, WithinRel(8 / lambda * 2 * h * h, 1e-14));
    CHECK_THAT(broadside, WithinRel(72.3456, 1e-4));
    // Same expression through the classical formula with the element-centre diagonal.
    const double df = fraunhofer_distance(sq, ApertureConvention::element_centers);
    CHECK_THAT(broadside, WithinRel(df, 1e-12));
    CHECK_THAT(broadside, WithinRel(fraunhofer_distance(sq), 0.1));
    REQUIRE_THROWS_AS(phase_boundary_distance(sq, -0.1, 0), DomainError);

    for (double a = 0; a < 2 * pi; a += pi / 12)
    {
        double prev = 1e300;
        for (double e = 0; e <= pi / 2 + 1e-12; e += pi / 80)
        {
            const double r = phase_boundary_distance(sq, e, a);
            CHECK(r <= df * (1 + 1e-12));
            CHECK(r <= prev * (1 + 1e-12));
            prev = r;
            // Construction: the phase error at the boundary is pi/8.
            if (r > 0)
                CHECK_THAT(max_phase_error(sq, UserLocation::from_polar(r, e, a)), WithinRel(pi / 8, 1e-9));
        }
    }
}

TEST_CASE("fraunhofer distance")
{
    const auto sq = ArrayConfig::isotropic(lambda, 40, 40);
    const double l = sq.length_x();
    CHECK_THAT(fraunhofer_distance(sq), WithinRel(4 * l * l / lambda, 1e-14));
    const auto dbl = ArrayConfig::isotropic(lambda, 80, 80);
    CHECK_THAT(fraunhofer_distance(dbl), WithinRel(4 * fraunhofer_distance(sq), 1e-14));
}

TEST_CASE("power profile stationarity")
{
    for (double v : {0.5, 1.0, 7.0})
    {
        const double s0 = 2 * v / 3;
        CHECK(power_profile_derivative(0.9 * s0, v) > 0);
        CHECK(power_profile_derivative(1.1 * s0, v) < 0);
        CHECK(power_profile_derivative(s0, v) == 0.0);
        const double eps = 1e-6;
        CHECK_THAT(power_profile_derivative(0.3, v),
                   WithinRel((power_profile(0.3 + eps, v) - power_profile(0.3 - eps, v)) / (2 * eps), 1e-6));
    }
}

TEST_CASE("extremal elements match an exhaustive scan")
{
    const auto sq = ArrayConfig::isotropic(lambda, 25, 25);
    const auto b = power_extremal_elements(sq, UserLocation(0, 0, 0.5));
    CHECK(b.argmax_idx == AntennaIndex{0, 0});
    CHECK(std::abs(b.argmin_idx.m_x) == 12);
    CHECK(std::abs(b.argmin_idx.m_y) == 12);

    xlmimo::Rng rng(8);
    for (const auto &c : {sq, ArrayConfig::isotropic(lambda, 24, 10), ArrayConfig::isotropic(lambda, 9, 1),
                          ArrayConfig::isotropic(lambda, 40, 7)})
    {
        for (int t = 0; t < 200; ++t)
        {
            const double span = c.length_x();
            const UserLocation u(rng.uniform(-1.5, 1.5) * span, rng.uniform(-1.5, 1.5) * c.length_y(),
                                 rng.uniform(0.05, 2.0) * span);
            const auto e = power_extremal_elements(c, u);
            const auto o = oracle::scan_extremes(c, u);
            CHECK(e.argmax_idx == AntennaIndex{o.max_mx, o.max_my});
            CHECK(e.argmin_idx == AntennaIndex{o.min_mx, o.min_my});
            CHECK_THAT(e.max_power, WithinRel(o.max_p, 1e-12));
            CHECK_THAT(e.min_power, WithinRel(o.min_p, 1e-12));
            CHECK(e.max_power >= e.min_power);
            CHECK(e.min_power > 0);
        }
    }
}

TEST_CASE("power variation")
{
    const auto one = ArrayConfig::isotropic(lambda, 1, 1);
    CHECK(power_variation(one, UserLocation(1, 1, 1)) == 1.0);

    const auto sq = ArrayConfig::isotropic(lambda, 25, 25);
    const double aperture = std::hypot(sq.length_x(), sq.length_y());
    CHECK(power_variation(sq, UserLocation::from_polar(1e4 * aperture, 0.7, 1.0)) >= 0.99);

    double prev = 1.0;
    for (double z = 50; z > 0.05; z *= 0.9)
    {
        const double v = power_variation(sq, UserLocation(0, 0, z));
        CHECK(v <= prev);
        CHECK(v > 0);
        prev = v;
    }
    REQUIRE_THROWS_AS(power_variation(sq, UserLocation(1, 0, 0)), DomainError);
}

TEST_CASE("power boundary search")
{
    const auto sq = ArrayConfig::isotropic(lambda, 25, 25);
    for (double ux : {0.0, 0.5, 2.0, 6.0})
    {
        const double z9 = power_boundary_distance(sq, ux, 0, 0.9);
        const double z95 = power_boundary_distance(sq, ux, 0, 0.95);
        CHECK_THAT(power_variation(sq, UserLocation(ux, 0, z9)), WithinAbs(0.9, 1e-6));
        CHECK_THAT(power_variation(sq, UserLocation(ux, 0, z95)), WithinAbs(0.95, 1e-6));
        CHECK(z95 > z9);
    }
    double prev = 0.0;
    for (double ux = 0; ux <= 10; ux += 0.5)
    {
        const double z = power_boundary_distance(sq, ux, 0, 0.9);
        CHECK(z >= prev);
        prev = z;
    }
    REQUIRE_THROWS_AS(power_boundary_distance(sq, 0, 0, 1.0), DomainError);
    REQUIRE_THROWS_AS(power_boundary_distance(sq, 0, 0, 0.0), DomainError);
}

TEST_CASE("field region classification")
{
    const auto sq = ArrayConfig::isotropic(lambda, 25, 25);
    CHECK(classify_field_region(sq, UserLocation(0, 0, 1e6), 0.9) == FieldRegion::far);
    CHECK(std::string(to_string(FieldRegion::near_both)) == "near_both");

    // Exactly on the phase boundary counts as outside it.
    const double r = phase_boundary_distance(sq, 0.3, 0.2);
    const auto on = UserLocation::from_polar(r, 0.3, 0.2);
    const double rb = phase_boundary_distance(sq, on.elevation(), on.azimuth());
    if (on.distance() >= rb)
        CHECK(classify_field_region(sq, on, 0.5) == FieldRegion::far);

    xlmimo::Rng rng(31);
    int seen[4] = {0, 0, 0, 0};
    for (int t = 0; t < 100; ++t)
    {
        const UserLocation u(rng.uniform(-80, 80), rng.uniform(-80, 80), rng.uniform(0.1, 80));
        const double vt = rng.uniform(0.5, 0.99);
        // Independent re-evaluation: exact distance against the boundary, scanned power ratio.
        const double boundary = phase_boundary_distance(sq, std::acos(u.z() / u.distance()),
                                                        std::atan2(u.y(), u.x()) + (u.y() < 0 ? 2 * pi : 0));
        const auto o = oracle::scan_extremes(sq, u);
        const bool np = u.distance() < boundary, nw = o.min_p / o.max_p < vt;
        const FieldRegion expect = np && nw ? FieldRegion::near_both
                                   : np     ? FieldRegion::near_phase_only
                                   : nw     ? FieldRegion::near_power_only
                                            : FieldRegion::far;
        const FieldRegion got = classify_field_region(sq, u, vt);
        CHECK(got == expect);
        ++seen[static_cast<int>(got)];
    }
    CHECK(seen[0] + seen[1] + seen[2] + seen[3] == 100);
}
