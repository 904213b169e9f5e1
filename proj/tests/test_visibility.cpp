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
#include "xlmimo/errors.hpp"
#include "xlmimo/experiment.hpp"
#include "xlmimo/snr.hpp"
#include "xlmimo/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

using namespace xlmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const double lambda = 0.1256;
    const double rho = 1e9;
}

TEST_CASE("sub-array grid")
{
    const auto c = ArrayConfig::isotropic(lambda, 1000, 10);
    const SubArrayGrid g(c, 100, 2);
    CHECK(g.count() == 200);
    CHECK(g.block_x() == 10);
    CHECK(g.block_y() == 5);
    CHECK(g.antennas_per_subarray() == 50);
    REQUIRE_THROWS_AS(SubArrayGrid(c, 7, 2), DomainError);
    REQUIRE_THROWS_AS(SubArrayGrid(c, 100, 3), DomainError);
    REQUIRE_THROWS_AS(SubArrayGrid(c, 0, 1), DomainError);
}

TEST_CASE("sub-array powers tile the whole-array closed form")
{
    const auto c = ArrayConfig::isotropic(lambda, 120, 12);
    const UserLocation u(1.5, -0.2, 3.0);
    CHECK_THAT(subarray_power(SubArrayGrid(c, 1, 1), u, rho, 0, 0), WithinRel(snr_upa_closed({c, u, rho}), 1e-12));

    xlmimo::Rng rng(6);
    for (int t = 0; t < 100; ++t)
    {
        const SubArrayGrid g(c, t % 2 ? 12 : 40, t % 3 ? 2 : 4);
        const UserLocation v(rng.uniform(-20, 20), rng.uniform(-2, 2), rng.uniform(0.5, 12));
        const auto p = subarray_powers(g, v, rho);
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK_THAT(total, WithinRel(snr_upa_closed({c, v, rho}), 1e-10));
        REQUIRE_THROWS_AS(subarray_power(g, v, rho, g.s_x(), 0), DomainError);
    }
}

TEST_CASE("sub-array power matches the restricted element sum")
{
    const auto c = ArrayConfig::isotropic(lambda, 1000, 10);
    const SubArrayGrid g(c, 100, 2);
    const auto users = sample_users(UserRegion{}, 5, 12);
    for (const auto &u : users)
        for (std::size_t sy = 0; sy < 2; ++sy)
            for (std::size_t sx = 0; sx < 100; sx += 9)
            {
                const double o = oracle::block_sum(c, u, rho, sx * 10, sx * 10 + 10, sy * 5, sy * 5 + 5);
                CHECK_THAT(subarray_power(g, u, rho, sx, sy), WithinRel(o, 1e-3));
            }
}

TEST_CASE("VR detection contract")
{
    const auto c = ArrayConfig::isotropic(lambda, 1000, 10);
    const SubArrayGrid g(c, 100, 2);
    const UserLocation u(3.0, 0.0, 5.0);
    const auto p = subarray_powers(g, u, rho);

    const auto v0 = detect_vr(g, u, rho, 0.0);
    REQUIRE(v0.members.size() == 1);
    CHECK(p[v0.members[0]] == *std::max_element(p.begin(), p.end()));
    CHECK(detect_vr(g, u, rho, 1.0).members.size() == 200);
    REQUIRE_THROWS_AS(detect_vr(g, UserLocation(3.0, 0.0, 0.0), rho, 0.5), DegenerateUser);
    REQUIRE_THROWS_AS(detect_vr(g, u, rho, 1.2), DomainError);

    std::size_t prev = 0;
    for (double w = 0; w <= 1.0; w += 0.05)
    {
        const auto vr = detect_vr(g, u, rho, w, 7);
        CHECK(vr.user == 7);
        CHECK(vr.captured_power >= w * vr.target_power);
        CHECK(std::is_sorted(vr.members.begin(), vr.members.end()));
        CHECK(std::adjacent_find(vr.members.begin(), vr.members.end()) == vr.members.end());
        CHECK(vr.members.back() < 200);
        CHECK(vr.members.size() >= prev);
        prev = vr.members.size();
    }
}

TEST_CASE("greedy VR is the minimum threshold cover")
{
    xlmimo::Rng rng(14);
    const auto c = ArrayConfig::isotropic(lambda, 64, 8);
    for (int t = 0; t < 300; ++t)
    {
        const std::size_t sx = (t % 3 == 0) ? 8 : (t % 3 == 1 ? 4 : 16);
        const std::size_t sy = sx == 16 ? 1 : 2;
        const SubArrayGrid g(c, sx, sy);
        const UserLocation u(rng.uniform(-4, 4), rng.uniform(-1, 1), rng.uniform(0.3, 4));
        const double w = rng.uniform();
        const auto p = subarray_powers(g, u, rho);
        const auto vr = detect_vr(g, u, rho, w);
        CHECK(vr.members.size() == oracle::min_cover(p, w * vr.target_power));
    }
}

TEST_CASE("VR antenna indices")
{
    const auto c = ArrayConfig::isotropic(lambda, 20, 6);
    const SubArrayGrid g(c, 4, 3);
    VisibilityRegion full;
    full.members.resize(g.count());
    std::iota(full.members.begin(), full.members.end(), std::size_t{0});
    const auto all = vr_antenna_indices(g, full);
    REQUIRE(all.size() == 120);
    for (std::size_t n = 0; n < 120; ++n)
        CHECK(all[n] == n);

    // Flat id 5 is (s_x = 1, s_y = 1): columns 5..9, rows 2..3.
    VisibilityRegion one;
    one.members = {5};
    const auto blk = vr_antenna_indices(g, one);
    REQUIRE(blk.size() == 10);
    for (std::size_t n : blk)
    {
        CHECK(n % 20 >= 5);
        CHECK(n % 20 < 10);
        CHECK(n / 20 >= 2);
        CHECK(n / 20 < 4);
    }
    CHECK(blk == subarray_antenna_indices(g, 5));

    std::multiset<std::size_t> un;
    for (std::size_t s = 0; s < g.count(); ++s)
        for (std::size_t n : subarray_antenna_indices(g, s))
            un.insert(n);
    CHECK(un.size() == 120);
    CHECK(std::set<std::size_t>(un.begin(), un.end()).size() == 120);
}

TEST_CASE("occupancy ratio")
{
    REQUIRE_THROWS_AS(occupancy_ratio({}, 10), DomainError);
    VisibilityRegion full, single;
    full.members = {0, 1, 2, 3};
    single.members = {2};
    CHECK(occupancy_ratio({full, full}, 4) == 1.0);
    CHECK(occupancy_ratio({single, single, single}, 4) == 0.25);

    ScenarioConfig cfg;
    double prev = 0;
    for (double w : {0.3, 0.5, 0.7, 0.8, 0.9, 0.99})
    {
        cfg.varpi = w;
        const double r = run_vr_trial(cfg, 5).r_oc;
        CHECK(r >= prev);
        prev = r;
    }
}

TEST_CASE("occupancy shrinks with M")
{
    ScenarioConfig base;
    base.varpi = 0.8;
    std::vector<double> mean;
    for (std::size_t m : {1000, 2500, 5000, 10000})
    {
        const auto cfg = with_total_antennas(base, m);
        double s = 0;
        for (std::uint64_t t = 0; t < 100; ++t)
            s += run_vr_trial(cfg, derive_seed(77, t)).r_oc;
        mean.push_back(s / 100);
    }
    for (std::size_t i = 1; i < mean.size(); ++i)
        CHECK(mean[i] <= mean[i - 1]);
    CHECK_THAT(mean.back(), WithinAbs(0.25, 0.10));
}
