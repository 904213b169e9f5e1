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
#include "xlmimo/detectors.hpp"
#include "xlmimo/em_channel.hpp"
#include "xlmimo/errors.hpp"
#include "xlmimo/partition.hpp"
#include "xlmimo/visibility.hpp"

#include <cmath>
#include <complex>

using namespace xlmimo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const double lambda = 0.1256;

    std::complex<double> gain(const DetectorWeights &w, const ChannelMatrix &h, Eigen::Index user)
    {
        std::complex<double> g = 0;
        for (std::size_t n = 0; n < w.antennas.size(); ++n)
            g += std::conj(w.weights(static_cast<Eigen::Index>(n))) * h(static_cast<Eigen::Index>(w.antennas[n]), user);
        return g;
    }
}

TEST_CASE("MRC")
{
    xlmimo::Rng rng(1);
    const auto h = oracle::gaussian_matrix(32, 3, rng);
    for (std::size_t k = 0; k < 3; ++k)
        CHECK_THAT(std::abs(gain(mrc_weights(h, k), h, static_cast<Eigen::Index>(k)) - 1.0), WithinAbs(0.0, 1e-12));

    const auto h1 = oracle::gaussian_matrix(16, 1, rng);
    const double rho = 3.0;
    CHECK_THAT(sinr_of_weights(mrc_weights(h1, 0), h1, 0, rho), WithinRel(rho * h1.squaredNorm(), 1e-12));

    // Hand-built orthogonal pair.
    ChannelMatrix o = ChannelMatrix::Zero(4, 2);
    o(0, 0) = 1.0;
    o(1, 0) = {0.0, 2.0};
    o(2, 1) = 1.5;
    o(3, 1) = -0.5;
    CHECK(std::abs(gain(mrc_weights(o, 0), o, 1)) == 0.0);
    CHECK_THAT(sinr_closed(o, 0, Scheme::mrc, rho), WithinRel(rho * 5.0, 1e-14));

    ChannelMatrix z = ChannelMatrix::Zero(4, 2);
    z(0, 1) = 1.0;
    REQUIRE_THROWS_AS(mrc_weights(z, 0), DegenerateChannel);
    REQUIRE_THROWS_AS(mrc_weights(z, 2), DomainError);
}

TEST_CASE("ZF")
{
    xlmimo::Rng rng(2);
    const auto h = oracle::gaussian_matrix(64, 4, rng);
    const double rho = 100.0;
    for (std::size_t k = 0; k < 4; ++k)
    {
        const auto w = zf_weights(h, k);
        CHECK_THAT(std::abs(gain(w, h, static_cast<Eigen::Index>(k)) - 1.0), WithinAbs(0.0, 1e-9));
        for (Eigen::Index i = 0; i < 4; ++i)
            if (i != static_cast<Eigen::Index>(k))
                CHECK(std::abs(gain(w, h, i)) <= 1e-8);
        const double closed = sinr_closed(h, k, Scheme::zf, rho);
        CHECK_THAT(sinr_of_weights(w, h, k, rho), WithinRel(closed, 1e-9));
        CHECK_THAT(closed, WithinRel(oracle::zf_sinr(h, static_cast<Eigen::Index>(k), rho), 1e-9));
    }

    const auto h1 = oracle::gaussian_matrix(10, 1, rng);
    CHECK(zf_weights(h1, 0).weights.isApprox(mrc_weights(h1, 0).weights, 1e-12));

    // Duplicated interferers make the Gram matrix singular.
    ChannelMatrix d(16, 3);
    d.col(0) = oracle::gaussian_matrix(16, 1, rng);
    d.col(1) = oracle::gaussian_matrix(16, 1, rng);
    d.col(2) = d.col(1);
    REQUIRE_THROWS_AS(zf_weights(d, 0), SingularInterference);
    // Target inside the interference span.
    ChannelMatrix s(16, 3);
    s.col(1) = oracle::gaussian_matrix(16, 1, rng);
    s.col(2) = oracle::gaussian_matrix(16, 1, rng);
    s.col(0) = s.col(1) + 2.0 * s.col(2);
    REQUIRE_THROWS_AS(zf_weights(s, 0), UnservableUser);
    // Fewer antennas than users.
    REQUIRE_THROWS_AS(zf_weights(oracle::gaussian_matrix(3, 4, rng), 0), InsufficientAperture);
}

TEST_CASE("MMSE")
{
    xlmimo::Rng rng(3);
    const auto h = oracle::gaussian_matrix(24, 5, rng);
    for (std::size_t k = 0; k < 5; ++k)
    {
        const auto m = mmse_weights(h, k, 1e15), z = zf_weights(h, k);
        CHECK((m.weights - z.weights).norm() <= 1e-4 * z.weights.norm());
        const double rho = 10.0;
        CHECK_THAT(sinr_closed(h, k, Scheme::mmse, rho), WithinRel(oracle::mmse_sinr(h, static_cast<Eigen::Index>(k), rho), 1e-9));
        CHECK_THAT(sinr_of_weights(mmse_weights(h, k, rho), h, k, rho), WithinRel(sinr_closed(h, k, Scheme::mmse, rho), 1e-9));
    }
    const auto h1 = oracle::gaussian_matrix(10, 1, rng);
    CHECK(mmse_weights(h1, 0, 5.0).weights.isApprox(mrc_weights(h1, 0).weights, 1e-12));
    REQUIRE_THROWS_AS(mmse_weights(h1, 0, 0.0), DomainError);
}

TEST_CASE("detector ordering and closed-form consistency")
{
    xlmimo::Rng rng(4);
    for (int t = 0; t < 100; ++t)
    {
        const auto m = static_cast<Eigen::Index>(8 + t % 40);
        const auto k = static_cast<Eigen::Index>(1 + t % 6);
        const auto h = oracle::gaussian_matrix(m, k, rng);
        const double rho = std::pow(10.0, rng.uniform(-1, 3));
        for (std::size_t u = 0; u < static_cast<std::size_t>(k); ++u)
        {
            const double mrc = sinr_closed(h, u, Scheme::mrc, rho);
            const double zf = sinr_closed(h, u, Scheme::zf, rho);
            const double mmse = sinr_closed(h, u, Scheme::mmse, rho);
            CHECK(mmse >= zf * (1 - 1e-9));
            CHECK(mmse >= mrc * (1 - 1e-9));
            CHECK_THAT(sinr_of_weights(mrc_weights(h, u), h, u, rho), WithinRel(mrc, 1e-9));
            CHECK_THAT(sinr_of_weights(zf_weights(h, u), h, u, rho), WithinRel(zf, 1e-9));
            CHECK_THAT(sinr_of_weights(mmse_weights(h, u, rho), h, u, rho), WithinRel(mmse, 1e-9));
        }
    }
}

TEST_CASE("closed-form SINR special cases")
{
    xlmimo::Rng rng(5);
    const auto h1 = oracle::gaussian_matrix(12, 1, rng);
    for (auto s : {Scheme::mrc, Scheme::zf, Scheme::mmse})
        CHECK_THAT(sinr_closed(h1, 0, s, 7.0), WithinRel(7.0 * h1.squaredNorm(), 1e-12));
    REQUIRE_THROWS_AS(sinr_closed(h1, 0, Scheme::vr_zf, 7.0), DomainError);

    // Two users sharing one channel: interference term equals ||h||^2.
    ChannelMatrix two(12, 2);
    two.col(0) = h1.col(0);
    two.col(1) = h1.col(0);
    const double n2 = h1.squaredNorm(), rho = 2.0;
    CHECK_THAT(sinr_closed(two, 0, Scheme::mrc, rho), WithinRel(rho * n2 / (rho * n2 + 1), 1e-12));
}

TEST_CASE("generic SINR evaluator")
{
    xlmimo::Rng rng(6);
    const auto h = oracle::gaussian_matrix(20, 3, rng);
    auto w = zf_weights(h, 1);
    const double base = sinr_of_weights(w, h, 1, 4.0);
    w.weights *= std::complex<double>(-0.3, 2.2);
    CHECK_THAT(sinr_of_weights(w, h, 1, 4.0), WithinRel(base, 1e-12));
    w.weights.setZero();
    CHECK(sinr_of_weights(w, h, 1, 4.0) == 0.0);
    w.weights.resize(3);
    REQUIRE_THROWS_AS(sinr_of_weights(w, h, 1, 4.0), DomainError);
}

TEST_CASE("VR-restricted detectors")
{
    xlmimo::Rng rng(7);
    const auto h = oracle::gaussian_matrix(60, 5, rng);
    const auto all = all_antennas(60);
    const auto full = vr_zf_weights(h, all, 2);
    CHECK(full.weights == zf_weights(h, 2).weights);
    CHECK(full.scheme == Scheme::vr_zf);

    std::vector<std::size_t> sub;
    for (std::size_t n = 10; n < 40; n += 2)
        sub.push_back(n);
    for (std::size_t k = 0; k < 5; ++k)
    {
        const auto w = vr_zf_weights(h, sub, k);
        CHECK(w.antennas == sub);
        CHECK_THAT(std::abs(gain(w, h, static_cast<Eigen::Index>(k)) - 1.0), WithinAbs(0.0, 1e-9));
        for (Eigen::Index i = 0; i < 5; ++i)
            if (i != static_cast<Eigen::Index>(k))
                CHECK(std::abs(gain(w, h, i)) <= 1e-8);
        const auto m = vr_mmse_weights(h, sub, k, 50.0);
        CHECK_THAT(std::abs(gain(m, h, static_cast<Eigen::Index>(k)) - 1.0), WithinAbs(0.0, 1e-9));
        CHECK(sinr_of_weights(m, h, k, 50.0) >= sinr_of_weights(w, h, k, 50.0) * (1 - 1e-9));
    }
    REQUIRE_THROWS_AS(vr_zf_weights(h, {1, 2, 3}, 0), InsufficientAperture);
    CHECK_NOTHROW(vr_mmse_weights(h, {1, 2, 3}, 0, 10.0));
    REQUIRE_THROWS_AS(vr_zf_weights(h, {1, 2, 3, 4, 99}, 0), DomainError);
}

TEST_CASE("partial ZF")
{
    xlmimo::Rng rng(8);
    const auto h = oracle::gaussian_matrix(40, 6, rng);
    std::vector<std::size_t> sub{0, 3, 4, 7, 9, 12, 20, 21, 33};

    // Singleton group: matched filter on the VR with unit gain.
    const auto s = pzf_weights(h, {2}, sub, 2);
    Eigen::VectorXcd hs(static_cast<Eigen::Index>(sub.size()));
    for (std::size_t n = 0; n < sub.size(); ++n)
        hs(static_cast<Eigen::Index>(n)) = h(static_cast<Eigen::Index>(sub[n]), 2);
    CHECK(s.weights.isApprox(hs / hs.squaredNorm(), 1e-12));

    std::vector<std::size_t> users{0, 1, 2, 3, 4, 5};
    CHECK(pzf_weights(h, users, all_antennas(40), 4).weights.isApprox(zf_weights(h, 4).weights, 1e-12));

    const std::vector<std::size_t> group{1, 3, 5};
    for (std::size_t i : group)
    {
        const auto w = pzf_weights(h, group, sub, i);
        CHECK_THAT(std::abs(gain(w, h, static_cast<Eigen::Index>(i)) - 1.0), WithinAbs(0.0, 1e-9));
        for (std::size_t j : group)
            if (j != i)
                CHECK(std::abs(gain(w, h, static_cast<Eigen::Index>(j))) <= 1e-8);
    }
    REQUIRE_THROWS_AS(pzf_weights(h, group, sub, 0), DomainError);
    REQUIRE_THROWS_AS(pzf_weights(h, group, {1, 2}, 1), InsufficientAperture);
}

TEST_CASE("partial ZF leakage on near-field scenarios")
{
    const auto cfg = ArrayConfig::isotropic(lambda, 1000, 10);
    const SubArrayGrid grid(cfg, 100, 2);
    const double rho = 1e9;
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
    {
        const auto users = sample_users(UserRegion{}, 20, seed);
        const auto h = channel_matrix(cfg, users);
        std::vector<VisibilityRegion> vrs;
        for (std::size_t k = 0; k < users.size(); ++k)
            vrs.push_back(detect_vr(grid, users[k], rho, 0.8, k));
        const auto g = build_overlap_graph(vrs, 0.6);
        const auto grouping = form_groups(g, independent_set(g), vrs);
        double leak = 0, pre = 0;
        for (const auto &group : grouping.groups)
            for (std::size_t i : group)
            {
                const auto ant = vr_antenna_indices(grid, vrs[i]);
                const auto w = pzf_weights(h, group, ant, i);
                const auto mf = pzf_weights(h, {i}, ant, i);
                for (std::size_t j = 0; j < users.size(); ++j)
                {
                    const bool in = std::find(group.begin(), group.end(), j) != group.end();
                    if (!in)
                        leak += std::norm(gain(w, h, static_cast<Eigen::Index>(j)));
                    else if (j != i)
                        pre += std::norm(gain(mf, h, static_cast<Eigen::Index>(j)));
                }
            }
        CHECK(leak < pre);
    }
}

TEST_CASE("sum rate")
{
    CHECK(sum_rate({0, 0, 0}).sum_rate == 0.0);
    CHECK(sum_rate({1.0}).sum_rate == 1.0);
    const auto m = sum_rate({3.0, 7.0});
    CHECK(m.rate == std::vector<double>{2.0, 3.0});
    CHECK(m.sum_rate == 5.0);
    REQUIRE_THROWS_AS(sum_rate({-1.0}), DomainError);
}

TEST_CASE("favorable propagation")
{
    xlmimo::Rng rng(9);
    const Eigen::VectorXcd h = oracle::gaussian_matrix(30, 1, rng);
    CHECK_THAT(favorable_propagation_ratio(h, h), WithinRel(h.squaredNorm(), 1e-12));
    REQUIRE_THROWS_AS(favorable_propagation_ratio(Eigen::VectorXcd::Zero(30), h), DegenerateChannel);
    REQUIRE_THROWS_AS(favorable_propagation_ratio(h, Eigen::VectorXcd::Zero(3)), DomainError);

    // Near-field users along one direction keep a non-vanishing correlation as M grows.
    const auto uk = UserLocation::from_polar(5.0, 0.4, 0.0);
    const auto ui = UserLocation::from_polar(9.0, 0.4, 0.0);
    std::vector<double> ratio;
    for (std::size_t m : {100, 1000, 10000})
    {
        const auto c = ArrayConfig::isotropic(lambda, m, 1);
        ratio.push_back(favorable_propagation_ratio(channel_vector(c, uk), channel_vector(c, ui)));
    }
    CHECK(ratio[2] > 0.1 * ratio[0]);
    CHECK(ratio[1] > 0.0);
}
