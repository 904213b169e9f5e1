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
#ifndef XLMIMO_DETECTORS_HPP
#define XLMIMO_DETECTORS_HPP

#include "xlmimo/em_channel.hpp"
#include "xlmimo/visibility.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace xlmimo
{
    enum class Scheme
    {
        mrc,
        zf,
        mmse,
        vr_zf,
        vr_mmse,
        pzf
    };

    const char *to_string(Scheme scheme);

    // Combining vector w for one user; the detected symbol is w^H y restricted to
    // the listed antennas. Normalised so that w^H h_user = 1 on that subset.
    struct DetectorWeights
    {
        std::size_t user = 0;
        Eigen::VectorXcd weights;
        std::vector<std::size_t> antennas; // ascending enumeration indices
        Scheme scheme = Scheme::mrc;
    };

    struct LinkMetrics
    {
        std::vector<double> sinr;
        std::vector<double> rate; // bits per channel use
        double sum_rate = 0.0;
    };

    // Ill-conditioning limit on the interference Gram matrix.
    inline constexpr double gram_condition_limit = 1e12;

    DetectorWeights mrc_weights(const ChannelMatrix &h, std::size_t k);
    DetectorWeights zf_weights(const ChannelMatrix &h, std::size_t k);
    DetectorWeights mmse_weights(const ChannelMatrix &h, std::size_t k, double rho);

    // Closed-form SINR of the whole-array detectors (noise variance 1, rho = p / sigma^2).
    double sinr_closed(const ChannelMatrix &h, std::size_t k, Scheme scheme, double rho);

    // rho |w^H h_k|^2 / (rho sum_{i != k} |w^H h_i|^2 + |w|^2), channels restricted to w.antennas.
    double sinr_of_weights(const DetectorWeights &w, const ChannelMatrix &h, std::size_t k, double rho);

    // ZF / MMSE computed on the rows in `antennas` only. ZF throws InsufficientAperture
    // when the subset has fewer than K antennas.
    DetectorWeights vr_zf_weights(const ChannelMatrix &h, const std::vector<std::size_t> &antennas, std::size_t k);
    DetectorWeights vr_mmse_weights(const ChannelMatrix &h, const std::vector<std::size_t> &antennas, std::size_t k,
                                    double rho);

    // Partial ZF for user i of `group`: nulls only the other group members, using
    // the antennas of user i's visibility region.
    DetectorWeights pzf_weights(const ChannelMatrix &h, const std::vector<std::size_t> &group,
                                const std::vector<std::size_t> &antennas, std::size_t i);

    LinkMetrics sum_rate(const std::vector<double> &sinr);

    // |h_k^H h_i|^2 / |h_k|^2
    double favorable_propagation_ratio(const ChannelVector &h_k, const ChannelVector &h_i);

    // Same ratio for two planar-wavefront ULA channels with common amplitude sqrt(xi):
    //   xi sin^2(M theta / 2) / (M sin^2(theta / 2)),  theta = 2 pi (delta / lambda) (sin psi_i - sin psi_k)
    double far_field_correlation(std::size_t m, double spacing_over_lambda, double sin_psi_k, double sin_psi_i, double xi);

    std::vector<std::size_t> all_antennas(std::size_t m);
}

#endif
