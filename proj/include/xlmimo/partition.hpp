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
#ifndef XLMIMO_PARTITION_HPP
#define XLMIMO_PARTITION_HPP

#include "xlmimo/visibility.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace xlmimo
{
    // Simple undirected graph on vertices 0 .. K-1.
    class OverlapGraph
    {
    public:
        explicit OverlapGraph(std::size_t k);
        OverlapGraph(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>> &edges);

        void add_edge(std::size_t a, std::size_t b);

        std::size_t vertex_count() const { return adj_.size(); }
        std::size_t edge_count() const { return edges_; }
        std::size_t degree(std::size_t v) const { return adj_.at(v).size(); }
        const std::vector<std::size_t> &neighbors(std::size_t v) const { return adj_.at(v); }
        bool adjacent(std::size_t a, std::size_t b) const;

    private:
        std::vector<std::vector<std::size_t>> adj_; // sorted
        std::size_t edges_ = 0;
    };

    struct UserGrouping
    {
        std::vector<std::size_t> anchors;             // ascending
        std::vector<std::vector<std::size_t>> groups; // groups[g] is anchored by anchors[g], ascending members
        std::vector<std::size_t> group_of;            // user -> group position
    };

    enum class MisStrategy
    {
        // Min-degree greedy restarted from every vertex, each run polished by
        // (1,2)-swaps; the largest result wins (earliest start on ties).
        min_degree_multistart,
        // Degree-0 / degree-1 reductions, otherwise drop the maximum-degree vertex;
        // followed by a pass that adds any vertex left without an anchor neighbour.
        max_degree_peeling
    };

    enum class ComplexityScheme
    {
        wa_zf,
        vr_zf,
        up_pzf
    };

    // |B_a intersect B_b| / min(|B_a|, |B_b|)
    double overlap_ratio(const VisibilityRegion &a, const VisibilityRegion &b);

    // Edge (k, i) iff |B_k intersect B_i| >= s_ovp min(|B_k|, |B_i|).
    OverlapGraph build_overlap_graph(const std::vector<VisibilityRegion> &vrs, double s_ovp);

    // Maximal independent set, ascending.
    std::vector<std::size_t> independent_set(const OverlapGraph &g,
                                             MisStrategy strategy = MisStrategy::min_degree_multistart);

    // Each non-anchor joins the adjacent anchor with the largest overlap ratio (ties to
    // the smaller anchor). Throws DomainError if some user has no adjacent anchor.
    UserGrouping form_groups(const OverlapGraph &g, const std::vector<std::size_t> &anchors,
                             const std::vector<VisibilityRegion> &vrs);

    // Operation-count model with unit constants and base-2 logarithm:
    //   wa_zf  M^2 K^2 + K^4
    //   vr_zf  b^2 M^2 K^2 + K^4 + K S log S
    //   up_pzf b^2 M^2 K^2 / I + K^4 / I^3 + K S log S
    // with b = mean_members / S and I the number of groups.
    double complexity_estimate(ComplexityScheme scheme, double m, double k, double s, double mean_members,
                               double groups);

    const char *to_string(ComplexityScheme scheme);
}

#endif
