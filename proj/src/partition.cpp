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
#include "xlmimo/partition.hpp"

#include "xlmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xlmimo
{
    namespace
    {
        using Marks = std::vector<char>;

        // Count of v's neighbours in `set`.
        std::size_t count_in(const OverlapGraph &g, std::size_t v, const Marks &set)
        {
            std::size_t n = 0;
            for (std::size_t w : g.neighbors(v))
                n += set[w] ? 1 : 0;
            return n;
        }

        void take(const OverlapGraph &g, std::size_t v, Marks &in, Marks &alive)
        {
            in[v] = 1;
            alive[v] = 0;
            for (std::size_t w : g.neighbors(v))
                alive[w] = 0;
        }

        // Add every vertex that has no neighbour in the set, ascending.
        void complete(const OverlapGraph &g, Marks &in)
        {
            for (std::size_t v = 0; v < g.vertex_count(); ++v)
                if (!in[v] && count_in(g, v, in) == 0)
                    in[v] = 1;
        }

        Marks greedy_min_degree(const OverlapGraph &g, std::size_t first)
        {
            const std::size_t k = g.vertex_count();
            Marks in(k, 0), alive(k, 1);
            take(g, first, in, alive);
            for (;;)
            {
                std::size_t best = k, best_deg = 0;
                for (std::size_t v = 0; v < k; ++v)
                {
                    if (!alive[v])
                        continue;
                    const std::size_t d = count_in(g, v, alive);
                    if (best == k || d < best_deg)
                    {
                        best = v;
                        best_deg = d;
                    }
                }
                if (best == k)
                    return in;
                take(g, best, in, alive);
            }
        }

        // Replace one member x by two non-adjacent outsiders whose only member
        // neighbour is x, until no such swap exists.
        void swap_improve(const OverlapGraph &g, Marks &in)
        {
            const std::size_t k = g.vertex_count();
            bool changed = true;
            while (changed)
            {
                changed = false;
                for (std::size_t x = 0; x < k && !changed; ++x)
                {
                    if (!in[x])
                        continue;
                    std::vector<std::size_t> c;
                    for (std::size_t v : g.neighbors(x))
                        if (!in[v] && count_in(g, v, in) == 1)
                            c.push_back(v);
                    for (std::size_t i = 0; i < c.size() && !changed; ++i)
                        for (std::size_t j = i + 1; j < c.size() && !changed; ++j)
                            if (!g.adjacent(c[i], c[j]))
                            {
                                in[x] = 0;
                                in[c[i]] = 1;
                                in[c[j]] = 1;
                                complete(g, in);
                                changed = true;
                            }
                }
            }
        }

        Marks multistart(const OverlapGraph &g)
        {
            const std::size_t k = g.vertex_count();
            Marks best;
            std::size_t best_size = 0;
            for (std::size_t s = 0; s < k; ++s)
            {
                Marks in = greedy_min_degree(g, s);
                swap_improve(g, in);
                const auto size = static_cast<std::size_t>(std::count(in.begin(), in.end(), 1));
                if (best.empty() || size > best_size)
                {
                    best = std::move(in);
                    best_size = size;
                }
            }
            return best.empty() ? Marks(k, 0) : best;
        }

        Marks peeling(const OverlapGraph &g)
        {
            const std::size_t k = g.vertex_count();
            Marks in(k, 0), alive(k, 1);
            for (;;)
            {
                std::size_t zero = k, one = k, top = k, top_deg = 0;
                for (std::size_t v = 0; v < k; ++v)
                {
                    if (!alive[v])
                        continue;
                    const std::size_t d = count_in(g, v, alive);
                    if (d == 0 && zero == k)
                        zero = v;
                    if (d == 1 && one == k)
                        one = v;
                    if (top == k || d > top_deg)
                    {
                        top = v;
                        top_deg = d;
                    }
                }
                if (top == k)
                    break;
                if (zero != k)
                    take(g, zero, in, alive);
                else if (one != k)
                    take(g, one, in, alive);
                else
                    alive[top] = 0;
            }
            complete(g, in);
            return in;
        }
    }

    OverlapGraph::OverlapGraph(std::size_t k) : adj_(k) {}

    OverlapGraph::OverlapGraph(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>> &edges) : adj_(k)
    {
        for (const auto &[a, b] : edges)
            add_edge(a, b);
    }

    void OverlapGraph::add_edge(std::size_t a, std::size_t b)
    {
        if (a >= adj_.size() || b >= adj_.size())
            throw DomainError("edge endpoint out of range");
        if (a == b)
            throw DomainError("self-loops are not allowed");
        if (adjacent(a, b))
            return;
        adj_[a].insert(std::lower_bound(adj_[a].begin(), adj_[a].end(), b), b);
        adj_[b].insert(std::lower_bound(adj_[b].begin(), adj_[b].end(), a), a);
        ++edges_;
    }

    bool OverlapGraph::adjacent(std::size_t a, std::size_t b) const
    {
        const auto &n = adj_.at(a);
        return std::binary_search(n.begin(), n.end(), b);
    }

    double overlap_ratio(const VisibilityRegion &a, const VisibilityRegion &b)
    {
        if (a.members.empty() || b.members.empty())
            throw DomainError("visibility regions must be non-empty");
        std::vector<std::size_t> common;
        std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                              std::back_inserter(common));
        return static_cast<double>(common.size()) /
               static_cast<double>(std::min(a.members.size(), b.members.size()));
    }

    OverlapGraph build_overlap_graph(const std::vector<VisibilityRegion> &vrs, double s_ovp)
    {
        if (vrs.empty())
            throw DomainError("overlap graph needs at least one user");
        if (!(s_ovp >= 0.0 && s_ovp <= 1.0))
            throw DomainError("overlap threshold must lie in [0, 1]");
        for (const auto &vr : vrs)
            if (vr.members.empty())
                throw DomainError("visibility region of user " + std::to_string(vr.user) + " is empty");
        OverlapGraph g(vrs.size());
        for (std::size_t a = 0; a < vrs.size(); ++a)
            for (std::size_t b = a + 1; b < vrs.size(); ++b)
            {
                std::vector<std::size_t> common;
                std::set_intersection(vrs[a].members.begin(), vrs[a].members.end(), vrs[b].members.begin(),
                                      vrs[b].members.end(), std::back_inserter(common));
                const double m = static_cast<double>(std::min(vrs[a].members.size(), vrs[b].members.size()));
                if (static_cast<double>(common.size()) >= s_ovp * m)
                    g.add_edge(a, b);
            }
        return g;
    }

    std::vector<std::size_t> independent_set(const OverlapGraph &g, MisStrategy strategy)
    {
        const Marks in = strategy == MisStrategy::min_degree_multistart ? multistart(g) : peeling(g);
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < in.size(); ++v)
            if (in[v])
                out.push_back(v);
        return out;
    }

    UserGrouping form_groups(const OverlapGraph &g, const std::vector<std::size_t> &anchors,
                             const std::vector<VisibilityRegion> &vrs)
    {
        const std::size_t k = g.vertex_count();
        if (vrs.size() != k)
            throw DomainError("one visibility region per vertex is required");
        UserGrouping out;
        out.anchors = anchors;
        std::sort(out.anchors.begin(), out.anchors.end());
        out.groups.resize(out.anchors.size());
        out.group_of.assign(k, k);
        for (std::size_t a = 0; a < out.anchors.size(); ++a)
        {
            const std::size_t v = out.anchors[a];
            if (v >= k)
                throw DomainError("anchor out of range");
            if (out.group_of[v] != k)
                throw DomainError("duplicate anchor");
            for (std::size_t b = 0; b < a; ++b)
                if (g.adjacent(v, out.anchors[b]))
                    throw DomainError("anchors must be pairwise non-adjacent");
            out.group_of[v] = a;
        }
        for (std::size_t v = 0; v < k; ++v)
        {
            if (out.group_of[v] != k)
                continue;
            std::size_t best = k;
            double best_ratio = -1.0;
            for (std::size_t a = 0; a < out.anchors.size(); ++a)
            {
                if (!g.adjacent(v, out.anchors[a]))
                    continue;
                const double r = overlap_ratio(vrs[v], vrs[out.anchors[a]]);
                if (r > best_ratio)
                {
                    best = a;
                    best_ratio = r;
                }
            }
            if (best == k)
                throw DomainError("user " + std::to_string(v) + " has no adjacent anchor; the anchor set is not maximal");
            out.group_of[v] = best;
        }
        for (std::size_t v = 0; v < k; ++v)
            out.groups[out.group_of[v]].push_back(v);
        return out;
    }

    double complexity_estimate(ComplexityScheme scheme, double m, double k, double s, double mean_members, double groups)
    {
        if (!(m > 0.0 && k > 0.0 && s > 0.0 && mean_members > 0.0 && groups > 0.0))
            throw DomainError("complexity arguments must be positive");
        const double b = mean_members / s;
        const double sort = k * s * std::log2(s);
        switch (scheme)
        {
        case ComplexityScheme::wa_zf:
            return m * m * k * k + std::pow(k, 4);
        case ComplexityScheme::vr_zf:
            return b * b * m * m * k * k + std::pow(k, 4) + sort;
        case ComplexityScheme::up_pzf:
            return b * b * m * m * k * k / groups + std::pow(k, 4) / std::pow(groups, 3) + sort;
        }
        throw DomainError("unknown complexity scheme");
    }

    const char *to_string(ComplexityScheme scheme)
    {
        switch (scheme)
        {
        case ComplexityScheme::wa_zf:
            return "wa_zf";
        case ComplexityScheme::vr_zf:
            return "vr_zf";
        case ComplexityScheme::up_pzf:
            return "up_pzf";
        }
        return "unknown";
    }
}
