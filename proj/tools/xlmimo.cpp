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
#include "xlmimo/errors.hpp"
#include "xlmimo/experiment.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    using namespace xlmimo;

    struct Globals
    {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> trials;
        std::string out;
    };

    ScenarioConfig base_config(const Globals &g)
    {
        ScenarioConfig c = g.config.empty() ? ScenarioConfig{} : load_config(g.config);
        if (g.seed)
            c.seed = *g.seed;
        if (g.trials)
            c.trials = *g.trials;
        return c;
    }

    void write(const Table &t, const Globals &g)
    {
        if (g.out.empty() || g.out == "-")
            emit_csv(t, std::cout);
        else
            emit_csv(t, g.out);
    }

    std::string quote(const std::string &s)
    {
        std::string q;
        for (char c : s)
        {
            if (c == '"' || c == '\\')
                q += '\\';
            q += c;
        }
        return '"' + q + '"';
    }

    std::vector<double> linspace(double a, double b, std::size_t n)
    {
        std::vector<double> v;
        for (std::size_t i = 0; i < n; ++i)
            v.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        return v;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"xlmimo: near-field XL-MIMO analysis and detection experiments"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "scenario file (key = value)");
    app.add_option("--seed", g.seed, "master seed");
    app.add_option("--trials", g.trials, "Monte-Carlo trials");
    app.add_option("--out", g.out, "output CSV path (default stdout)");

    // snr-curve
    auto *snr = app.add_subcommand("snr-curve", "single-user SNR versus M");
    std::vector<std::size_t> snr_m{100, 400, 2500, 10000, 40000, 250000, 1000000};
    bool snr_ula = false, snr_no_sum = false;
    std::vector<double> snr_user{10.0, 10.0, 10.0};
    snr->add_option("--m", snr_m, "antenna counts (UPA: perfect squares)");
    snr->add_flag("--ula", snr_ula, "linear array M_x = M, M_y = 1");
    snr->add_option("--user", snr_user, "user position u_x u_y u_z")->expected(3);
    snr->add_flag("--no-sum", snr_no_sum, "skip the brute-force element sum");

    // boundary-map
    auto *bmap = app.add_subcommand("boundary-map", "phase and power near/far-field boundaries on the u_y = 0 plane");
    std::size_t b_mx = 25, b_my = 25, b_nx = 41, b_nz = 40;
    double b_xmax = 10.0, b_zmax = 20.0;
    std::vector<double> b_vt{0.9, 0.95};
    bmap->add_option("--mx", b_mx, "antennas along x");
    bmap->add_option("--my", b_my, "antennas along y");
    bmap->add_option("--x-max", b_xmax, "u_x grid spans [-x_max, x_max]");
    bmap->add_option("--z-max", b_zmax, "u_z grid spans (0, z_max]");
    bmap->add_option("--nx", b_nx, "u_x grid points");
    bmap->add_option("--nz", b_nz, "u_z grid points");
    bmap->add_option("--vt", b_vt, "power thresholds in (0, 1)");

    // vr-stats
    auto *vrs = app.add_subcommand("vr-stats", "visibility-region occupancy versus varpi and M");
    std::vector<double> vr_varpi{0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
    std::vector<std::size_t> vr_m{1000, 2500, 5000, 10000};
    vrs->add_option("--varpi", vr_varpi, "VR power fractions");
    vrs->add_option("--m", vr_m, "antenna counts");

    // sumrate
    auto *sr = app.add_subcommand("sumrate", "Monte-Carlo sum rate of the detectors");
    std::vector<std::string> sr_schemes{"wa_zf"};
    std::vector<std::size_t> sr_m, sr_k;
    std::optional<double> sr_varpi, sr_sovp;
    sr->add_option("--scheme", sr_schemes, "wa_mrc, wa_zf, wa_mmse, vr_zf, vr_mmse, up_pzf");
    sr->add_option("--m", sr_m, "antenna counts");
    sr->add_option("--k", sr_k, "user counts");
    sr->add_option("--varpi", sr_varpi, "VR power fraction");
    sr->add_option("--s-ovp", sr_sovp, "overlap threshold in (0, 1]");

    // partition
    auto *part = app.add_subcommand("partition", "user grouping for one scenario drop");
    std::optional<double> p_sovp;
    part->add_option("--s-ovp", p_sovp, "overlap threshold in (0, 1]");

    // complexity
    auto *cx = app.add_subcommand("complexity", "operation-count model versus M");
    std::vector<std::size_t> cx_m{1000, 2000, 3000, 4000, 5000, 6000, 7000, 8000, 9000, 10000};
    cx->add_option("--m", cx_m, "antenna counts");

    // figure
    auto *fig = app.add_subcommand("figure", "run a figure preset");
    std::string fig_name;
    fig->add_option("--name", fig_name, "fig5 .. fig12")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e);
    }

    try
    {
        ScenarioConfig cfg = base_config(g);
        if (snr->parsed())
        {
            SnrCurveOptions o;
            o.m_values = snr_m;
            o.ula = snr_ula;
            o.user = {snr_user[0], snr_user[1], snr_user[2]};
            o.with_sum = !snr_no_sum;
            write(snr_curve(cfg, o), g);
        }
        else if (bmap->parsed())
        {
            BoundaryMapOptions o;
            o.m_x = b_mx;
            o.m_y = b_my;
            o.u_x = linspace(-b_xmax, b_xmax, b_nx);
            for (std::size_t i = 1; i <= b_nz; ++i)
                o.u_z.push_back(b_zmax * static_cast<double>(i) / static_cast<double>(b_nz));
            o.v_t = b_vt;
            write(boundary_map(cfg, o), g);
        }
        else if (vrs->parsed())
            write(vr_stats(cfg, vr_varpi, vr_m, cfg.trials, cfg.seed), g);
        else if (sr->parsed())
        {
            if (sr_varpi)
                cfg.varpi = *sr_varpi;
            if (sr_sovp)
                cfg.s_ovp = *sr_sovp;
            if (!(cfg.s_ovp > 0.0 && cfg.s_ovp <= 1.0))
                throw DomainError("--s-ovp must lie in (0, 1]");
            std::vector<Scheme> schemes;
            for (const auto &s : sr_schemes)
                schemes.push_back(parse_scheme(s));
            if (sr_m.empty())
                sr_m = {cfg.m_x * cfg.m_y};
            if (sr_k.empty())
                sr_k = {cfg.k};
            write(sumrate_table(cfg, schemes, sr_m, sr_k, cfg.trials, cfg.seed), g);
        }
        else if (part->parsed())
        {
            if (p_sovp)
                cfg.s_ovp = *p_sovp;
            if (!(cfg.s_ovp > 0.0 && cfg.s_ovp <= 1.0))
                throw DomainError("--s-ovp must lie in (0, 1]");
            const PartitionReport rep = partition_report(cfg, cfg.seed);
            write(rep.assignments, g);
            std::cerr << "users: " << cfg.k << "  anchors: " << rep.anchors << "  edges: " << rep.edges
                      << "  group sizes:";
            for (std::size_t s : rep.group_sizes)
                std::cerr << ' ' << s;
            std::cerr << '\n';
        }
        else if (cx->parsed())
            write(complexity_table(cfg, cx_m, cfg.trials, cfg.seed), g);
        else if (fig->parsed())
        {
            FigurePreset p = preset_figure(fig_name);
            if (!g.config.empty())
                p.cfg = cfg;
            if (g.trials)
                p.trials = *g.trials;
            write(run_figure(p, g.seed ? *g.seed : p.cfg.seed), g);
        }
    }
    catch (const Error &e)
    {
        std::cerr << "error: kind=" << e.kind() << " message=" << quote(e.what()) << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: kind=internal message=" << quote(e.what()) << '\n';
        return 3;
    }
    return 0;
}
