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
#ifndef XLMIMO_EXPERIMENT_HPP
#define XLMIMO_EXPERIMENT_HPP

#include "xlmimo/detectors.hpp"
#include "xlmimo/partition.hpp"
#include "xlmimo/scenario.hpp"
#include "xlmimo/visibility.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace xlmimo
{
    // Scenario file: one `key = value` per line, `#` starts a comment.
    //
    //   lambda            wavelength in metres                    0.1256
    //   m_x, m_y          antennas per axis                       1000, 10
    //   delta_factor      spacing in wavelengths                  0.5
    //   element_area_mode lambda_sq_over_4pi | explicit           lambda_sq_over_4pi
    //   a_x, a_y          element sides (explicit mode only)
    //   user_region       x_min,x_max,z_min,z_max                 -25,25,2,12
    //   k                 users                                   20
    //   seed              master seed                             1
    //   s_x, s_y          sub-arrays per axis                     100, 2
    //   rho_db            p / sigma^2 in dB                       90
    //   varpi             VR power fraction                       0.8
    //   s_ovp             overlap threshold                       0.6
    //   trials            Monte-Carlo trials                      100
    struct ScenarioConfig
    {
        double lambda = 0.1256;
        std::size_t m_x = 1000;
        std::size_t m_y = 10;
        double delta_factor = 0.5;
        bool explicit_area = false;
        double a_x = 0.0;
        double a_y = 0.0;
        UserRegion region{};
        std::size_t k = 20;
        std::uint64_t seed = 1;
        std::size_t s_x = 100;
        std::size_t s_y = 2;
        double rho_db = 90.0;
        double varpi = 0.8;
        double s_ovp = 0.6;
        std::size_t trials = 100;

        ArrayConfig array() const;
        SubArrayGrid grid() const;
        double rho() const;
    };

    ScenarioConfig parse_config(std::istream &in);
    ScenarioConfig load_config(const std::string &path);

    // Same array shape (M_y, S_y, M_x / S_x) scaled to m total antennas.
    ScenarioConfig with_total_antennas(const ScenarioConfig &base, std::size_t m);

    // Column-ordered text table; numeric cells are written with format_number.
    struct Table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;

        void add_row(std::vector<std::string> row);
    };

    // Shortest round-trip text with at most 17 significant digits, '.' decimal point.
    std::string format_number(double v);
    std::string format_number(std::uint64_t v);
    double parse_number(const std::string &s);

    void emit_csv(const Table &table, std::ostream &out);
    void emit_csv(const Table &table, const std::string &path);
    Table parse_csv(std::istream &in);

    // One Monte-Carlo drop: users, channels, VRs, grouping and the requested detectors.
    struct TrialOutcome
    {
        std::map<Scheme, double> sum_rate;
        std::map<Scheme, std::string> failure; // scheme -> error kind
        double r_oc = 0.0;
        double mean_members = 0.0;
        std::size_t anchors = 0;
        std::size_t edges = 0;
        std::size_t vr_fallbacks = 0; // VR-ZF users served by VR-MMSE
    };

    TrialOutcome run_trial(const ScenarioConfig &cfg, std::uint64_t seed, const std::vector<Scheme> &schemes);

    // VR statistics only (no channel matrix).
    struct VrTrial
    {
        double r_oc = 0.0;
        double mean_members = 0.0;
        std::size_t anchors = 0;
    };
    VrTrial run_vr_trial(const ScenarioConfig &cfg, std::uint64_t seed, bool with_partition = false);

    enum class SweepVariable
    {
        m,
        k,
        varpi,
        s_ovp
    };

    const char *to_string(SweepVariable v);

    struct ExperimentSpec
    {
        ScenarioConfig base;
        SweepVariable variable = SweepVariable::m;
        std::vector<double> grid;
        std::vector<Scheme> schemes;
        std::size_t trials = 100;
        std::uint64_t seed = 1;
    };

    struct ResultRecord
    {
        double sweep_value = 0.0;
        std::string scheme;
        std::string metric;
        double mean = 0.0;
        double std = 0.0;
        std::size_t trials = 0;
        std::size_t failed_trials = 0;
        std::uint64_t seed = 0;
    };

    ScenarioConfig apply_sweep(const ScenarioConfig &base, SweepVariable v, double value);

    // Trial t uses seed derive_seed(spec.seed, t) at every sweep point, so sweep points
    // share user drops. Records are ordered by (sweep value, scheme order, metric).
    std::vector<ResultRecord> run_experiment(const ExperimentSpec &spec);

    Table records_table(const std::vector<ResultRecord> &records, SweepVariable v);
    std::vector<ResultRecord> records_from_table(const Table &table);

    // Runs fn(i) for i in [0, n) on a worker pool; fn must only write to slot i.
    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn);

    // Table builders behind the CLI subcommands.
    struct SnrCurveOptions
    {
        std::vector<std::size_t> m_values;
        bool ula = false;
        Vec3 user{10.0, 10.0, 10.0};
        bool with_sum = true;
        std::size_t sum_limit = 1000000; // skip the brute-force sum above this M
    };
    Table snr_curve(const ScenarioConfig &cfg, const SnrCurveOptions &opt);

    struct BoundaryMapOptions
    {
        std::size_t m_x = 25;
        std::size_t m_y = 25;
        std::vector<double> u_x;
        std::vector<double> u_z;
        std::vector<double> v_t{0.9, 0.95};
    };
    Table boundary_map(const ScenarioConfig &cfg, const BoundaryMapOptions &opt);

    Table vr_stats(const ScenarioConfig &cfg, const std::vector<double> &varpi, const std::vector<std::size_t> &m_values,
                   std::size_t trials, std::uint64_t seed);

    Table sumrate_table(const ScenarioConfig &cfg, const std::vector<Scheme> &schemes, const std::vector<std::size_t> &m_values,
                        const std::vector<std::size_t> &k_values, std::size_t trials, std::uint64_t seed);

    Table complexity_table(const ScenarioConfig &cfg, const std::vector<std::size_t> &m_values, std::size_t trials,
                           std::uint64_t seed);

    struct PartitionReport
    {
        Table assignments; // user, anchor, group, vr_members
        std::size_t anchors = 0;
        std::size_t edges = 0;
        std::vector<std::size_t> group_sizes;
    };
    PartitionReport partition_report(const ScenarioConfig &cfg, std::uint64_t seed);

    // Figure presets fig5 .. fig12.
    struct FigurePreset
    {
        std::string name;
        std::string kind; // snr-curve, boundary-map, vr-stats, sumrate, complexity
        ScenarioConfig cfg;
        std::vector<std::size_t> m_values;
        std::vector<std::size_t> k_values;
        std::vector<double> varpi;
        std::vector<Scheme> schemes;
        SnrCurveOptions snr;
        BoundaryMapOptions boundary;
        std::size_t trials = 100;
    };

    FigurePreset preset_figure(const std::string &name);
    Table run_figure(const FigurePreset &preset, std::uint64_t seed);

    Scheme parse_scheme(const std::string &name);
}

#endif
