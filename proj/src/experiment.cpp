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
#include "xlmimo/experiment.hpp"

#include "xlmimo/em_channel.hpp"
#include "xlmimo/errors.hpp"
#include "xlmimo/field_boundary.hpp"
#include "xlmimo/random.hpp"
#include "xlmimo/snr.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace xlmimo
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &s, char sep)
        {
            std::vector<std::string> out;
            std::string cur;
            std::istringstream in(s);
            while (std::getline(in, cur, sep))
                out.push_back(trim(cur));
            if (!s.empty() && s.back() == sep)
                out.emplace_back();
            return out;
        }

        std::size_t parse_count(const std::string &s, const std::string &key)
        {
            std::uint64_t v = 0;
            const auto *end = s.data() + s.size();
            const auto r = std::from_chars(s.data(), end, v);
            if (r.ec != std::errc() || r.ptr != end)
                throw ConfigError("key '" + key + "' expects a non-negative integer, got '" + s + "'");
            return static_cast<std::size_t>(v);
        }

        double parse_real(const std::string &s, const std::string &key)
        {
            double v = 0.0;
            const auto *end = s.data() + s.size();
            const auto r = std::from_chars(s.data(), end, v);
            if (r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
                throw ConfigError("key '" + key + "' expects a finite number, got '" + s + "'");
            return v;
        }

        struct Stats
        {
            double mean = std::numeric_limits<double>::quiet_NaN();
            double std = std::numeric_limits<double>::quiet_NaN();
        };

        // Sample mean and (n - 1) standard deviation; std is 0 for a single value.
        Stats stats(const std::vector<double> &v)
        {
            Stats s;
            if (v.empty())
                return s;
            double sum = 0.0;
            for (double x : v)
                sum += x;
            s.mean = sum / static_cast<double>(v.size());
            double ss = 0.0;
            for (double x : v)
                ss += (x - s.mean) * (x - s.mean);
            s.std = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
            return s;
        }

        std::string fmt(std::size_t v) { return format_number(static_cast<std::uint64_t>(v)); }

        std::vector<VisibilityRegion> detect_all(const SubArrayGrid &grid, const std::vector<UserLocation> &users,
                                                 double rho, double varpi)
        {
            std::vector<VisibilityRegion> vrs;
            vrs.reserve(users.size());
            for (std::size_t k = 0; k < users.size(); ++k)
                vrs.push_back(detect_vr(grid, users[k], rho, varpi, k));
            return vrs;
        }

        double mean_members(const std::vector<VisibilityRegion> &vrs)
        {
            double s = 0.0;
            for (const auto &vr : vrs)
                s += static_cast<double>(vr.members.size());
            return s / static_cast<double>(vrs.size());
        }
    }

    // ---------------------------------------------------------------- configuration

    ArrayConfig ScenarioConfig::array() const
    {
        if (!explicit_area)
            return ArrayConfig::isotropic(lambda, m_x, m_y, delta_factor);
        const double d = delta_factor * lambda;
        return ArrayConfig(m_x, m_y, d, d, a_x, a_y, lambda);
    }

    SubArrayGrid ScenarioConfig::grid() const { return SubArrayGrid(array(), s_x, s_y); }

    double ScenarioConfig::rho() const { return std::pow(10.0, rho_db / 10.0); }

    ScenarioConfig parse_config(std::istream &in)
    {
        ScenarioConfig c;
        std::string line;
        std::size_t n = 0;
        while (std::getline(in, line))
        {
            ++n;
            if (const auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(n) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string val = trim(line.substr(eq + 1));
            if (key == "lambda")
                c.lambda = parse_real(val, key);
            else if (key == "m_x")
                c.m_x = parse_count(val, key);
            else if (key == "m_y")
                c.m_y = parse_count(val, key);
            else if (key == "delta_factor")
                c.delta_factor = parse_real(val, key);
            else if (key == "element_area_mode")
            {
                if (val == "lambda_sq_over_4pi")
                    c.explicit_area = false;
                else if (val == "explicit")
                    c.explicit_area = true;
                else
                    throw ConfigError("line " + std::to_string(n) + ": unknown element_area_mode '" + val + "'");
            }
            else if (key == "a_x")
                c.a_x = parse_real(val, key);
            else if (key == "a_y")
                c.a_y = parse_real(val, key);
            else if (key == "user_region")
            {
                const auto p = split(val, ',');
                if (p.size() != 4)
                    throw ConfigError("line " + std::to_string(n) + ": user_region expects x_min,x_max,z_min,z_max");
                c.region = {parse_real(p[0], key), parse_real(p[1], key), parse_real(p[2], key), parse_real(p[3], key)};
            }
            else if (key == "k")
                c.k = parse_count(val, key);
            else if (key == "seed")
                c.seed = parse_count(val, key);
            else if (key == "s_x")
                c.s_x = parse_count(val, key);
            else if (key == "s_y")
                c.s_y = parse_count(val, key);
            else if (key == "rho_db")
                c.rho_db = parse_real(val, key);
            else if (key == "varpi")
                c.varpi = parse_real(val, key);
            else if (key == "s_ovp")
                c.s_ovp = parse_real(val, key);
            else if (key == "trials")
                c.trials = parse_count(val, key);
            else
                throw ConfigError("line " + std::to_string(n) + ": unknown key '" + key + "'");
        }
        if (c.explicit_area && (c.a_x <= 0.0 || c.a_y <= 0.0))
            throw ConfigError("element_area_mode = explicit requires positive a_x and a_y");
        if (c.k == 0 || c.trials == 0)
            throw ConfigError("k and trials must be at least 1");
        return c;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw IoError("cannot open config file '" + path + "'");
        return parse_config(in);
    }

    ScenarioConfig with_total_antennas(const ScenarioConfig &base, std::size_t m)
    {
        if (base.m_x % base.s_x != 0)
            throw ConfigError("base configuration must have s_x dividing m_x");
        const std::size_t block = base.m_x / base.s_x;
        if (m == 0 || m % base.m_y != 0 || (m / base.m_y) % block != 0)
            throw ConfigError("M = " + std::to_string(m) + " is not compatible with M_y = " + std::to_string(base.m_y) +
                              " and sub-array width " + std::to_string(block));
        ScenarioConfig c = base;
        c.m_x = m / base.m_y;
        c.s_x = c.m_x / block;
        return c;
    }

    // ---------------------------------------------------------------- CSV

    void Table::add_row(std::vector<std::string> row)
    {
        if (row.size() != columns.size())
            throw DomainError("row width does not match the header");
        rows.push_back(std::move(row));
    }

    std::string format_number(double v)
    {
        if (std::isnan(v))
            return "nan";
        if (std::isinf(v))
            return v > 0 ? "inf" : "-inf";
        char buf[64];
        const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        std::string s(buf, r.ptr);
        // Prefer the shortest representation that round-trips.
        char sbuf[64];
        const auto rs = std::to_chars(sbuf, sbuf + sizeof sbuf, v);
        std::string shortest(sbuf, rs.ptr);
        return shortest.size() <= s.size() ? shortest : s;
    }

    std::string format_number(std::uint64_t v)
    {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    }

    double parse_number(const std::string &s)
    {
        if (s == "nan")
            return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        double v = 0.0;
        const auto *end = s.data() + s.size();
        const auto r = std::from_chars(s.data(), end, v);
        if (r.ec != std::errc() || r.ptr != end)
            throw IoError("malformed number '" + s + "'");
        return v;
    }

    void emit_csv(const Table &table, std::ostream &out)
    {
        if (table.columns.empty())
            throw DomainError("table has no columns");
        if (table.rows.empty())
            throw DomainError("table has no rows");
        auto line = [&out](const std::vector<std::string> &cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                if (i)
                    out << ',';
                out << cells[i];
            }
            out << '\n';
        };
        line(table.columns);
        for (const auto &r : table.rows)
            line(r);
        if (!out)
            throw IoError("write failed");
    }

    void emit_csv(const Table &table, const std::string &path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw IoError("cannot open '" + path + "' for writing");
        emit_csv(table, out);
        out.flush();
        if (!out)
            throw IoError("write to '" + path + "' failed");
    }

    Table parse_csv(std::istream &in)
    {
        Table t;
        std::string line;
        if (!std::getline(in, line))
            throw IoError("empty CSV input");
        t.columns = split(line, ',');
        while (std::getline(in, line))
        {
            if (trim(line).empty())
                continue;
            t.add_row(split(line, ','));
        }
        return t;
    }

    // ---------------------------------------------------------------- trials

    void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn)
    {
        const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto body = [&] {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try
                {
                    fn(i);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        };
        if (workers == 1)
            body();
        else
        {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back(body);
            for (auto &t : pool)
                t.join();
        }
        if (error)
            std::rethrow_exception(error);
    }

    TrialOutcome run_trial(const ScenarioConfig &cfg, std::uint64_t seed, const std::vector<Scheme> &schemes)
    {
        const ArrayConfig array = cfg.array();
        const SubArrayGrid grid(array, cfg.s_x, cfg.s_y);
        const double rho = cfg.rho();
        const auto users = sample_users(cfg.region, cfg.k, seed);
        const auto vrs = detect_all(grid, users, rho, cfg.varpi);

        TrialOutcome out;
        out.r_oc = occupancy_ratio(vrs, grid.count());
        out.mean_members = mean_members(vrs);

        std::vector<std::vector<std::size_t>> antennas;
        antennas.reserve(vrs.size());
        for (const auto &vr : vrs)
            antennas.push_back(vr_antenna_indices(grid, vr));

        const OverlapGraph graph = build_overlap_graph(vrs, cfg.s_ovp);
        const auto anchors = independent_set(graph);
        const UserGrouping grouping = form_groups(graph, anchors, vrs);
        out.anchors = anchors.size();
        out.edges = graph.edge_count();

        if (schemes.empty())
            return out;
        const ChannelMatrix h = channel_matrix(array, users);

        for (Scheme s : schemes)
        {
            try
            {
                std::vector<double> sinr(cfg.k);
                for (std::size_t k = 0; k < cfg.k; ++k)
                {
                    switch (s)
                    {
                    case Scheme::mrc:
                    case Scheme::zf:
                    case Scheme::mmse:
                        sinr[k] = sinr_closed(h, k, s, rho);
                        break;
                    case Scheme::vr_zf:
                        try
                        {
                            sinr[k] = sinr_of_weights(vr_zf_weights(h, antennas[k], k), h, k, rho);
                        }
                        catch (const InsufficientAperture &)
                        {
                            sinr[k] = sinr_of_weights(vr_mmse_weights(h, antennas[k], k, rho), h, k, rho);
                            ++out.vr_fallbacks;
                        }
                        break;
                    case Scheme::vr_mmse:
                        sinr[k] = sinr_of_weights(vr_mmse_weights(h, antennas[k], k, rho), h, k, rho);
                        break;
                    case Scheme::pzf:
                        sinr[k] = sinr_of_weights(pzf_weights(h, grouping.groups[grouping.group_of[k]], antennas[k], k), h,
                                                  k, rho);
                        break;
                    }
                }
                out.sum_rate[s] = sum_rate(sinr).sum_rate;
            }
            catch (const Error &e)
            {
                out.failure[s] = e.kind();
            }
        }
        return out;
    }

    VrTrial run_vr_trial(const ScenarioConfig &cfg, std::uint64_t seed, bool with_partition)
    {
        const SubArrayGrid grid = cfg.grid();
        const auto users = sample_users(cfg.region, cfg.k, seed);
        const auto vrs = detect_all(grid, users, cfg.rho(), cfg.varpi);
        VrTrial t;
        t.r_oc = occupancy_ratio(vrs, grid.count());
        t.mean_members = mean_members(vrs);
        if (with_partition)
            t.anchors = independent_set(build_overlap_graph(vrs, cfg.s_ovp)).size();
        return t;
    }

    // ---------------------------------------------------------------- experiments

    const char *to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::m:
            return "M";
        case SweepVariable::k:
            return "K";
        case SweepVariable::varpi:
            return "varpi";
        case SweepVariable::s_ovp:
            return "s_ovp";
        }
        return "unknown";
    }

    Scheme parse_scheme(const std::string &name)
    {
        for (Scheme s : {Scheme::mrc, Scheme::zf, Scheme::mmse, Scheme::vr_zf, Scheme::vr_mmse, Scheme::pzf})
            if (name == to_string(s))
                return s;
        throw DomainError("unknown scheme '" + name + "'");
    }

    ScenarioConfig apply_sweep(const ScenarioConfig &base, SweepVariable v, double value)
    {
        ScenarioConfig c = base;
        switch (v)
        {
        case SweepVariable::m:
            return with_total_antennas(base, static_cast<std::size_t>(std::llround(value)));
        case SweepVariable::k:
            c.k = static_cast<std::size_t>(std::llround(value));
            return c;
        case SweepVariable::varpi:
            c.varpi = value;
            return c;
        case SweepVariable::s_ovp:
            c.s_ovp = value;
            return c;
        }
        return c;
    }

    std::vector<ResultRecord> run_experiment(const ExperimentSpec &spec)
    {
        if (spec.grid.empty())
            throw DomainError("sweep grid is empty");
        if (spec.trials == 0)
            throw DomainError("at least one trial is required");
        std::vector<ResultRecord> out;
        for (double value : spec.grid)
        {
            const ScenarioConfig cfg = apply_sweep(spec.base, spec.variable, value);
            std::vector<TrialOutcome> trials(spec.trials);
            parallel_for(spec.trials, [&](std::size_t t) {
                trials[t] = run_trial(cfg, derive_seed(spec.seed, t), spec.schemes);
            });
            for (Scheme s : spec.schemes)
            {
                std::vector<double> v;
                std::size_t failed = 0;
                for (const auto &t : trials)
                {
                    if (const auto it = t.sum_rate.find(s); it != t.sum_rate.end())
                        v.push_back(it->second);
                    else
                        ++failed;
                }
                const Stats st = stats(v);
                out.push_back({value, to_string(s), "sum_rate", st.mean, st.std, spec.trials, failed, spec.seed});
            }
            std::vector<double> roc, anchors;
            for (const auto &t : trials)
            {
                roc.push_back(t.r_oc);
                anchors.push_back(static_cast<double>(t.anchors));
            }
            const Stats r = stats(roc), a = stats(anchors);
            out.push_back({value, "vr", "r_oc", r.mean, r.std, spec.trials, 0, spec.seed});
            out.push_back({value, "partition", "anchors", a.mean, a.std, spec.trials, 0, spec.seed});
        }
        return out;
    }

    Table records_table(const std::vector<ResultRecord> &records, SweepVariable v)
    {
        Table t;
        t.columns = {"sweep", "value", "scheme", "metric", "mean", "std", "trials", "failed_trials", "seed"};
        for (const auto &r : records)
            t.add_row({to_string(v), format_number(r.sweep_value), r.scheme, r.metric, format_number(r.mean),
                       format_number(r.std), fmt(r.trials), fmt(r.failed_trials), format_number(r.seed)});
        return t;
    }

    std::vector<ResultRecord> records_from_table(const Table &table)
    {
        const std::vector<std::string> expected{"sweep", "value", "scheme", "metric", "mean", "std", "trials", "failed_trials", "seed"};
        if (table.columns != expected)
            throw IoError("unexpected record table header");
        std::vector<ResultRecord> out;
        for (const auto &row : table.rows)
            out.push_back({parse_number(row[1]), row[2], row[3], parse_number(row[4]), parse_number(row[5]),
                           parse_count(row[6], "trials"), parse_count(row[7], "failed_trials"), parse_count(row[8], "seed")});
        return out;
    }

    // ---------------------------------------------------------------- subcommand tables

    Table snr_curve(const ScenarioConfig &cfg, const SnrCurveOptions &opt)
    {
        if (opt.m_values.empty())
            throw DomainError("no M values given");
        const UserLocation user(opt.user[0], opt.user[1], opt.user[2]);
        const double rho = cfg.rho();
        Table t;
        t.columns = {"M", "u_x", "u_y", "u_z", "snr_closed", "snr_sum", "snr_no_pol", "snr_far", "snr_asymptote",
                     "snr_asymptote_no_pol"};
        for (std::size_t m : opt.m_values)
        {
            std::size_t mx = m, my = 1;
            if (!opt.ula)
            {
                mx = my = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
                if (mx * my != m)
                    throw ConfigError("UPA sweep needs square M, got " + std::to_string(m));
            }
            ScenarioConfig c = cfg;
            c.m_x = mx;
            c.m_y = my;
            const SnrQuery q{c.array(), user, rho};
            const double closed = opt.ula ? snr_ula_closed(q) : snr_upa_closed(q);
            const std::string sum = opt.with_sum && m <= opt.sum_limit ? format_number(snr_upa_sum(q)) : "";
            double asym = 0.0, asym_np = 0.0;
            if (opt.ula)
            {
                asym = snr_ula_asymptotic(user.y(), user.z(), q.config, rho, true);
                asym_np = snr_ula_asymptotic(user.y(), user.z(), q.config, rho, false);
            }
            else
            {
                asym = snr_asymptotic(AsymptoteKind::discrete_polarized, q.config.occupation_ratio(), rho);
                asym_np = snr_asymptotic(AsymptoteKind::discrete_unpolarized, q.config.occupation_ratio(), rho);
            }
            t.add_row({fmt(m), format_number(user.x()), format_number(user.y()), format_number(user.z()),
                       format_number(closed), sum, format_number(snr_upa_no_polarization(q)),
                       format_number(snr_far_field_reference(q, FarFieldForm::aperture)), format_number(asym),
                       format_number(asym_np)});
        }
        return t;
    }

    Table boundary_map(const ScenarioConfig &cfg, const BoundaryMapOptions &opt)
    {
        if (opt.u_x.empty() || opt.u_z.empty() || opt.v_t.empty())
            throw DomainError("boundary map grid is empty");
        ScenarioConfig c = cfg;
        c.m_x = opt.m_x;
        c.m_y = opt.m_y;
        const ArrayConfig array = c.array();

        std::vector<double> power(opt.v_t.size() * opt.u_x.size());
        parallel_for(power.size(), [&](std::size_t i) {
            power[i] = power_boundary_distance(array, opt.u_x[i % opt.u_x.size()], 0.0, opt.v_t[i / opt.u_x.size()]);
        });

        Table t;
        t.columns = {"u_x", "u_z", "phase_boundary_m", "power_boundary_m", "v_t"};
        for (std::size_t iv = 0; iv < opt.v_t.size(); ++iv)
            for (std::size_t ix = 0; ix < opt.u_x.size(); ++ix)
                for (double uz : opt.u_z)
                {
                    const double ux = opt.u_x[ix];
                    const double psi_e = std::atan2(std::abs(ux), uz);
                    const double psi_a = ux < 0.0 ? std::numbers::pi : 0.0;
                    t.add_row({format_number(ux), format_number(uz),
                               format_number(phase_boundary_distance(array, psi_e, psi_a)),
                               format_number(power[iv * opt.u_x.size() + ix]), format_number(opt.v_t[iv])});
                }
        return t;
    }

    Table vr_stats(const ScenarioConfig &cfg, const std::vector<double> &varpi, const std::vector<std::size_t> &m_values,
                   std::size_t trials, std::uint64_t seed)
    {
        if (varpi.empty() || m_values.empty() || trials == 0)
            throw DomainError("vr-stats needs varpi values, M values and trials");
        Table t;
        t.columns = {"varpi", "M", "mean_r_oc", "std_r_oc", "mean_members", "trials"};
        for (double w : varpi)
            for (std::size_t m : m_values)
            {
                ScenarioConfig c = with_total_antennas(cfg, m);
                c.varpi = w;
                std::vector<VrTrial> r(trials);
                parallel_for(trials, [&](std::size_t i) { r[i] = run_vr_trial(c, derive_seed(seed, i)); });
                std::vector<double> roc, mem;
                for (const auto &x : r)
                {
                    roc.push_back(x.r_oc);
                    mem.push_back(x.mean_members);
                }
                const Stats a = stats(roc), b = stats(mem);
                t.add_row({format_number(w), fmt(m), format_number(a.mean), format_number(a.std), format_number(b.mean),
                           fmt(trials)});
            }
        return t;
    }

    Table sumrate_table(const ScenarioConfig &cfg, const std::vector<Scheme> &schemes, const std::vector<std::size_t> &m_values,
                        const std::vector<std::size_t> &k_values, std::size_t trials, std::uint64_t seed)
    {
        if (schemes.empty() || m_values.empty() || k_values.empty() || trials == 0)
            throw DomainError("sumrate needs schemes, M values, K values and trials");
        Table t;
        t.columns = {"scheme", "M", "K", "varpi", "s_ovp", "sum_rate_mean", "sum_rate_std", "trials", "failed_trials",
                     "vr_fallbacks"};
        for (std::size_t m : m_values)
            for (std::size_t k : k_values)
            {
                ScenarioConfig c = with_total_antennas(cfg, m);
                c.k = k;
                std::vector<TrialOutcome> r(trials);
                parallel_for(trials, [&](std::size_t i) { r[i] = run_trial(c, derive_seed(seed, i), schemes); });
                for (Scheme s : schemes)
                {
                    std::vector<double> v;
                    std::size_t failed = 0, fallbacks = 0;
                    for (const auto &x : r)
                    {
                        if (const auto it = x.sum_rate.find(s); it != x.sum_rate.end())
                            v.push_back(it->second);
                        else
                            ++failed;
                        if (s == Scheme::vr_zf)
                            fallbacks += x.vr_fallbacks;
                    }
                    const Stats st = stats(v);
                    t.add_row({to_string(s), fmt(m), fmt(k), format_number(c.varpi), format_number(c.s_ovp),
                               format_number(st.mean), format_number(st.std), fmt(trials), fmt(failed), fmt(fallbacks)});
                }
            }
        return t;
    }

    Table complexity_table(const ScenarioConfig &cfg, const std::vector<std::size_t> &m_values, std::size_t trials,
                           std::uint64_t seed)
    {
        if (m_values.empty() || trials == 0)
            throw DomainError("complexity needs M values and trials");
        Table t;
        t.columns = {"M", "K", "S", "mean_members", "mean_groups", "wa_zf", "vr_zf", "up_pzf"};
        for (std::size_t m : m_values)
        {
            const ScenarioConfig c = with_total_antennas(cfg, m);
            std::vector<VrTrial> r(trials);
            parallel_for(trials, [&](std::size_t i) { r[i] = run_vr_trial(c, derive_seed(seed, i), true); });
            std::vector<double> mem, grp;
            for (const auto &x : r)
            {
                mem.push_back(x.mean_members);
                grp.push_back(static_cast<double>(x.anchors));
            }
            const double b = stats(mem).mean, g = stats(grp).mean;
            const double s = static_cast<double>(c.s_x * c.s_y), md = static_cast<double>(m), kd = static_cast<double>(c.k);
            t.add_row({fmt(m), fmt(c.k), format_number(s), format_number(b), format_number(g),
                       format_number(complexity_estimate(ComplexityScheme::wa_zf, md, kd, s, b, g)),
                       format_number(complexity_estimate(ComplexityScheme::vr_zf, md, kd, s, b, g)),
                       format_number(complexity_estimate(ComplexityScheme::up_pzf, md, kd, s, b, g))});
        }
        return t;
    }

    PartitionReport partition_report(const ScenarioConfig &cfg, std::uint64_t seed)
    {
        const SubArrayGrid grid = cfg.grid();
        const auto users = sample_users(cfg.region, cfg.k, seed);
        const auto vrs = detect_all(grid, users, cfg.rho(), cfg.varpi);
        const OverlapGraph g = build_overlap_graph(vrs, cfg.s_ovp);
        const auto anchors = independent_set(g);
        const UserGrouping grouping = form_groups(g, anchors, vrs);

        PartitionReport rep;
        rep.anchors = anchors.size();
        rep.edges = g.edge_count();
        for (const auto &grp : grouping.groups)
            rep.group_sizes.push_back(grp.size());
        rep.assignments.columns = {"user", "u_x", "u_z", "anchor", "group", "vr_members", "degree"};
        for (std::size_t k = 0; k < cfg.k; ++k)
        {
            const bool is_anchor = std::binary_search(grouping.anchors.begin(), grouping.anchors.end(), k);
            rep.assignments.add_row({fmt(k), format_number(users[k].x()), format_number(users[k].z()),
                                     is_anchor ? "1" : "0", fmt(grouping.group_of[k]), fmt(vrs[k].members.size()),
                                     fmt(g.degree(k))});
        }
        return rep;
    }

    // ---------------------------------------------------------------- presets

    FigurePreset preset_figure(const std::string &name)
    {
        FigurePreset p;
        p.name = name;
        const std::vector<Scheme> wa_vr{Scheme::mrc, Scheme::zf, Scheme::mmse, Scheme::vr_zf, Scheme::vr_mmse};
        std::vector<std::size_t> m_sweep;
        for (std::size_t m = 1000; m <= 10000; m += 1000)
            m_sweep.push_back(m);

        if (name == "fig5")
        {
            p.kind = "snr-curve";
            for (std::size_t side : {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000})
                p.snr.m_values.push_back(side * side);
            p.snr.user = {10.0, 10.0, 10.0};
        }
        else if (name == "fig6")
        {
            p.kind = "snr-curve";
            p.snr.ula = true;
            for (std::size_t m = 10; m <= 10000000; m *= 10)
                p.snr.m_values.push_back(m);
            p.snr.user = {0.0, 0.0, 10.0};
        }
        else if (name == "fig7")
        {
            p.kind = "sumrate";
            p.m_values = m_sweep;
            p.k_values = {20};
            p.schemes = wa_vr;
        }
        else if (name == "fig8")
        {
            p.kind = "boundary-map";
            p.boundary.m_x = p.boundary.m_y = 25;
            for (int i = -20; i <= 20; ++i)
                p.boundary.u_x.push_back(0.5 * i);
            for (int i = 1; i <= 40; ++i)
                p.boundary.u_z.push_back(0.5 * i);
            p.boundary.v_t = {0.9, 0.95};
        }
        else if (name == "fig9")
        {
            p.kind = "vr-stats";
            p.m_values = {1000, 2500, 5000, 10000};
            p.varpi = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95};
        }
        else if (name == "fig10")
        {
            p.kind = "sumrate";
            p.cfg.varpi = 0.8;
            p.cfg.s_ovp = 0.6;
            p.m_values = {2500, 10000};
            p.k_values = {10, 20};
            p.schemes = {Scheme::zf, Scheme::vr_zf, Scheme::pzf};
        }
        else if (name == "fig11")
        {
            p.kind = "complexity";
            p.m_values = m_sweep;
        }
        else if (name == "fig12")
        {
            p.kind = "sumrate";
            p.m_values = {10000};
            p.k_values = {5, 10, 15, 20, 25, 30};
            p.schemes = {Scheme::mrc, Scheme::zf, Scheme::mmse, Scheme::vr_zf, Scheme::vr_mmse, Scheme::pzf};
        }
        else
            throw DomainError("unknown figure preset '" + name + "' (expected fig5 .. fig12)");
        return p;
    }

    Table run_figure(const FigurePreset &p, std::uint64_t seed)
    {
        if (p.kind == "snr-curve")
        {
            if (!p.snr.ula)
                return snr_curve(p.cfg, p.snr);
            Table all;
            for (double uy : {0.0, 5.0, 10.0})
            {
                SnrCurveOptions o = p.snr;
                o.user = {0.0, uy, 10.0};
                Table part = snr_curve(p.cfg, o);
                if (all.columns.empty())
                    all.columns = part.columns;
                for (auto &r : part.rows)
                    all.add_row(std::move(r));
            }
            return all;
        }
        if (p.kind == "boundary-map")
            return boundary_map(p.cfg, p.boundary);
        if (p.kind == "vr-stats")
            return vr_stats(p.cfg, p.varpi, p.m_values, p.trials, seed);
        if (p.kind == "sumrate")
            return sumrate_table(p.cfg, p.schemes, p.m_values, p.k_values, p.trials, seed);
        if (p.kind == "complexity")
            return complexity_table(p.cfg, p.m_values, p.trials, seed);
        throw DomainError("unknown preset kind '" + p.kind + "'");
    }
}
