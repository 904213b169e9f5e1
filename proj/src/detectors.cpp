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
#include "xlmimo/detectors.hpp"

#include "xlmimo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace xlmimo
{
    namespace
    {
        void check_user(const ChannelMatrix &h, std::size_t k)
        {
            if (k >= static_cast<std::size_t>(h.cols()))
                throw DomainError("user index out of range");
        }

        void check_rho(double rho)
        {
            if (!(std::isfinite(rho) && rho > 0.0))
                throw DomainError("rho must be positive and finite");
        }

        Eigen::MatrixXcd rows_of(const ChannelMatrix &h, const std::vector<std::size_t> &antennas)
        {
            if (antennas.empty())
                throw DomainError("antenna subset is empty");
            std::vector<Eigen::Index> rows(antennas.begin(), antennas.end());
            for (auto r : rows)
                if (r < 0 || r >= h.rows())
                    throw DomainError("antenna index out of range");
            return h(rows, Eigen::all);
        }

        Eigen::MatrixXcd columns_except(const Eigen::MatrixXcd &h, const std::vector<std::size_t> &cols, std::size_t k)
        {
            Eigen::MatrixXcd b(h.rows(), static_cast<Eigen::Index>(cols.size()) - 1);
            Eigen::Index j = 0;
            for (std::size_t c : cols)
                if (c != k)
                    b.col(j++) = h.col(static_cast<Eigen::Index>(c));
            return b;
        }

        std::vector<std::size_t> all_users(const ChannelMatrix &h)
        {
            std::vector<std::size_t> u(static_cast<std::size_t>(h.cols()));
            std::iota(u.begin(), u.end(), std::size_t{0});
            return u;
        }

        // P h with P the orthogonal projector onto the complement of span(b).
        Eigen::VectorXcd project_out(const Eigen::MatrixXcd &b, const Eigen::VectorXcd &target)
        {
            if (b.cols() == 0)
                return target;
            if (b.rows() <= b.cols())
                throw InsufficientAperture("antenna subset of size " + std::to_string(b.rows()) +
                                           " cannot null " + std::to_string(b.cols()) + " interferers");
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
            const Eigen::MatrixXcd r = qr.matrixQR().topRows(b.cols()).triangularView<Eigen::Upper>();
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
            const auto &s = svd.singularValues();
            const double smax = s(0), smin = s(s.size() - 1);
            if (!(smin > 0.0) || (smax / smin) * (smax / smin) > gram_condition_limit)
                throw SingularInterference("interference Gram matrix is ill-conditioned");
            const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(b.rows(), b.cols());
            return target - q * (q.adjoint() * target);
        }

        // R h with R = I - b ((1/rho) I + b^H b)^{-1} b^H.
        Eigen::VectorXcd regularized_project(const Eigen::MatrixXcd &b, const Eigen::VectorXcd &target, double rho)
        {
            if (b.cols() == 0)
                return target;
            Eigen::MatrixXcd gram = b.adjoint() * b;
            gram.diagonal().array() += 1.0 / rho;
            const Eigen::VectorXcd x = gram.ldlt().solve(b.adjoint() * target);
            return target - b * x;
        }

        DetectorWeights normalize(Eigen::VectorXcd v, const Eigen::VectorXcd &target, std::size_t k,
                                  std::vector<std::size_t> antennas, Scheme scheme)
        {
            const cdouble gain = v.dot(target); // v^H target
            if (!(std::abs(gain) > 1e-12 * target.squaredNorm()) || !(std::abs(gain) > 0.0))
                throw UnservableUser("user " + std::to_string(k) + " has no signal energy left after interference nulling");
            v /= std::conj(gain);
            return {k, std::move(v), std::move(antennas), scheme};
        }

        DetectorWeights zf_on(const Eigen::MatrixXcd &hs, const std::vector<std::size_t> &users, std::size_t k,
                              std::vector<std::size_t> antennas, Scheme scheme)
        {
            const Eigen::VectorXcd target = hs.col(static_cast<Eigen::Index>(k));
            return normalize(project_out(columns_except(hs, users, k), target), target, k, std::move(antennas), scheme);
        }

        DetectorWeights mmse_on(const Eigen::MatrixXcd &hs, std::size_t k, double rho, std::vector<std::size_t> antennas,
                                Scheme scheme, const std::vector<std::size_t> &users)
        {
            const Eigen::VectorXcd target = hs.col(static_cast<Eigen::Index>(k));
            return normalize(regularized_project(columns_except(hs, users, k), target, rho), target, k,
                             std::move(antennas), scheme);
        }
    }

    const char *to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::mrc:
            return "wa_mrc";
        case Scheme::zf:
            return "wa_zf";
        case Scheme::mmse:
            return "wa_mmse";
        case Scheme::vr_zf:
            return "vr_zf";
        case Scheme::vr_mmse:
            return "vr_mmse";
        case Scheme::pzf:
            return "up_pzf";
        }
        return "unknown";
    }

    std::vector<std::size_t> all_antennas(std::size_t m)
    {
        std::vector<std::size_t> a(m);
        std::iota(a.begin(), a.end(), std::size_t{0});
        return a;
    }

    DetectorWeights mrc_weights(const ChannelMatrix &h, std::size_t k)
    {
        check_user(h, k);
        const Eigen::VectorXcd hk = h.col(static_cast<Eigen::Index>(k));
        const double n2 = hk.squaredNorm();
        if (!(n2 > 0.0))
            throw DegenerateChannel("user " + std::to_string(k) + " has an all-zero channel");
        return {k, hk / n2, all_antennas(static_cast<std::size_t>(h.rows())), Scheme::mrc};
    }

    DetectorWeights zf_weights(const ChannelMatrix &h, std::size_t k)
    {
        check_user(h, k);
        if (!(h.col(static_cast<Eigen::Index>(k)).squaredNorm() > 0.0))
            throw DegenerateChannel("user " + std::to_string(k) + " has an all-zero channel");
        return zf_on(h, all_users(h), k, all_antennas(static_cast<std::size_t>(h.rows())), Scheme::zf);
    }

    DetectorWeights mmse_weights(const ChannelMatrix &h, std::size_t k, double rho)
    {
        check_user(h, k);
        check_rho(rho);
        if (!(h.col(static_cast<Eigen::Index>(k)).squaredNorm() > 0.0))
            throw DegenerateChannel("user " + std::to_string(k) + " has an all-zero channel");
        return mmse_on(h, k, rho, all_antennas(static_cast<std::size_t>(h.rows())), Scheme::mmse, all_users(h));
    }

    double sinr_closed(const ChannelMatrix &h, std::size_t k, Scheme scheme, double rho)
    {
        check_user(h, k);
        check_rho(rho);
        const Eigen::VectorXcd hk = h.col(static_cast<Eigen::Index>(k));
        const double n2 = hk.squaredNorm();
        if (!(n2 > 0.0))
            throw DegenerateChannel("user " + std::to_string(k) + " has an all-zero channel");
        switch (scheme)
        {
        case Scheme::mrc:
        {
            double interference = 0.0;
            for (Eigen::Index i = 0; i < h.cols(); ++i)
                if (i != static_cast<Eigen::Index>(k))
                    interference += std::norm(hk.dot(h.col(i))) / n2;
            return rho * n2 / (rho * interference + 1.0);
        }
        case Scheme::zf:
        {
            const auto p = project_out(columns_except(h, all_users(h), k), hk);
            return rho * std::real(hk.dot(p));
        }
        case Scheme::mmse:
        {
            const auto r = regularized_project(columns_except(h, all_users(h), k), hk, rho);
            return rho * std::real(hk.dot(r));
        }
        default:
            throw DomainError("closed-form SINR is defined for the whole-array MRC, ZF and MMSE detectors only");
        }
    }

    double sinr_of_weights(const DetectorWeights &w, const ChannelMatrix &h, std::size_t k, double rho)
    {
        check_user(h, k);
        check_rho(rho);
        if (static_cast<std::size_t>(w.weights.size()) != w.antennas.size())
            throw DomainError("weight length does not match the antenna subset");
        const double wn2 = w.weights.squaredNorm();
        if (wn2 == 0.0)
            return 0.0;
        const Eigen::MatrixXcd hs = rows_of(h, w.antennas);
        const Eigen::RowVectorXcd g = w.weights.adjoint() * hs;
        double interference = 0.0;
        for (Eigen::Index i = 0; i < g.size(); ++i)
            if (i != static_cast<Eigen::Index>(k))
                interference += std::norm(g(i));
        return rho * std::norm(g(static_cast<Eigen::Index>(k))) / (rho * interference + wn2);
    }

    DetectorWeights vr_zf_weights(const ChannelMatrix &h, const std::vector<std::size_t> &antennas, std::size_t k)
    {
        check_user(h, k);
        if (antennas.size() < static_cast<std::size_t>(h.cols()))
            throw InsufficientAperture("visibility region of user " + std::to_string(k) + " has " +
                                       std::to_string(antennas.size()) + " antennas for " +
                                       std::to_string(h.cols()) + " users");
        return zf_on(rows_of(h, antennas), all_users(h), k, antennas, Scheme::vr_zf);
    }

    DetectorWeights vr_mmse_weights(const ChannelMatrix &h, const std::vector<std::size_t> &antennas, std::size_t k,
                                    double rho)
    {
        check_user(h, k);
        check_rho(rho);
        return mmse_on(rows_of(h, antennas), k, rho, antennas, Scheme::vr_mmse, all_users(h));
    }

    DetectorWeights pzf_weights(const ChannelMatrix &h, const std::vector<std::size_t> &group,
                                const std::vector<std::size_t> &antennas, std::size_t i)
    {
        check_user(h, i);
        if (std::find(group.begin(), group.end(), i) == group.end())
            throw DomainError("user is not a member of the group");
        for (std::size_t j : group)
            check_user(h, j);
        if (antennas.size() < group.size())
            throw InsufficientAperture("visibility region of user " + std::to_string(i) + " is smaller than its group");
        return zf_on(rows_of(h, antennas), group, i, antennas, Scheme::pzf);
    }

    LinkMetrics sum_rate(const std::vector<double> &sinr)
    {
        LinkMetrics m;
        m.sinr = sinr;
        m.rate.reserve(sinr.size());
        for (double s : sinr)
        {
            if (!(s >= 0.0))
                throw DomainError("SINR must be non-negative");
            m.rate.push_back(std::log2(1.0 + s));
            m.sum_rate += m.rate.back();
        }
        return m;
    }

    double favorable_propagation_ratio(const ChannelVector &h_k, const ChannelVector &h_i)
    {
        if (h_k.size() != h_i.size())
            throw DomainError("channel vectors differ in length");
        const double n2 = h_k.squaredNorm();
        if (!(n2 > 0.0))
            throw DegenerateChannel("reference channel is all-zero");
        return std::norm(h_k.dot(h_i)) / n2;
    }

    double far_field_correlation(std::size_t m, double spacing_over_lambda, double sin_psi_k, double sin_psi_i, double xi)
    {
        const double md = static_cast<double>(m);
        const double theta = 2.0 * std::numbers::pi * spacing_over_lambda * (sin_psi_i - sin_psi_k);
        const double den = std::sin(0.5 * theta);
        if (std::abs(den) < 1e-300)
            return xi * md;
        const double num = std::sin(0.5 * md * theta);
        return xi * num * num / (md * den * den);
    }
}
