// Copyright 2026 The qmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmetro/fisher.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qmetro {

SldSet compute_sld(const StatePoint& point) {
    const int d = static_cast<int>(point.rho.rows());
    EigenSystem es = hermitian_eig(hermitian_part(point.rho));
    const double lmax = es.eigenvalues.maxCoeff();
    if (lmax <= 0) throw InvalidState("compute_sld: state has no positive eigenvalue");
    const double tau = 1e-12 * lmax;

    SldSet out;
    out.support_projector = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k)
        if (es.eigenvalues[k] > tau)
            out.support_projector += es.eigenvectors.col(k) * es.eigenvectors.col(k).adjoint();

    for (const Matrix& dr : point.partials) {
        Matrix a = es.eigenvectors.adjoint() * dr * es.eigenvectors;
        Matrix l = Matrix::Zero(d, d);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const double s = es.eigenvalues[j] + es.eigenvalues[k];
                if (s > tau) l(j, k) = 2.0 * a(j, k) / s;
            }
        out.operators.push_back(es.eigenvectors * l * es.eigenvectors.adjoint());
    }
    return out;
}

RealMatrix qfim_from(const Matrix& rho, const std::vector<Matrix>& slds) {
    const int n = static_cast<int>(slds.size());
    RealMatrix f(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f(i, j) = (rho * slds[i] * slds[j]).trace().real();
    return (f + f.transpose()) / 2.0;
}

RealMatrix uhlmann_from(const Matrix& rho, const std::vector<Matrix>& slds) {
    const int n = static_cast<int>(slds.size());
    RealMatrix u(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) u(i, j) = (rho * slds[i] * slds[j]).trace().imag() / 2.0;
    return (u - u.transpose()) / 2.0;
}

FisherReport fisher_report(const StatePoint& point) {
    const SldSet slds = compute_sld(point);
    const int n = static_cast<int>(slds.operators.size());

    FisherReport rep;
    rep.qfim = qfim_from(point.rho, slds.operators);
    rep.uhlmann = uhlmann_from(point.rho, slds.operators);

    const double qmax = (n > 0) ? rep.qfim.cwiseAbs().maxCoeff() : 0.0;
    rep.tolerance = 1e-8 * (1.0 + qmax);
    rep.weakly_commutative = (n == 0) || rep.uhlmann.cwiseAbs().maxCoeff() <= rep.tolerance;

    double comm = 0.0, pcomm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const Matrix c = slds.operators[i] * slds.operators[j] - slds.operators[j] * slds.operators[i];
            comm = std::max(comm, c.norm());
            pcomm = std::max(pcomm, (slds.support_projector * c * slds.support_projector).norm());
        }
    // Quasi-classicality asks whether SOME choice of SLDs commutes.  The
    // computed commutator answers that only where the SLDs are unique (full
    // rank); the fixed-gauge SLDs of a rank-1 state never commute, but pure
    // weakly commutative models always admit a commuting completion, so the
    // flag reduces to weak commutativity there.
    const int rank = static_cast<int>(std::lround(slds.support_projector.trace().real()));
    rep.quasi_classical = (rank == 1) ? rep.weakly_commutative : comm <= rep.tolerance;
    rep.partially_commutative = pcomm <= rep.tolerance;
    return rep;
}

CfimResult cfim(const StatePoint& point, const Povm& povm) {
    if (povm.dim() != point.rho.rows()) throw DimensionMismatch("cfim: POVM/state dimension");
    const OutcomeDistribution dist = outcome_distribution(point, povm);
    const int n = static_cast<int>(point.partials.size());
    constexpr double eps_p = 1e-12;

    CfimResult res;
    res.matrix = RealMatrix::Zero(n, n);
    for (int w = 0; w < povm.size(); ++w) {
        const double p = dist.probabilities[w];
        const RealVector g = dist.gradients.row(w);
        if (p > eps_p) {
            res.matrix += (g * g.transpose()) / p;
        } else if (g.cwiseAbs().maxCoeff() > std::sqrt(eps_p)) {
            res.divergent = true;
        }
        // otherwise the zero limit p'^2/p -> 0 applies and the outcome drops
    }
    return res;
}

Efficiency qcrb_efficiency(const StatePoint& point, const Povm& povm) {
    const FisherReport rep = fisher_report(point);
    const CfimResult c = cfim(point, povm);
    const int n = static_cast<int>(rep.qfim.rows());

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(rep.qfim);
    const double top = es.eigenvalues().maxCoeff();
    if (top <= 0) throw SingularQfim("qcrb_efficiency: QFIM is zero");
    const double thr = 1e-12 * top;

    Efficiency eff;
    std::vector<int> range_idx;
    for (int k = 0; k < n; ++k) {
        if (es.eigenvalues()[k] > thr)
            range_idx.push_back(k);
        else
            eff.null_directions.push_back(es.eigenvectors().col(k));
    }
    const int r = static_cast<int>(range_idx.size());
    RealMatrix q(n, r);
    RealVector lam(r);
    for (int k = 0; k < r; ++k) {
        q.col(k) = es.eigenvectors().col(range_idx[k]);
        lam[k] = es.eigenvalues()[range_idx[k]];
    }
    // Generalized problem on range(F_Q): eigs of Lam^{-1/2} Q' F_C Q Lam^{-1/2}.
    const RealMatrix b = lam.cwiseSqrt().cwiseInverse().asDiagonal() * (q.transpose() * c.matrix * q) *
                         lam.cwiseSqrt().cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<RealMatrix> eb((b + b.transpose()) / 2.0);
    eff.min_ratio = eb.eigenvalues().minCoeff();

    eff.diagonal_ratios.resize(n);
    for (int i = 0; i < n; ++i)
        eff.diagonal_ratios[i] = (rep.qfim(i, i) > thr) ? c.matrix(i, i) / rep.qfim(i, i)
                                                        : std::numeric_limits<double>::quiet_NaN();
    return eff;
}

}  // namespace qmetro
