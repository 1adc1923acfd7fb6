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

#include "qmetro/povm.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qmetro/fisher.hpp"

namespace qmetro {

Povm Povm::from_vectors(const std::vector<Vector>& vecs, double weight, const std::string& label_prefix) {
    Povm p;
    int k = 0;
    for (const Vector& v : vecs) {
        p.elements.push_back(weight * (v * v.adjoint()));
        p.labels.push_back(label_prefix + std::to_string(k++));
    }
    return p;
}

Povm tensor_product(const Povm& a, const Povm& b) {
    Povm out;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            out.elements.push_back(kron(a.elements[i], b.elements[j]));
            out.labels.push_back(a.labels[i] + "*" + b.labels[j]);
        }
    return out;
}

bool PovmReport::ok(double complete_tol, double eig_floor) const {
    if (completeness_defect > complete_tol) return false;
    for (double m : min_eigenvalues)
        if (m < eig_floor) return false;
    return true;
}

PovmReport validate_povm(const Povm& povm) {
    if (povm.elements.empty()) throw InvalidSpec("validate_povm: empty POVM");
    const int d = povm.dim();
    PovmReport rep;
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& e : povm.elements) {
        if (e.rows() != d || e.cols() != d) throw DimensionMismatch("validate_povm: mixed dimensions");
        sum += e;
        Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(e));
        rep.min_eigenvalues.push_back(es.eigenvalues().minCoeff());
        const double top = es.eigenvalues().maxCoeff();
        int rank = 0;
        for (int k = 0; k < d; ++k)
            if (es.eigenvalues()[k] > 1e-10 * std::max(top, 1.0)) ++rank;
        rep.ranks.push_back(rank);
    }
    rep.completeness_defect = (sum - Matrix::Identity(d, d)).norm();
    return rep;
}

OutcomeDistribution outcome_distribution(const StatePoint& point, const Povm& povm) {
    if (povm.dim() != point.rho.rows()) throw DimensionMismatch("outcome_distribution: POVM/state dimension");
    const int m = povm.size();
    const int n = static_cast<int>(point.partials.size());
    OutcomeDistribution out;
    out.labels = povm.labels;
    out.probabilities.resize(m);
    out.gradients.resize(m, n);
    for (int w = 0; w < m; ++w) {
        double p = (povm.elements[w] * point.rho).trace().real();
        if (p < 0.0 && p >= -1e-12) p = 0.0;
        out.probabilities[w] = p;
        for (int i = 0; i < n; ++i)
            out.gradients(w, i) = (povm.elements[w] * point.partials[i]).trace().real();
    }
    return out;
}

namespace {

// Real-proportionality b ~ ratio * a with real ratio, tested against the
// larger-norm vector as reference; both-zero pairs pass vacuously.
double real_collinearity_defect(const Vector& a, const Vector& b, double* ratio) {
    const double na = a.norm(), nb = b.norm();
    *ratio = std::numeric_limits<double>::quiet_NaN();
    if (na <= 1e-10 && nb <= 1e-10) {
        *ratio = 0.0;
        return 0.0;
    }
    if (na >= nb) {
        const Complex c = a.dot(b) / (na * na);  // least-squares b ~ c a
        *ratio = c.real();
        return (b - c.real() * a).norm() / na;
    }
    double r = 0.0;
    const double defect = real_collinearity_defect(b, a, &r);
    *ratio = (std::abs(r) > 1e-300) ? 1.0 / r : std::numeric_limits<double>::infinity();
    return defect;
}

}  // namespace

std::vector<YangElementVerdict> yang_optimality_check(const StatePoint& point, const SldSet& slds,
                                                      const Povm& povm) {
    const int d = static_cast<int>(point.rho.rows());
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(point.rho));
    const double lmax = es.eigenvalues().maxCoeff();
    int rank = 0;
    for (int k = 0; k < d; ++k)
        if (es.eigenvalues()[k] > 1e-12 * lmax) ++rank;
    if (rank != 1) throw NotPure("yang_optimality_check: state is not rank 1 within tolerance");
    Vector psi = es.eigenvectors().col(d - 1);

    const int n = static_cast<int>(slds.operators.size());
    const double eps = 1e-10;
    const double tol = 1e-7;

    std::vector<YangElementVerdict> verdicts;
    for (int w = 0; w < povm.size(); ++w) {
        const Matrix& e = povm.elements[w];
        YangElementVerdict v;
        v.label = povm.labels[w];
        std::vector<Vector> eli(n);
        for (int i = 0; i < n; ++i) eli[i] = e * (slds.operators[i] * psi);
        const double overlap = (psi.adjoint() * e * psi).value().real();
        if (overlap > eps) {
            const Vector a = e * psi;
            v.pass = true;
            for (int i = 0; i < n; ++i) {
                double xi = 0.0;
                const double defect = real_collinearity_defect(a, eli[i], &xi);
                v.xi.push_back(xi);
                v.worst_defect = std::max(v.worst_defect, defect);
                if (defect > tol) v.pass = false;
            }
        } else {
            v.zero_branch = true;
            v.pass = true;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    double eta = 0.0;
                    const double defect = real_collinearity_defect(eli[j], eli[i], &eta);
                    v.eta.push_back(eta);
                    v.worst_defect = std::max(v.worst_defect, defect);
                    if (defect > tol) v.pass = false;
                }
        }
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

}  // namespace qmetro
