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

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qmetro/fisher.hpp"
#include "qmetro/linalg.hpp"
#include "qmetro/model.hpp"
#include "qmetro/symmetry.hpp"
#include "qmetro/zoo.hpp"

namespace qmetro::test {

constexpr double kPi = std::numbers::pi;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
    return a.cwiseAbs().maxCoeff();
}

/// Independent SLD oracle: least-squares solve of the column-major
/// vectorized Lyapunov equation (I (x) rho + rho^T (x) I) vec L = 2 vec drho.
inline Matrix lyapunov_sld(const Matrix& rho, const Matrix& drho) {
    const int d = static_cast<int>(rho.rows());
    Matrix big = kron(Matrix::Identity(d, d), rho) + kron(Matrix(rho.transpose()), Matrix::Identity(d, d));
    Vector rhs(d * d);
    for (int j = 0; j < d; ++j) rhs.segment(j * d, d) = 2.0 * drho.col(j);
    const Vector sol = big.completeOrthogonalDecomposition().solve(rhs);
    Matrix l(d, d);
    for (int j = 0; j < d; ++j) l.col(j) = sol.segment(j * d, d);
    return hermitian_part(l);
}

/// Affine mixed model rho0 + sum x_i D_i; optionally conjugation-symmetrized
/// so a planted LAS exists at x = 0.  The base state is floored away from the
/// boundary so the whole domain stays strictly positive.
inline Model random_affine_model(int dim, int n_params, Rng& rng, bool planted_symmetry,
                                 double x_max = 0.01) {
    Matrix rho = 0.4 * random_density(dim, rng) +
                 0.6 / dim * Matrix::Identity(dim, dim);
    std::vector<Matrix> derivs;
    for (int i = 0; i < n_params; ++i) {
        Matrix d = random_hermitian(dim, rng);
        d -= (d.trace() / static_cast<double>(dim)) * Matrix::Identity(dim, dim);
        derivs.push_back(d / std::max(1.0, d.norm()));
    }
    if (planted_symmetry) {
        const Matrix u = random_unitary(dim, rng);
        const Antiunitary theta{Matrix(u * u.transpose())};
        rho = (rho + apply_antiunitary(theta, rho)) / 2.0;
        for (Matrix& d : derivs) d = (d + apply_antiunitary(theta, d)) / 2.0;
    }
    Model m;
    m.name = planted_symmetry ? "planted" : "random_affine";
    m.dim = dim;
    m.n_params = n_params;
    for (int i = 0; i < n_params; ++i) m.domain.push_back({-x_max, x_max, false});
    m.state = [rho, derivs](const RealVector& x) {
        Matrix r = rho;
        for (size_t k = 0; k < derivs.size(); ++k) r += x[static_cast<int>(k)] * derivs[k];
        return r;
    };
    m.partials = [derivs](const RealVector&) { return derivs; };
    return m;
}

/// Retries until the base state is non-degenerate with a healthy gap.
inline Model random_nondegenerate_model(int dim, int n_params, Rng& rng, bool planted_symmetry) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Model m = random_affine_model(dim, n_params, rng, planted_symmetry);
        const EigenSystem es = hermitian_eig(m.state(RealVector::Zero(n_params)));
        double gap = 1e9;
        for (int k = 0; k + 1 < dim; ++k) gap = std::min(gap, es.eigenvalues[k + 1] - es.eigenvalues[k]);
        if (gap > 2e-3 && es.eigenvalues.minCoeff() > 5e-2 / dim) return m;
    }
    throw Error("random_nondegenerate_model: no luck");
}

/// Random rank-1 complete POVM (columns of a random unitary), optionally
/// split into more outcomes by probabilistic coarse weights.
inline Povm random_basis_povm(int dim, Rng& rng) {
    const Matrix u = random_unitary(dim, rng);
    std::vector<Vector> cols;
    for (int k = 0; k < dim; ++k) cols.push_back(u.col(k));
    return Povm::from_vectors(cols, 1.0, "rb");
}

/// Random POVM with m >= dim outcomes: random PSD pile normalized by the sum.
inline Povm random_povm(int dim, int outcomes, Rng& rng) {
    std::vector<Matrix> raw;
    Matrix total = Matrix::Zero(dim, dim);
    for (int w = 0; w < outcomes; ++w) {
        Matrix z(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
        Matrix e = z * z.adjoint();
        raw.push_back(e);
        total += e;
    }
    // Normalize: E_w -> T^{-1/2} E_w T^{-1/2}.
    Eigen::SelfAdjointEigenSolver<Matrix> es(total);
    const Matrix tinv_half = es.eigenvectors() *
                             es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                             es.eigenvectors().adjoint();
    Povm p;
    for (int w = 0; w < outcomes; ++w) {
        p.elements.push_back(tinv_half * raw[w] * tinv_half);
        p.labels.push_back("w" + std::to_string(w));
    }
    return p;
}

/// Closed-form CFIM for the tetrahedral basis on depolarized antiparallel
/// spins (A_k, B_k expressions).
inline RealMatrix gisin_closed_cfim(double eta, double phi, double delta) {
    RealMatrix f = RealMatrix::Zero(2, 2);
    for (int k = 0; k < 4; ++k) {
        double a, be, bp;
        if (k < 3) {
            const double az = k * 2.0 * kPi / 3.0;
            a = std::sin(eta) * std::cos(phi - az) + std::sqrt(2.0) / 4.0 * std::cos(eta) +
                std::sqrt(6.0) / 4.0;
            be = std::cos(eta) * std::cos(phi - az) - std::sqrt(2.0) / 4.0 * std::sin(eta);
            bp = -std::sin(eta) * std::sin(phi - az);
        } else {
            a = std::sqrt(6.0) / 4.0 - 3.0 * std::sqrt(2.0) / 4.0 * std::cos(eta);
            be = 3.0 * std::sqrt(2.0) / 4.0 * std::sin(eta);
            bp = 0.0;
        }
        RealVector b(2);
        b << be, bp;
        f += 4.0 * (1.0 - delta) / 3.0 * a * a / (a * a + 3.0 * delta / (4.0 * (1.0 - delta))) *
             (b * b.transpose());
    }
    return f;
}

/// Closed-form CFIM for the product reference basis on depolarized
/// antiparallel spins.
inline RealMatrix product_closed_cfim(double eta, double phi, double delta) {
    const double s = std::sin(eta), c = std::cos(eta);
    const double dd = delta / (1.0 - delta);
    const double c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
    const double fee = s * s * (1 + c) * (1 + c) / ((1 + c) * (1 + c) + dd) +
                       s * s * (1 - c) * (1 - c) / ((1 - c) * (1 - c) + dd) +
                       s * s * c * c * (1 + c2) * (1 + c2) / (s * s * (1 + c2) + dd) +
                       s * s * c * c * (1 - c2) * (1 - c2) / (s * s * (1 - c2) + dd);
    const double fep = std::pow(s, 3) * c * s2 * (1 - c2) / (s * s * (1 - c2) + dd) -
                       std::pow(s, 3) * c * s2 * (1 + c2) / (s * s * (1 + c2) + dd);
    const double fpp = std::pow(s, 4) * s2 * s2 / (s * s * (1 + c2) + dd) +
                       std::pow(s, 4) * s2 * s2 / (s * s * (1 - c2) + dd);
    RealMatrix f(2, 2);
    f << fee, fep, fep, fpp;
    return (1.0 - delta) * f;
}

inline ZooSpec spec_of(const std::string& name) {
    ZooSpec s;
    s.name = name;
    return s;
}

inline RealVector random_point(const Model& m, Rng& rng, double margin = 0.05) {
    RealVector x(m.n_params);
    for (int i = 0; i < m.n_params; ++i) {
        const Interval& iv = m.domain[i];
        const double pad = margin * iv.width();
        x[i] = rng.uniform(iv.lo + pad, iv.hi - pad);
    }
    return x;
}

}  // namespace qmetro::test
