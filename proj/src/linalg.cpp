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

#include "qmetro/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qmetro {

double frob(const Matrix& a) { return a.norm(); }

Matrix hermitian_part(const Matrix& a) { return (a + a.adjoint()) / 2.0; }

bool is_hermitian(const Matrix& a, double rel_tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = a.cwiseAbs().maxCoeff();
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale + 1e-300;
}

namespace {

// Phase-fix each column so its largest-magnitude entry is real positive.
void canonicalize_phases(Matrix& v) {
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
        Eigen::Index imax = 0;
        v.col(c).cwiseAbs().maxCoeff(&imax);
        const Complex z = v(imax, c);
        if (std::abs(z) > 0) v.col(c) *= std::conj(z) / std::abs(z);
    }
}

}  // namespace

EigenSystem hermitian_eig(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("hermitian_eig: matrix not square");
    if (!is_hermitian(a)) throw NonHermitian("hermitian_eig: input fails the 1e-12 relative symmetry check");

    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
    if (es.info() != Eigen::Success) throw Error("hermitian_eig: solver did not converge");

    EigenSystem sys{es.eigenvalues(), es.eigenvectors()};
    canonicalize_phases(sys.eigenvectors);

    // Ascending already; break exact ties by the eigenvector first component.
    const Eigen::Index d = sys.eigenvalues.size();
    std::vector<Eigen::Index> order(d);
    for (Eigen::Index i = 0; i < d; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        if (sys.eigenvalues[i] != sys.eigenvalues[j]) return sys.eigenvalues[i] < sys.eigenvalues[j];
        const Complex a0 = sys.eigenvectors(0, i), b0 = sys.eigenvectors(0, j);
        if (a0.real() != b0.real()) return a0.real() < b0.real();
        return a0.imag() < b0.imag();
    });
    EigenSystem out;
    out.eigenvalues.resize(d);
    out.eigenvectors.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        out.eigenvalues[i] = sys.eigenvalues[order[i]];
        out.eigenvectors.col(i) = sys.eigenvectors.col(order[i]);
    }
    return out;
}

namespace {

// Orthonormal real basis of the column span of `block`, built by Gram-Schmidt
// over the projected standard basis vectors.  Deterministic representative of
// a degenerate cluster.
RealMatrix canonical_cluster_basis(const RealMatrix& block) {
    const Eigen::Index d = block.rows(), m = block.cols();
    const RealMatrix proj = block * block.transpose();
    RealMatrix out(d, m);
    Eigen::Index got = 0;
    for (Eigen::Index j = 0; j < d && got < m; ++j) {
        Eigen::VectorXd v = proj.col(j);
        for (Eigen::Index k = 0; k < got; ++k) v -= out.col(k).dot(v) * out.col(k);
        const double n = v.norm();
        if (n > 1e-8) out.col(got++) = v / n;
    }
    // Span defects cannot occur for a true projector, but guard anyway.
    if (got < m) throw Error("canonical_cluster_basis: rank defect");
    return out;
}

}  // namespace

TakagiFactor takagi_factorize(const Matrix& s) {
    if (s.rows() != s.cols()) throw DimensionMismatch("takagi_factorize: matrix not square");
    const Eigen::Index d = s.rows();
    const double scale = 1.0 + frob(s);
    if ((s - s.transpose()).norm() > 1e-10 * scale)
        throw NotSymmetricUnitary("takagi_factorize: input not symmetric");
    if ((s * s.adjoint() - Matrix::Identity(d, d)).norm() > 1e-10 * scale)
        throw NotSymmetricUnitary("takagi_factorize: input not unitary");

    // S = A + iB with A, B real symmetric; unitarity forces AB = BA.
    const RealMatrix a = s.real(), b = s.imag();

    Eigen::SelfAdjointEigenSolver<RealMatrix> ea(a);
    RealVector la = ea.eigenvalues();
    RealMatrix q = ea.eigenvectors();

    const double cluster_tol = 1e-9 * std::max(a.norm(), 1e-300);
    Eigen::Index i = 0;
    while (i < d) {
        Eigen::Index j = i;
        while (j + 1 < d && la[j + 1] - la[i] < cluster_tol) ++j;
        if (j > i) {
            // Diagonalize B restricted to the eigenvalue cluster of A.
            RealMatrix blk = q.middleCols(i, j - i + 1);
            RealMatrix bi = blk.transpose() * b * blk;
            Eigen::SelfAdjointEigenSolver<RealMatrix> eb((bi + bi.transpose()) / 2.0);
            RealMatrix rot = blk * eb.eigenvectors();
            // Canonicalize any joint (A,B)-degenerate sub-clusters.
            const RealVector lb = eb.eigenvalues();
            Eigen::Index p = 0;
            const Eigen::Index m = j - i + 1;
            while (p < m) {
                Eigen::Index r = p;
                while (r + 1 < m && lb[r + 1] - lb[p] < cluster_tol) ++r;
                if (r > p) rot.middleCols(p, r - p + 1) = canonical_cluster_basis(rot.middleCols(p, r - p + 1));
                p = r + 1;
            }
            q.middleCols(i, j - i + 1) = rot;
        }
        i = j + 1;
    }

    // S = Q diag(e^{i lambda}) Q^T; half the phases give W.
    Matrix w(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const Complex ev = q.col(k).transpose().cast<Complex>() * s * q.col(k).cast<Complex>();
        const double lam = std::arg(ev);
        w.col(k) = q.col(k).cast<Complex>() * std::exp(Complex(0.0, lam / 2.0));
    }

    if ((w * w.transpose() - s).norm() > 1e-10 * scale)
        throw Error("takagi_factorize: reconstruction check failed");
    return TakagiFactor{std::move(w)};
}

double trace_norm(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("trace_norm: matrix not square");
    if (a.rows() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
}

std::uint64_t Rng::child_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer
    std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Matrix random_unitary(int d, Rng& rng) {
    Matrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        const Complex rkk = r(k, k);
        q.col(k) *= (std::abs(rkk) > 0) ? rkk / std::abs(rkk) : 1.0;
    }
    return q;
}

RealMatrix random_orthogonal(int d, Rng& rng) {
    RealMatrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = rng.normal();
    Eigen::HouseholderQR<RealMatrix> qr(z);
    RealMatrix q = qr.householderQ();
    RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) q.col(k) *= (r(k, k) >= 0) ? 1.0 : -1.0;
    return q;
}

Matrix random_hermitian(int d, Rng& rng) {
    Matrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
    return hermitian_part(z);
}

Matrix random_density(int d, Rng& rng) {
    Matrix z(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
    Matrix rho = z * z.adjoint();
    return rho / rho.trace().real();
}

}  // namespace qmetro
