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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qmetro/errors.hpp"

namespace qmetro {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Hermitian eigendecomposition result.  Eigenvalues ascending; ties broken
/// by lexicographic order of the eigenvector first components.  Each
/// eigenvector is phase-fixed so its largest-magnitude entry is real positive.
struct EigenSystem {
    RealVector eigenvalues;
    Matrix eigenvectors;  // columns
};

/// Takagi factor of a symmetric unitary S: W unitary with W W^T = S.
struct TakagiFactor {
    Matrix w;
};

EigenSystem hermitian_eig(const Matrix& a);

/// Autonne-Takagi factorization of a symmetric unitary.  Writes S = A + iB
/// with A, B real symmetric and commuting, simultaneously diagonalizes them
/// by a real orthogonal Q, and returns W = Q diag(e^{i lambda/2}).
TakagiFactor takagi_factorize(const Matrix& s);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Tensor (Kronecker) product, (kron(a,b))_{(i,k),(j,l)} = a_{ij} b_{kl}.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

double frob(const Matrix& a);
bool is_hermitian(const Matrix& a, double rel_tol = 1e-12);
Matrix hermitian_part(const Matrix& a);

/// Deterministic cross-platform RNG.  mt19937_64 has a standardized output
/// sequence; uniforms take the top 53 bits, normals are Box-Muller.
/// std::*_distribution is implementation-defined and must not be used here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }
    double uniform01();                      // in [0, 1)
    double uniform(double lo, double hi);
    double normal();

    /// Derived stream for sub-task `index`; documented splitting rule
    /// (splitmix64 finalizer over seed XOR golden-ratio multiples).
    static std::uint64_t child_seed(std::uint64_t seed, std::uint64_t index);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

Matrix random_unitary(int d, Rng& rng);
RealMatrix random_orthogonal(int d, Rng& rng);
Matrix random_hermitian(int d, Rng& rng);
Matrix random_density(int d, Rng& rng);

}  // namespace qmetro
