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

#include <optional>
#include <string>
#include <vector>

#include "qmetro/linalg.hpp"
#include "qmetro/model.hpp"
#include "qmetro/povm.hpp"

namespace qmetro {

/// An antiunitary operator Theta stored by its unitary part M, acting as
/// v -> M conj(v) in the computational basis.  Theta is a conjugation
/// (Theta^2 = I) exactly when M is symmetric.
struct Antiunitary {
    Matrix m;

    bool is_conjugation(double tol = 1e-10) const {
        return (m - m.transpose()).norm() <= tol * (1.0 + m.norm());
    }
    Vector apply(const Vector& v) const { return m * v.conjugate(); }
};

/// Adjoint action Theta A Theta^dagger = M conj(A) M^dagger.
Matrix apply_antiunitary(const Antiunitary& theta, const Matrix& a);

/// Tensor product of antiunitaries: unitary parts compose by kron.
Antiunitary compose_tensor(const Antiunitary& a, const Antiunitary& b);

struct SymmetryVerdict {
    enum class Status { found, not_found, inconclusive };
    Status status = Status::not_found;
    std::optional<Antiunitary> witness;
    double residual = 0.0;   // max trace-distance defect over what was tested
    double tolerance = 0.0;
    std::vector<int> certificate_cycle;  // inconsistent phase cycle, when negative
    double cycle_defect = 0.0;           // its phase defect (rad, mod pi)
    std::string message;

    bool found() const { return status == Status::found; }
};

/// Checks Theta rho_x Theta^dagger = rho_x over the sample; residual is the
/// max trace distance, found iff residual <= 1e-8.
SymmetryVerdict verify_gas(const Model& model, const Antiunitary& theta,
                           const std::vector<RealVector>& sample);

/// Searches for a local antiunitary symmetry at the point: a conjugation
/// fixing rho and every partial.  Non-degenerate mixed states go through the
/// eigenbasis phase graph; pure states through the horizontal-lift real-span
/// construction; degenerate mixed states return inconclusive.
SymmetryVerdict find_las(const StatePoint& point);

/// Rank-1 Theta-invariant POVM from the Takagi reference basis of a
/// conjugation: m weighted copies of the basis, the first under the identity
/// rotation, the rest under seeded random real orthogonal rotations of the
/// invariant real subspace.
Povm invariant_povm(const Antiunitary& theta, int rotations, std::uint64_t seed);

struct AsymmetryReport {
    double m_sq = 0.0;    // mean squared-Frobenius asymmetry over derivatives
    double m1_max = 0.0;  // max-imaginarity (trace norm / 2)
    double m1_mean = 0.0; // mean-imaginarity
    RealVector minimizer; // optimal conjugation phases (first gauge-fixed to 0)
};

/// Minimizes (1/n) sum_i ||d_i rho - Theta d_i rho Theta||_F^2 over the
/// conjugations fixing a non-degenerate rho (a (d-1)-torus of eigenbasis
/// phases), multi-start gradient descent with analytic gradient; trace-norm
/// variants evaluated on the minimizer and on compass-refined multi-starts.
AsymmetryReport asymmetry_measures(const StatePoint& point);

/// The squared-Frobenius objective at given phases (exposed for oracles).
double asymmetry_objective(const StatePoint& point, const RealVector& phases);

}  // namespace qmetro
