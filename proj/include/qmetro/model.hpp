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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool periodic = false;
    double width() const { return hi - lo; }
    bool contains(double x, double tol = 1e-12) const { return x >= lo - tol && x <= hi + tol; }
};

/// A quantum statistical model x -> rho_x.  Immutable after construction;
/// `state` must be a pure deterministic function.  `partials`, when set,
/// returns the analytic derivatives d_i rho_x; otherwise evaluate() falls
/// back to 4th-order central differences.  Pure models may carry a lift
/// psi_x with rho_x = |psi><psi| (used by the eqs and antiparallel
/// constructions).
struct Model {
    std::string name;
    int dim = 0;
    int n_params = 0;
    std::vector<Interval> domain;
    std::function<Matrix(const RealVector&)> state;
    std::function<std::vector<Matrix>(const RealVector&)> partials;  // optional
    std::function<Vector(const RealVector&)> lift;                   // optional
    std::function<std::vector<Vector>(const RealVector&)> lift_partials;  // optional

    bool has_analytic_partials() const { return static_cast<bool>(partials); }
    double fd_step(int coord) const;  // 1e-4 * min(domain width, 1)
};

struct StatePoint {
    RealVector x;
    Matrix rho;
    std::vector<Matrix> partials;
    bool stencil_shifted = false;  // a boundary forced a shifted FD stencil
};

/// Report-style density matrix validation.
struct DensityReport {
    double hermiticity_defect = 0.0;  // relative to matrix scale
    double trace_defect = 0.0;        // |tr(rho) - 1|
    double min_eigenvalue = 0.0;
    bool ok(double herm_tol = 1e-10, double trace_tol = 1e-10, double eig_floor = -1e-10) const {
        return hermiticity_defect <= herm_tol && trace_defect <= trace_tol && min_eigenvalue >= eig_floor;
    }
};

DensityReport validate_density(const Matrix& rho);

/// Evaluates the model at x; throws OutOfDomain / InvalidState.
StatePoint evaluate(const Model& model, const RealVector& x);

/// 4th-order finite-difference partials; the 5-point stencil shifts inward
/// when x is within 2h of a domain edge.  Results are Hermitian-symmetrized.
std::vector<Matrix> numeric_partials(const Model& model, const RealVector& x, double h,
                                     bool* shifted = nullptr);
std::vector<Matrix> numeric_partials(const Model& model, const RealVector& x,
                                     bool* shifted = nullptr);

/// Finite-difference weights for the first derivative at offset 0 given
/// sample offsets (in units of h), via the Vandermonde system.
RealVector fd_weights(const std::vector<double>& offsets);

}  // namespace qmetro
