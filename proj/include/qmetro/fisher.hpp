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

#include <vector>

#include "qmetro/linalg.hpp"
#include "qmetro/model.hpp"
#include "qmetro/povm.hpp"

namespace qmetro {

/// Symmetric logarithmic derivatives in the integral-formula gauge: in the
/// eigenbasis of rho, L_{jk} = 2 (d rho)_{jk} / (lambda_j + lambda_k) on the
/// support, zero elsewhere.  Support threshold 1e-12 * lambda_max.
struct SldSet {
    std::vector<Matrix> operators;
    Matrix support_projector;
};

SldSet compute_sld(const StatePoint& point);

struct FisherReport {
    RealMatrix qfim;      // Re tr(rho L_i L_j)
    RealMatrix uhlmann;   // Im tr(rho L_i L_j) / 2
    bool weakly_commutative = false;
    bool quasi_classical = false;
    bool partially_commutative = false;
    double tolerance = 0.0;  // the relative tolerance the flags were judged at
};

FisherReport fisher_report(const StatePoint& point);

/// QFIM/Uhlmann from explicitly supplied SLDs (gauge-invariance checks).
RealMatrix qfim_from(const Matrix& rho, const std::vector<Matrix>& slds);
RealMatrix uhlmann_from(const Matrix& rho, const std::vector<Matrix>& slds);

struct CfimResult {
    RealMatrix matrix;
    bool divergent = false;  // some outcome had p <= eps but |dp| > sqrt(eps)
};

/// Classical Fisher information of the POVM outcome distribution; outcomes
/// with p <= 1e-12 are dropped (zero limit) or flagged divergent.
CfimResult cfim(const StatePoint& point, const Povm& povm);

struct Efficiency {
    double min_ratio = 0.0;              // min_v (v'F_C v)/(v'F_Q v) on range(F_Q)
    RealVector diagonal_ratios;          // F_C_ii / F_Q_ii (NaN where F_Q_ii = 0)
    std::vector<RealVector> null_directions;  // basis of ker(F_Q)
    bool saturates(double tol = 1e-6) const { return min_ratio >= 1.0 - tol; }
};

Efficiency qcrb_efficiency(const StatePoint& point, const Povm& povm);

}  // namespace qmetro
