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

#include <string>
#include <vector>

#include "qmetro/linalg.hpp"
#include "qmetro/model.hpp"

namespace qmetro {

/// A finite list of positive operators summing to identity, with labels.
struct Povm {
    std::vector<Matrix> elements;
    std::vector<std::string> labels;

    int dim() const { return elements.empty() ? 0 : static_cast<int>(elements.front().rows()); }
    int size() const { return static_cast<int>(elements.size()); }

    /// Rank-1 POVM from weighted basis vectors, elements w |v><v|.
    static Povm from_vectors(const std::vector<Vector>& vecs, double weight = 1.0,
                             const std::string& label_prefix = "e");
};

/// Elementwise tensor product POVM {E_a (x) F_b}.
Povm tensor_product(const Povm& a, const Povm& b);

struct PovmReport {
    double completeness_defect = 0.0;  // ||sum E - I||_F
    std::vector<double> min_eigenvalues;
    std::vector<int> ranks;
    bool ok(double complete_tol = 1e-9, double eig_floor = -1e-10) const;
};

PovmReport validate_povm(const Povm& povm);

struct OutcomeDistribution {
    std::vector<std::string> labels;
    RealVector probabilities;  // per outcome
    RealMatrix gradients;      // outcomes x n_params
};

/// p_w = tr(E_w rho) with gradients from the partials; probabilities in
/// [-1e-12, 0) are clamped to 0.
OutcomeDistribution outcome_distribution(const StatePoint& point, const Povm& povm);

/// Per-element verdicts of the pure-state optimality conditions: for
/// <psi|E|psi> > eps check E L_i |psi> = xi_i E |psi> with real xi_i; else
/// check the E L_i |psi> are pairwise real-proportional (zero vectors pass
/// vacuously, the "real infinity" convention).
struct YangElementVerdict {
    std::string label;
    bool pass = false;
    bool zero_branch = false;            // <psi|E|psi> <= eps branch
    std::vector<double> xi;              // defined on the nonzero branch
    std::vector<double> eta;             // pairwise ratios (row-major i<j), NaN when undefined
    double worst_defect = 0.0;           // largest collinearity defect encountered
};

struct SldSet;  // fisher.hpp

std::vector<YangElementVerdict> yang_optimality_check(const StatePoint& point, const SldSet& slds,
                                                      const Povm& povm);

}  // namespace qmetro
