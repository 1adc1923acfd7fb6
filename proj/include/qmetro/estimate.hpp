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

#include <cstdint>
#include <vector>

#include "qmetro/fisher.hpp"
#include "qmetro/model.hpp"
#include "qmetro/povm.hpp"

namespace qmetro {

struct TrialConfig {
    Model model;
    Povm povm;
    RealVector true_x;
    long long n_c = 1;       // shots per trial
    int n_trials = 1;
    std::uint64_t seed = 0;
    int grid_points = 64;    // MLE coarse grid per axis
};

/// Multinomial outcome counts, deterministic per seed.
std::vector<long long> sample_outcomes(const StatePoint& point, const Povm& povm, long long n_c,
                                       std::uint64_t seed);

struct MleResult {
    RealVector x;
    double log_likelihood = 0.0;
    bool degenerate = false;    // likelihood flat along some direction
    bool on_boundary = false;   // refined estimate sits on the domain edge
};

/// Maximum likelihood: coarse grid scan then derivative-free refinement to
/// 1e-8 parameter tolerance; periodic parameters compared on the circle.
MleResult mle_fit(const Model& model, const Povm& povm, const std::vector<long long>& counts,
                  int grid_points = 64);

struct CovarianceReport {
    RealVector mean_estimate;
    RealMatrix scaled_cov;      // N_C * mean of wrapped (x^ - x0)(x^ - x0)'
    RealMatrix inv_cfim;
    RealMatrix inv_qfim;
    RealVector ratio_to_cfim;   // diagonal, scaled_cov_ii / inv_cfim_ii
    RealVector ratio_to_qfim;
    int excluded_trials = 0;
    int total_trials = 0;
    std::vector<RealVector> estimates;
    bool valid = true;          // false when exclusions exceed 1%
};

CovarianceReport run_trials(const TrialConfig& cfg);

}  // namespace qmetro
