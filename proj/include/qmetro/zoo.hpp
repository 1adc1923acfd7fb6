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

#include <map>
#include <string>
#include <vector>

#include "qmetro/model.hpp"
#include "qmetro/povm.hpp"
#include "qmetro/symmetry.hpp"

namespace qmetro {

/// Named model constructor with its parameter bindings.
struct ZooSpec {
    std::string name;
    std::map<std::string, double> scalars;
    std::map<std::string, std::vector<double>> vectors;
    std::map<std::string, std::string> strings;  // e.g. inner = spin

    double get(const std::string& key, double fallback) const;
    double require(const std::string& key) const;
    std::vector<double> get_vec(const std::string& key, const std::vector<double>& fallback) const;

    /// Spec of the wrapped model for eqs / antiparallel_of.
    ZooSpec inner_spec() const;
};

/// Builds a model by name.  Supported: spin, off_equator_spin(c), noon(N),
/// superdense(r), magnetometry(N, delta_y, delta_z), antiparallel,
/// antiparallel_depolarized(delta), disc(n1, n2[, f1, f2]), eqs(inner=name),
/// qutrit_las(a, b, c, omega), antiparallel_of(inner=name).  Domains may be
/// overridden with vectors domain_lo / domain_hi.
Model make_model(const ZooSpec& spec);

/// The documented antiunitary symmetry of the named model; throws NoKnownGas
/// where none is known (spin, off-equator away from the equator, qutrit_las,
/// odd-N magnetometry, superdense away from r = 1/2).
Antiunitary canonical_gas(const ZooSpec& spec);

/// Canonical measurement bases: gisin, antiparallel_product, bell, noon_pm,
/// magnetometry_bipartite, magnetometry_pauli.
Povm canonical_basis(const std::string& basis_name, const ZooSpec& model_spec);

struct ZooEntry {
    std::string name;
    std::string params;
    std::string gas;
    std::string bases;
};
std::vector<ZooEntry> zoo_list();

/// Generic antiparallel construction rho_x (x) conj(rho_x) for any model.
Model antiparallel_of(const Model& inner);

/// Embedding construction (|psi> (x) |0> + conj|psi> (x) |1>)/sqrt(2);
/// requires a pure lift on the inner model.
Model eqs_of(const Model& inner);

/// Global depolarization (1-delta) rho + delta I/d of any model.
Model depolarize(const Model& inner, double delta);

// Shared fixed matrices.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix swap_matrix(int d);  // S (v (x) w) = w (x) v on C^d (x) C^d

}  // namespace qmetro
