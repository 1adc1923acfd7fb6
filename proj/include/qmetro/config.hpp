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

#include "qmetro/model.hpp"
#include "qmetro/povm.hpp"
#include "qmetro/zoo.hpp"

namespace qmetro {

/// Line-oriented declarative config: `key = value` entries grouped under
/// `[section]` or `[section arg]` headers; `#` comments; values are
/// whitespace-separated tokens.  Sections may repeat.
struct ConfigFile {
    struct Entry {
        std::string key;
        std::vector<std::string> tokens;
        int line = 0;
    };
    struct Section {
        std::string name;
        std::string arg;
        std::vector<Entry> entries;
        int line = 0;
    };
    Section top;                    // entries before any header
    std::vector<Section> sections;

    const Section* find(const std::string& name) const;
    std::vector<const Section*> find_all(const std::string& name) const;
};

ConfigFile parse_config_text(const std::string& text, const std::string& origin);
ConfigFile parse_config_file(const std::string& path);

/// One axis of a target grid.
struct GridAxis {
    double lo = 0.0, hi = 0.0;
    int count = 1;
};

struct PovmSelector {
    std::string canonical;           // canonical basis name, or
    std::string file;                // POVM file path, or
    bool invariant = false;          // invariant_povm recipe from the GAS
    int rotations = 2;
    std::uint64_t seed = 1;
};

struct RunConfig {
    std::string command;
    ZooSpec model_spec;              // when zoo-based
    std::string model_file;          // affine model file (alternative)
    std::vector<RealVector> targets; // explicit points
    std::vector<GridAxis> grid;      // or a grid
    PovmSelector povm;
    long long n_c = 10000;
    int n_trials = 100;
    std::optional<std::uint64_t> seed;
    int mle_grid = 64;
    std::string out_dir;
};

/// Parses + schema-validates a run config for the given command; unknown
/// sections or keys are ConfigError with the offending line number.
RunConfig load_run_config(const std::string& path, const std::string& command);

/// Affine model file: dim, n_params, domain, [rho0], [partial k] matrices.
Model load_model_file(const std::string& path);

/// POVM file: dim then [element <label>] sections with row-major re/im pairs.
Povm load_povm_file(const std::string& path);
void save_povm_file(const std::string& path, const Povm& povm);

Model build_model(const RunConfig& cfg);
Povm build_povm(const RunConfig& cfg, const Model& model);
std::vector<RealVector> expand_targets(const RunConfig& cfg, const Model& model);

}  // namespace qmetro
