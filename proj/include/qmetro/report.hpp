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

#include <fstream>
#include <string>
#include <vector>

#include "qmetro/linalg.hpp"

namespace qmetro {

/// CSV with a schema-version comment line and 17-significant-digit floats.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& kind, const std::vector<std::string>& columns);

    void cell(double v);
    void cell(long long v);
    void cell(const std::string& v);
    void end_row();

  private:
    std::ofstream out_;
    size_t n_cols_;
    size_t col_ = 0;
    void sep();
};

std::string format_double(double v);  // %.17g
std::string format_real_matrix(const RealMatrix& m);

}  // namespace qmetro
