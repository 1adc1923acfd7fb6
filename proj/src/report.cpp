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

#include "qmetro/report.hpp"

#include <cstdio>
#include <sstream>

#include "qmetro/errors.hpp"

namespace qmetro {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_real_matrix(const RealMatrix& m) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        os << "  [";
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : " ") << format_double(m(i, j));
        os << " ]\n";
    }
    return os.str();
}

CsvWriter::CsvWriter(const std::string& path, const std::string& kind,
                     const std::vector<std::string>& columns)
    : out_(path), n_cols_(columns.size()) {
    if (!out_) throw Error("CsvWriter: cannot open " + path);
    out_ << "# qmetro-csv schema_version=1 kind=" << kind << "\n";
    for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::sep() {
    if (col_ > 0) out_ << ",";
}

void CsvWriter::cell(double v) {
    sep();
    out_ << format_double(v);
    ++col_;
}

void CsvWriter::cell(long long v) {
    sep();
    out_ << v;
    ++col_;
}

void CsvWriter::cell(const std::string& v) {
    sep();
    out_ << v;
    ++col_;
}

void CsvWriter::end_row() {
    if (col_ != n_cols_) throw Error("CsvWriter: row has wrong column count");
    out_ << "\n";
    col_ = 0;
}

}  // namespace qmetro
