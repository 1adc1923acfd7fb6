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

#include "qmetro/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qmetro {

double Model::fd_step(int coord) const {
    const double width = domain.at(coord).width();
    return 1e-4 * std::min(width, 1.0);
}

DensityReport validate_density(const Matrix& rho) {
    if (rho.rows() != rho.cols()) throw DimensionMismatch("validate_density: matrix not square");
    DensityReport rep;
    const double scale = std::max(rho.cwiseAbs().maxCoeff(), 1e-300);
    rep.hermiticity_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff() / scale;
    rep.trace_defect = std::abs(rho.trace() - Complex(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(rho));
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    return rep;
}

RealVector fd_weights(const std::vector<double>& offsets) {
    const int m = static_cast<int>(offsets.size());
    RealMatrix v(m, m);
    RealVector rhs = RealVector::Zero(m);
    rhs[1] = 1.0;  // first derivative
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) v(r, c) = std::pow(offsets[c], r);
    return v.fullPivLu().solve(rhs);
}

namespace {

void check_in_domain(const Model& model, const RealVector& x) {
    if (x.size() != model.n_params) throw DimensionMismatch("evaluate: wrong parameter count");
    for (int i = 0; i < model.n_params; ++i) {
        if (!model.domain.at(i).contains(x[i])) {
            std::ostringstream os;
            os << "parameter " << i << " = " << x[i] << " outside [" << model.domain[i].lo << ", "
               << model.domain[i].hi << "]";
            throw OutOfDomain(os.str());
        }
    }
}

}  // namespace

std::vector<Matrix> numeric_partials(const Model& model, const RealVector& x, double h, bool* shifted) {
    check_in_domain(model, x);
    if (shifted) *shifted = false;
    std::vector<Matrix> out;
    out.reserve(model.n_params);
    for (int i = 0; i < model.n_params; ++i) {
        const Interval& iv = model.domain[i];
        const double hi = (h > 0) ? h : model.fd_step(i);
        // Base 5-point stencil -2..2; shift inward so every node stays inside
        // the closed interval.
        const double room_lo = (x[i] - iv.lo) / hi;
        const double room_hi = (iv.hi - x[i]) / hi;
        if (room_lo + room_hi < 4.0) throw OutOfDomain("numeric_partials: domain narrower than the stencil");
        double lo_off = std::clamp(-2.0, -room_lo, room_hi - 4.0);
        if (lo_off != -2.0 && shifted) *shifted = true;

        std::vector<double> offs(5);
        for (int k = 0; k < 5; ++k) offs[k] = lo_off + k;
        const RealVector w = fd_weights(offs);

        Matrix acc = Matrix::Zero(model.dim, model.dim);
        for (int k = 0; k < 5; ++k) {
            if (std::abs(w[k]) < 1e-300) continue;
            RealVector xs = x;
            xs[i] += offs[k] * hi;
            acc += w[k] * model.state(xs);
        }
        acc /= hi;
        out.push_back(hermitian_part(acc));
    }
    return out;
}

std::vector<Matrix> numeric_partials(const Model& model, const RealVector& x, bool* shifted) {
    return numeric_partials(model, x, 0.0, shifted);
}

StatePoint evaluate(const Model& model, const RealVector& x) {
    check_in_domain(model, x);
    StatePoint pt;
    pt.x = x;
    pt.rho = model.state(x);
    if (pt.rho.rows() != model.dim || pt.rho.cols() != model.dim)
        throw InvalidState("evaluate: state rule returned wrong dimension");

    const DensityReport rep = validate_density(pt.rho);
    if (!rep.ok()) {
        std::ostringstream os;
        os << "evaluate: invalid density matrix at x = [" << x.transpose() << "]:";
        if (rep.hermiticity_defect > 1e-10) os << " hermiticity defect " << rep.hermiticity_defect;
        if (rep.trace_defect > 1e-10) os << " trace defect " << rep.trace_defect;
        if (rep.min_eigenvalue < -1e-10) os << " min eigenvalue " << rep.min_eigenvalue;
        throw InvalidState(os.str());
    }

    if (model.has_analytic_partials()) {
        pt.partials = model.partials(x);
        if (static_cast<int>(pt.partials.size()) != model.n_params)
            throw InvalidState("evaluate: analytic partials have wrong count");
    } else {
        pt.partials = numeric_partials(model, x, &pt.stencil_shifted);
    }
    for (const Matrix& dr : pt.partials) {
        if (!is_hermitian(dr, 1e-9)) throw InvalidState("evaluate: partial not Hermitian within 1e-9");
        if (std::abs(dr.trace()) > 1e-8) throw InvalidState("evaluate: partial trace exceeds 1e-8");
    }
    return pt;
}

}  // namespace qmetro
