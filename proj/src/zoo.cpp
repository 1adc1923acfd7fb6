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

#include "qmetro/zoo.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qmetro {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

Eigen::Vector3d bloch(double eta, double phi) {
    return {std::sin(eta) * std::cos(phi), std::sin(eta) * std::sin(phi), std::cos(eta)};
}

Matrix dot_sigma(const Eigen::Vector3d& n) {
    return n.x() * pauli_x() + n.y() * pauli_y() + n.z() * pauli_z();
}

Matrix spin_state(double eta, double phi) {
    return (Matrix::Identity(2, 2) + dot_sigma(bloch(eta, phi))) / 2.0;
}

// Spin-flip adjoint action: rho -> sigma_y conj(rho) sigma_y.
Matrix flip(const Matrix& a) { return pauli_y() * a.conjugate() * pauli_y(); }

Vector bloch_ket(const Eigen::Vector3d& n) {
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    const double alpha = std::atan2(n.y(), n.x());
    Vector v(2);
    v << std::cos(theta / 2.0), std::exp(kI * alpha) * std::sin(theta / 2.0);
    return v;
}

Vector bloch_ket_anti(const Eigen::Vector3d& n) {
    const double theta = std::acos(std::clamp(n.z(), -1.0, 1.0));
    const double alpha = std::atan2(n.y(), n.x());
    Vector v(2);
    v << std::sin(theta / 2.0), -std::exp(kI * alpha) * std::cos(theta / 2.0);
    return v;
}

double stable_sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// Divided differences of f(t) = e^{-it} in the cancellation-free midpoint
// form -i e^{-i(a+b)/2} sinc((a-b)/2).
Matrix exp_divided_differences(const RealVector& lam) {
    const int d = static_cast<int>(lam.size());
    Matrix phi(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            phi(a, b) = -kI * std::exp(-kI * (lam[a] + lam[b]) / 2.0) *
                        stable_sinc((lam[a] - lam[b]) / 2.0);
    return phi;
}

// Derivatives of U(x) = exp(-i sum_k x_k G_k) applied to psi0, by the
// divided-difference formula in the eigenbasis of H(x).
struct UnitaryFamily {
    std::vector<Matrix> generators;

    Matrix hamiltonian(const RealVector& x) const {
        Matrix h = Matrix::Zero(generators[0].rows(), generators[0].cols());
        for (size_t k = 0; k < generators.size(); ++k) h += x[static_cast<int>(k)] * generators[k];
        return h;
    }
    Vector evolve(const RealVector& x, const Vector& psi0) const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(x));
        const Vector phases =
            (-kI * es.eigenvalues().cast<Complex>().array()).exp().matrix();
        return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * psi0;
    }
    std::vector<Vector> evolve_partials(const RealVector& x, const Vector& psi0) const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(x));
        const Matrix& v = es.eigenvectors();
        const Matrix phi = exp_divided_differences(es.eigenvalues());
        const Vector psi0_rot = v.adjoint() * psi0;
        std::vector<Vector> out;
        for (const Matrix& g : generators) {
            const Matrix grot = (v.adjoint() * g * v).cwiseProduct(phi);
            out.push_back(v * (grot * psi0_rot));
        }
        return out;
    }
};

std::vector<Matrix> pure_partials(const Vector& psi, const std::vector<Vector>& dpsi) {
    std::vector<Matrix> out;
    for (const Vector& dp : dpsi) out.push_back(hermitian_part(2.0 * (dp * psi.adjoint())));
    return out;
}

std::vector<Interval> override_domain(const ZooSpec& spec, std::vector<Interval> dom) {
    const auto lo = spec.vectors.find("domain_lo");
    const auto hi = spec.vectors.find("domain_hi");
    if (lo == spec.vectors.end() && hi == spec.vectors.end()) return dom;
    if (lo == spec.vectors.end() || hi == spec.vectors.end() ||
        lo->second.size() != dom.size() || hi->second.size() != dom.size())
        throw InvalidSpec("domain override needs domain_lo and domain_hi of matching length");
    for (size_t i = 0; i < dom.size(); ++i) {
        dom[i].lo = lo->second[i];
        dom[i].hi = hi->second[i];
        if (!(dom[i].lo < dom[i].hi)) throw InvalidSpec("domain override: lo >= hi");
    }
    return dom;
}

Model make_spin() {
    Model m;
    m.name = "spin";
    m.dim = 2;
    m.n_params = 2;
    m.domain = {{0.0, kPi, false}, {0.0, 2.0 * kPi, true}};
    m.state = [](const RealVector& x) { return spin_state(x[0], x[1]); };
    m.partials = [](const RealVector& x) {
        const double eta = x[0], phi = x[1];
        const Eigen::Vector3d dn_eta(std::cos(eta) * std::cos(phi), std::cos(eta) * std::sin(phi),
                                     -std::sin(eta));
        const Eigen::Vector3d dn_phi(-std::sin(eta) * std::sin(phi), std::sin(eta) * std::cos(phi), 0.0);
        return std::vector<Matrix>{dot_sigma(dn_eta) / 2.0, dot_sigma(dn_phi) / 2.0};
    };
    m.lift = [](const RealVector& x) {
        Vector v(2);
        v << std::cos(x[0] / 2.0), std::exp(kI * x[1]) * std::sin(x[0] / 2.0);
        return v;
    };
    m.lift_partials = [](const RealVector& x) {
        const double eta = x[0], phi = x[1];
        Vector de(2), dp(2);
        de << -std::sin(eta / 2.0) / 2.0, std::exp(kI * phi) * std::cos(eta / 2.0) / 2.0;
        dp << 0.0, kI * std::exp(kI * phi) * std::sin(eta / 2.0);
        return std::vector<Vector>{de, dp};
    };
    return m;
}

Model make_off_equator_spin(double c) {
    if (!(c > 0.0 && c < kPi)) throw InvalidSpec("off_equator_spin: need c in (0, pi)");
    Model m;
    m.name = "off_equator_spin";
    m.dim = 2;
    m.n_params = 1;
    m.domain = {{0.0, 2.0 * kPi, true}};
    m.state = [c](const RealVector& x) { return spin_state(c, x[0]); };
    m.partials = [c](const RealVector& x) {
        const Eigen::Vector3d dn(-std::sin(c) * std::sin(x[0]), std::sin(c) * std::cos(x[0]), 0.0);
        return std::vector<Matrix>{dot_sigma(dn) / 2.0};
    };
    m.lift = [c](const RealVector& x) {
        Vector v(2);
        v << std::cos(c / 2.0), std::exp(kI * x[0]) * std::sin(c / 2.0);
        return v;
    };
    m.lift_partials = [c](const RealVector& x) {
        Vector dp(2);
        dp << 0.0, kI * std::exp(kI * x[0]) * std::sin(c / 2.0);
        return std::vector<Vector>{dp};
    };
    return m;
}

Model make_noon(int n_photons) {
    if (n_photons < 1) throw InvalidSpec("noon: need N >= 1");
    // Minimal effective space: span{|N,0>, |0,N>} as C^2.
    Model m;
    m.name = "noon";
    m.dim = 2;
    m.n_params = 1;
    m.domain = {{0.0, kPi / n_photons, false}};  // identifiable half-period
    const double nn = n_photons;
    m.lift = [nn](const RealVector& x) {
        Vector v(2);
        v << 1.0 / std::sqrt(2.0), std::exp(-kI * nn * x[0]) / std::sqrt(2.0);
        return v;
    };
    m.lift_partials = [nn](const RealVector& x) {
        Vector dp(2);
        dp << 0.0, -kI * nn * std::exp(-kI * nn * x[0]) / std::sqrt(2.0);
        return std::vector<Vector>{dp};
    };
    auto lift = m.lift;
    auto dlift = m.lift_partials;
    m.state = [lift](const RealVector& x) {
        const Vector v = lift(x);
        return Matrix(v * v.adjoint());
    };
    m.partials = [lift, dlift](const RealVector& x) { return pure_partials(lift(x), dlift(x)); };
    return m;
}

Model make_superdense(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidSpec("superdense: need r in [0, 1]");
    Model m;
    m.name = "superdense";
    m.dim = 4;
    m.n_params = 3;
    m.domain = {{-1.2, 1.2, false}, {-1.2, 1.2, false}, {-1.2, 1.2, false}};
    Vector psi_r = Vector::Zero(4);
    psi_r[0] = std::sqrt(r);
    psi_r[3] = std::sqrt(1.0 - r);
    // Canonical coordinates U = exp(-i x . sigma / 2) on the first qubit.
    UnitaryFamily fam{{pauli_x() / 2.0, pauli_y() / 2.0, pauli_z() / 2.0}};
    const Matrix eye2 = Matrix::Identity(2, 2);
    m.lift = [fam, psi_r, eye2](const RealVector& x) {
        // (U (x) I) psi_r with psi_r = sqrt(r)|00> + sqrt(1-r)|11>
        Eigen::SelfAdjointEigenSolver<Matrix> es(fam.hamiltonian(x));
        const Vector ph = (-kI * es.eigenvalues().cast<Complex>().array()).exp().matrix();
        const Matrix u = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
        return Vector(kron(u, eye2) * psi_r);
    };
    m.lift_partials = [fam, psi_r, eye2](const RealVector& x) {
        // d(U (x) I) psi_r = (dU (x) I) psi_r, dU by divided differences.
        Eigen::SelfAdjointEigenSolver<Matrix> es(fam.hamiltonian(x));
        const Matrix& v = es.eigenvectors();
        const Matrix phi = exp_divided_differences(es.eigenvalues());
        std::vector<Vector> out;
        for (const Matrix& g : fam.generators) {
            const Matrix du = v * (v.adjoint() * g * v).cwiseProduct(phi) * v.adjoint();
            out.push_back(kron(du, eye2) * psi_r);
        }
        return out;
    };
    auto lift = m.lift;
    auto dlift = m.lift_partials;
    m.state = [lift](const RealVector& x) {
        const Vector v = lift(x);
        return Matrix(v * v.adjoint());
    };
    m.partials = [lift, dlift](const RealVector& x) { return pure_partials(lift(x), dlift(x)); };
    return m;
}

Vector ghz_vector(int axis, int n) {
    Vector plus(2), minus(2);
    switch (axis) {
        case 0:
            plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
            minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
            break;
        case 1:
            plus << 1.0 / std::sqrt(2.0), kI / std::sqrt(2.0);
            minus << kI / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
            break;
        default:
            plus << 1.0, 0.0;
            minus << 0.0, 1.0;
            break;
    }
    Vector vp = plus, vm = minus;
    for (int i = 1; i < n; ++i) {
        vp = kron(vp, plus);
        vm = kron(vm, minus);
    }
    return (vp + vm) / std::sqrt(2.0);
}

Model make_magnetometry(int n, double delta_y, double delta_z) {
    if (n < 1 || n > 8) throw InvalidSpec("magnetometry: need 1 <= N <= 8");
    Model m;
    m.name = "magnetometry";
    m.dim = 1 << n;
    m.n_params = 3;
    m.domain = {{-1.0, 1.0, false}, {-1.0, 1.0, false}, {-1.0, 1.0, false}};

    Vector psi0 = ghz_vector(0, n) + std::exp(kI * delta_y) * ghz_vector(1, n) +
                  std::exp(kI * delta_z) * ghz_vector(2, n);
    const double norm = psi0.norm();
    if (norm < 1e-9) throw InvalidSpec("magnetometry: GHZ superposition vanishes for these deltas");
    psi0 /= norm;

    UnitaryFamily fam;
    const Matrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
    for (int k = 0; k < 3; ++k) {
        Matrix g = Matrix::Zero(m.dim, m.dim);
        for (int site = 0; site < n; ++site) {
            Matrix term = Matrix::Identity(1, 1);
            for (int i = 0; i < n; ++i)
                term = kron(term, (i == site) ? paulis[k] : Matrix::Identity(2, 2));
            g += term;
        }
        fam.generators.push_back(std::move(g));
    }

    m.lift = [fam, psi0](const RealVector& x) { return fam.evolve(x, psi0); };
    m.lift_partials = [fam, psi0](const RealVector& x) { return fam.evolve_partials(x, psi0); };
    auto lift = m.lift;
    auto dlift = m.lift_partials;
    m.state = [lift](const RealVector& x) {
        const Vector v = lift(x);
        return Matrix(v * v.adjoint());
    };
    m.partials = [lift, dlift](const RealVector& x) { return pure_partials(lift(x), dlift(x)); };
    return m;
}

Model make_antiparallel() {
    Model m;
    const Model spin = make_spin();
    m.name = "antiparallel";
    m.dim = 4;
    m.n_params = 2;
    m.domain = spin.domain;
    auto sstate = spin.state;
    auto spart = spin.partials;
    m.state = [sstate](const RealVector& x) {
        const Matrix r = sstate(x);
        return Matrix(kron(r, flip(r)));
    };
    m.partials = [sstate, spart](const RealVector& x) {
        const Matrix r = sstate(x);
        std::vector<Matrix> out;
        for (const Matrix& dr : spart(x)) out.push_back(kron(dr, flip(r)) + kron(r, flip(dr)));
        return out;
    };
    auto slift = spin.lift;
    m.lift = [slift](const RealVector& x) {
        const Vector p = slift(x);
        return Vector(kron(p, Vector(pauli_y() * p.conjugate())));
    };
    return m;
}

Model make_disc(const ZooSpec& spec) {
    const std::vector<double> n1v = spec.get_vec("n1", {1.0, 0.0, 0.0});
    const std::vector<double> n2v = spec.get_vec("n2", {0.0, 1.0, 0.0});
    if (n1v.size() != 3 || n2v.size() != 3) throw InvalidSpec("disc: n1, n2 must be 3-vectors");
    Eigen::Vector3d n1(n1v[0], n1v[1], n1v[2]), n2(n2v[0], n2v[1], n2v[2]);
    if (std::abs(n1.norm() - 1.0) > 1e-9 || std::abs(n2.norm() - 1.0) > 1e-9)
        throw InvalidSpec("disc: n1, n2 must be unit vectors");
    if (n1.cross(n2).norm() < 1e-9) throw InvalidSpec("disc: n1, n2 must not be collinear");
    // Affine coordinate maps f_i(x) = c + a . x; defaults f1 = x1, f2 = x2.
    const std::vector<double> f1 = spec.get_vec("f1", {0.0, 1.0, 0.0});
    const std::vector<double> f2 = spec.get_vec("f2", {0.0, 0.0, 1.0});
    if (f1.size() != 3 || f2.size() != 3) throw InvalidSpec("disc: f1, f2 must be (c, a1, a2)");

    Model m;
    m.name = "disc";
    m.dim = 2;
    m.n_params = 2;
    m.domain = {{-0.45, 0.45, false}, {-0.45, 0.45, false}};
    m.state = [n1, n2, f1, f2](const RealVector& x) {
        const double c1 = f1[0] + f1[1] * x[0] + f1[2] * x[1];
        const double c2 = f2[0] + f2[1] * x[0] + f2[2] * x[1];
        return Matrix((Matrix::Identity(2, 2) + dot_sigma(c1 * n1 + c2 * n2)) / 2.0);
    };
    m.partials = [n1, n2, f1, f2](const RealVector&) {
        return std::vector<Matrix>{dot_sigma(f1[1] * n1 + f2[1] * n2) / 2.0,
                                   dot_sigma(f1[2] * n1 + f2[2] * n2) / 2.0};
    };
    return m;
}

Model make_qutrit_las(const ZooSpec& spec) {
    const double a = spec.get("a", 0.2), b = spec.get("b", 0.3), c = spec.get("c", 0.5);
    if (!(a > 0 && b > 0 && c > 0) || std::abs(a + b + c - 1.0) > 1e-9 ||
        std::abs(a - b) < 1e-12 || std::abs(b - c) < 1e-12 || std::abs(a - c) < 1e-12)
        throw InvalidSpec("qutrit_las: need distinct positive a, b, c with a+b+c = 1");
    const std::vector<double> om = spec.get_vec("omega", {0.3, 0.5, 1.4});
    if (om.size() != 3) throw InvalidSpec("qutrit_las: omega must be (w12, w13, w23)");

    Matrix deriv(3, 3);
    deriv << 0.0, std::exp(kI * om[0]), std::exp(kI * om[1]),  //
        std::exp(-kI * om[0]), 0.0, std::exp(kI * om[2]),      //
        std::exp(-kI * om[1]), std::exp(-kI * om[2]), 0.0;
    Matrix base = Matrix::Zero(3, 3);
    base(0, 0) = a;
    base(1, 1) = b;
    base(2, 2) = c;

    const double x_max = 0.4 * std::min({a, b, c});
    Model m;
    m.name = "qutrit_las";
    m.dim = 3;
    m.n_params = 1;
    m.domain = {{-x_max, x_max, false}};
    m.state = [base, deriv](const RealVector& x) { return Matrix(base + x[0] * deriv); };
    m.partials = [deriv](const RealVector&) { return std::vector<Matrix>{deriv}; };
    return m;
}

}  // namespace

Matrix pauli_x() {
    Matrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}
Matrix pauli_y() {
    Matrix s(2, 2);
    s << 0, -kI, kI, 0;
    return s;
}
Matrix pauli_z() {
    Matrix s(2, 2);
    s << 1, 0, 0, -1;
    return s;
}

Matrix swap_matrix(int d) {
    Matrix s = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
    return s;
}

double ZooSpec::get(const std::string& key, double fallback) const {
    const auto it = scalars.find(key);
    return it == scalars.end() ? fallback : it->second;
}

double ZooSpec::require(const std::string& key) const {
    const auto it = scalars.find(key);
    if (it == scalars.end()) throw InvalidSpec(name + ": missing parameter '" + key + "'");
    return it->second;
}

std::vector<double> ZooSpec::get_vec(const std::string& key, const std::vector<double>& fallback) const {
    const auto it = vectors.find(key);
    return it == vectors.end() ? fallback : it->second;
}

ZooSpec ZooSpec::inner_spec() const {
    const auto it = strings.find("inner");
    if (it == strings.end()) throw InvalidSpec(name + ": missing 'inner' model name");
    ZooSpec inner = *this;
    inner.name = it->second;
    inner.strings.erase("inner");
    // Domain overrides apply to the wrapper, not the inner constructor.
    inner.vectors.erase("domain_lo");
    inner.vectors.erase("domain_hi");
    return inner;
}

Model antiparallel_of(const Model& inner) {
    Model m;
    m.name = "antiparallel_of(" + inner.name + ")";
    m.dim = inner.dim * inner.dim;
    m.n_params = inner.n_params;
    m.domain = inner.domain;
    auto istate = inner.state;
    m.state = [istate](const RealVector& x) {
        const Matrix r = istate(x);
        return Matrix(kron(r, r.conjugate()));
    };
    if (inner.partials) {
        auto ipart = inner.partials;
        m.partials = [istate, ipart](const RealVector& x) {
            const Matrix r = istate(x);
            std::vector<Matrix> out;
            for (const Matrix& dr : ipart(x))
                out.push_back(kron(dr, r.conjugate()) + kron(r, dr.conjugate()));
            return out;
        };
    }
    if (inner.lift) {
        auto ilift = inner.lift;
        m.lift = [ilift](const RealVector& x) {
            const Vector p = ilift(x);
            return kron(p, Vector(p.conjugate()));
        };
    }
    return m;
}

Model eqs_of(const Model& inner) {
    if (!inner.lift) throw InvalidSpec("eqs: inner model '" + inner.name + "' exposes no pure lift");
    Model m;
    m.name = "eqs(" + inner.name + ")";
    m.dim = 2 * inner.dim;
    m.n_params = inner.n_params;
    m.domain = inner.domain;
    Vector e0(2), e1(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    auto ilift = inner.lift;
    m.lift = [ilift, e0, e1](const RealVector& x) {
        const Vector p = ilift(x);
        return Vector((kron(p, e0) + kron(Vector(p.conjugate()), e1)) / std::sqrt(2.0));
    };
    auto lift = m.lift;
    m.state = [lift](const RealVector& x) {
        const Vector v = lift(x);
        return Matrix(v * v.adjoint());
    };
    if (inner.lift_partials) {
        auto idlift = inner.lift_partials;
        m.partials = [lift, idlift, e0, e1](const RealVector& x) {
            std::vector<Vector> dpsi;
            for (const Vector& dp : idlift(x))
                dpsi.push_back((kron(dp, e0) + kron(Vector(dp.conjugate()), e1)) / std::sqrt(2.0));
            return pure_partials(lift(x), dpsi);
        };
    }
    return m;
}

Model depolarize(const Model& inner, double delta) {
    if (!(delta >= 0.0 && delta < 1.0)) throw InvalidSpec("depolarize: need delta in [0, 1)");
    Model m = inner;
    m.name = inner.name + "_depolarized";
    m.lift = nullptr;
    m.lift_partials = nullptr;
    const int d = inner.dim;
    auto istate = inner.state;
    m.state = [istate, delta, d](const RealVector& x) {
        return Matrix((1.0 - delta) * istate(x) + delta / d * Matrix::Identity(d, d));
    };
    if (inner.partials) {
        auto ipart = inner.partials;
        m.partials = [ipart, delta](const RealVector& x) {
            std::vector<Matrix> out = ipart(x);
            for (Matrix& dr : out) dr *= (1.0 - delta);
            return out;
        };
    }
    return m;
}

Model make_model(const ZooSpec& spec) {
    Model m;
    if (spec.name == "spin") {
        m = make_spin();
    } else if (spec.name == "off_equator_spin") {
        m = make_off_equator_spin(spec.get("c", kPi / 2.0));
    } else if (spec.name == "noon") {
        m = make_noon(static_cast<int>(spec.require("N")));
    } else if (spec.name == "superdense") {
        m = make_superdense(spec.get("r", 0.5));
    } else if (spec.name == "magnetometry") {
        m = make_magnetometry(static_cast<int>(spec.require("N")), spec.get("delta_y", 0.0),
                              spec.get("delta_z", 0.0));
    } else if (spec.name == "antiparallel") {
        m = make_antiparallel();
    } else if (spec.name == "antiparallel_depolarized") {
        m = depolarize(make_antiparallel(), spec.require("delta"));
        m.name = "antiparallel_depolarized";
    } else if (spec.name == "disc") {
        m = make_disc(spec);
    } else if (spec.name == "qutrit_las") {
        m = make_qutrit_las(spec);
    } else if (spec.name == "eqs") {
        m = eqs_of(make_model(spec.inner_spec()));
    } else if (spec.name == "antiparallel_of") {
        m = antiparallel_of(make_model(spec.inner_spec()));
    } else {
        throw UnknownName("make_model: unknown model '" + spec.name + "'");
    }
    m.domain = override_domain(spec, m.domain);
    return m;
}

Antiunitary canonical_gas(const ZooSpec& spec) {
    if (spec.name == "spin")
        throw NoKnownGas("spin: the full Bloch sphere model has no GAS");
    if (spec.name == "off_equator_spin") {
        const double c = spec.get("c", kPi / 2.0);
        if (std::abs(c - kPi / 2.0) > 1e-12)
            throw NoKnownGas("off_equator_spin: no GAS except at the equator c = pi/2");
        // spin-flip followed by a pi rotation about z
        return Antiunitary{Matrix(-kI * pauli_z() * pauli_y())};
    }
    if (spec.name == "noon") return Antiunitary{pauli_x()};
    if (spec.name == "superdense") {
        if (std::abs(spec.get("r", 0.5) - 0.5) > 1e-12)
            throw NoKnownGas("superdense: weakly commutative (and symmetric) only at r = 1/2");
        return Antiunitary{kron(pauli_y(), pauli_y())};
    }
    if (spec.name == "magnetometry") {
        const int n = static_cast<int>(spec.require("N"));
        if (n % 2 != 0) throw NoKnownGas("magnetometry: no documented imaginarity-free deltas for odd N");
        Matrix m = Matrix::Identity(1, 1);
        for (int i = 0; i < n; ++i) m = kron(m, pauli_y());
        return Antiunitary{std::move(m)};
    }
    if (spec.name == "antiparallel" || spec.name == "antiparallel_depolarized")
        return Antiunitary{Matrix(swap_matrix(2) * kron(pauli_y(), pauli_y()))};
    if (spec.name == "disc") {
        const std::vector<double> n1v = spec.get_vec("n1", {1.0, 0.0, 0.0});
        const std::vector<double> n2v = spec.get_vec("n2", {0.0, 1.0, 0.0});
        Eigen::Vector3d n1(n1v[0], n1v[1], n1v[2]), n2(n2v[0], n2v[1], n2v[2]);
        Eigen::Vector3d axis = n1.cross(n2).normalized();
        // spin-flip then pi rotation about the disc normal
        return Antiunitary{Matrix(-kI * dot_sigma(axis) * pauli_y())};
    }
    if (spec.name == "qutrit_las")
        throw NoKnownGas("qutrit_las: no GAS documented (LAS existence depends on the omegas)");
    if (spec.name == "eqs") {
        const Model inner = make_model(spec.inner_spec());
        return Antiunitary{kron(Matrix::Identity(inner.dim, inner.dim), pauli_x())};
    }
    if (spec.name == "antiparallel_of") {
        const Model inner = make_model(spec.inner_spec());
        return Antiunitary{swap_matrix(inner.dim)};
    }
    throw UnknownName("canonical_gas: unknown model '" + spec.name + "'");
}

namespace {

std::vector<Vector> gisin_vectors() {
    const double alpha = (std::sqrt(3.0) + 1.0) / (2.0 * std::sqrt(2.0));
    const double beta = (std::sqrt(3.0) - 1.0) / (2.0 * std::sqrt(2.0));
    std::vector<Eigen::Vector3d> ns;
    for (int k = 0; k < 3; ++k) {
        const double az = k * 2.0 * kPi / 3.0;
        ns.emplace_back(2.0 * std::sqrt(2.0) / 3.0 * std::cos(az),
                        2.0 * std::sqrt(2.0) / 3.0 * std::sin(az), 1.0 / 3.0);
    }
    ns.emplace_back(0.0, 0.0, -1.0);
    std::vector<Vector> out;
    for (const auto& n : ns)
        out.push_back(alpha * kron(bloch_ket(n), bloch_ket_anti(n)) +
                      beta * kron(bloch_ket_anti(n), bloch_ket(n)));
    return out;
}

std::vector<Vector> bipartite_flip_basis() {
    // Reference basis of the two-spin flip conjugation, k = Z sector.
    Vector zp(2), zm(2);
    zp << 1.0, 0.0;
    zm << 0.0, 1.0;
    std::vector<Vector> out;
    for (double s : {1.0, -1.0})
        out.push_back((kron(zm, zm) + s * kron(zp, zp)) / (-std::sqrt(2.0) * kI));
    for (double s : {1.0, -1.0}) out.push_back((kron(zm, zp) + s * kron(zp, zm)) / std::sqrt(2.0));
    return out;
}

}  // namespace

Povm canonical_basis(const std::string& basis_name, const ZooSpec& model_spec) {
    if (basis_name == "gisin") return Povm::from_vectors(gisin_vectors(), 1.0, "gisin");
    if (basis_name == "antiparallel_product") {
        Vector v0 = Vector::Zero(4), v1 = Vector::Zero(4), v2(4), v3(4);
        v0[1] = 1.0;  // |01>
        v1[2] = 1.0;  // |10>
        v2 << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
        v3 << -kI / std::sqrt(2.0), 0.0, 0.0, kI / std::sqrt(2.0);
        return Povm::from_vectors({v0, v1, v2, v3}, 1.0, "ap");
    }
    if (basis_name == "bell") {
        Vector phi_plus(4);
        phi_plus << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
        std::vector<Vector> vecs{phi_plus};
        const Matrix eye2 = Matrix::Identity(2, 2);
        for (const Matrix& s : {pauli_x(), pauli_y(), pauli_z()})
            vecs.push_back(kron(Matrix(kI * s), eye2) * phi_plus);
        return Povm::from_vectors(vecs, 1.0, "bell");
    }
    if (basis_name == "noon_pm") {
        Vector p(2), m(2);
        p << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        m << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
        return Povm::from_vectors({p, m}, 1.0, "pm");
    }
    if (basis_name == "magnetometry_bipartite") {
        const int n = static_cast<int>(model_spec.require("N"));
        if (n % 2 != 0) throw InvalidSpec("magnetometry_bipartite: needs even N");
        Povm pair = Povm::from_vectors(bipartite_flip_basis(), 1.0, "bp");
        Povm out = pair;
        for (int i = 2; i < n; i += 2) out = tensor_product(out, pair);
        return out;
    }
    if (basis_name == "magnetometry_pauli") {
        const int n = static_cast<int>(model_spec.require("N"));
        const int d = 1 << n;
        Povm out;
        const char* names[3] = {"X", "Y", "Z"};
        const Matrix paulis[3] = {pauli_x(), pauli_y(), pauli_z()};
        for (int k = 0; k < 3; ++k) {
            Matrix sk = Matrix::Identity(1, 1);
            for (int i = 0; i < n; ++i) sk = kron(sk, paulis[k]);
            out.elements.push_back((Matrix::Identity(d, d) + sk) / 6.0);
            out.labels.push_back(std::string(names[k]) + "+");
            out.elements.push_back((Matrix::Identity(d, d) - sk) / 6.0);
            out.labels.push_back(std::string(names[k]) + "-");
        }
        return out;
    }
    throw UnknownName("canonical_basis: unknown basis '" + basis_name + "'");
}

std::vector<ZooEntry> zoo_list() {
    return {
        {"spin", "none (eta in [0,pi], phi in [0,2pi])", "none", "-"},
        {"off_equator_spin", "c (latitude, default pi/2)", "spin-flip + pi z-rotation at c = pi/2 only", "-"},
        {"noon", "N (photons); phi in [0, pi/N]", "basis-swap conjugation (sigma_x)", "noon_pm"},
        {"superdense", "r (Schmidt weight, default 1/2)", "(sigma_y (x) sigma_y) conj at r = 1/2", "bell"},
        {"magnetometry", "N (spins, even for GAS), delta_y, delta_z", "spin-flip^(x)N for even N",
         "magnetometry_bipartite, magnetometry_pauli"},
        {"antiparallel", "none (eta, phi as spin)", "swap . flip^(x)2", "gisin, antiparallel_product"},
        {"antiparallel_depolarized", "delta in [0,1)", "swap . flip^(x)2", "gisin, antiparallel_product"},
        {"disc", "n1, n2 (unit 3-vectors), f1, f2 (affine coeffs)", "spin-flip + pi rotation about the normal",
         "-"},
        {"qutrit_las", "a, b, c (probabilities), omega = (w12, w13, w23)", "none", "-"},
        {"eqs", "inner model spec", "(I (x) sigma_x) conj", "reference-basis product"},
        {"antiparallel_of", "inner model spec", "swap conj", "-"},
    };
}

}  // namespace qmetro
