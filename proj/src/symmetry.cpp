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

#include "qmetro/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qmetro {

Matrix apply_antiunitary(const Antiunitary& theta, const Matrix& a) {
    if (theta.m.rows() != a.rows() || a.rows() != a.cols())
        throw DimensionMismatch("apply_antiunitary: dimension mismatch");
    return theta.m * a.conjugate() * theta.m.adjoint();
}

Antiunitary compose_tensor(const Antiunitary& a, const Antiunitary& b) {
    return Antiunitary{kron(a.m, b.m)};
}

SymmetryVerdict verify_gas(const Model& model, const Antiunitary& theta,
                           const std::vector<RealVector>& sample) {
    if (sample.empty()) throw InvalidSpec("verify_gas: empty sample");
    if (theta.m.rows() != model.dim) throw DimensionMismatch("verify_gas: operator/model dimension");
    SymmetryVerdict v;
    v.tolerance = 1e-8;
    for (const RealVector& x : sample) {
        const Matrix rho = model.state(x);
        v.residual = std::max(v.residual, trace_norm(apply_antiunitary(theta, rho) - rho) / 2.0);
    }
    v.status = (v.residual <= v.tolerance) ? SymmetryVerdict::Status::found
                                           : SymmetryVerdict::Status::not_found;
    if (v.found()) v.witness = theta;
    return v;
}

namespace {

constexpr double kGapTol = 1e-9;
constexpr double kEdgeTol = 1e-10;
constexpr double kCycleTol = 1e-7;

double mod_pi_defect(double angle) {
    double a = std::fmod(angle, std::numbers::pi);
    if (a < 0) a += std::numbers::pi;
    return std::min(a, std::numbers::pi - a);
}

double witness_residual(const Antiunitary& theta, const StatePoint& point) {
    double r = trace_norm(apply_antiunitary(theta, point.rho) - point.rho) / 2.0;
    for (const Matrix& dr : point.partials)
        r = std::max(r, trace_norm(apply_antiunitary(theta, dr) - dr) / 2.0);
    return r;
}

struct Edge {
    int j, k;
    double constraint;  // psi_k - psi_j = constraint (mod pi)
};

// Non-degenerate mixed state: any unitary that keeps the diagonalized state
// real factors into eigenbasis phases times a real orthogonal matrix, so a
// LAS exists iff consistent eigenbasis phases exist.  Solve the phase
// constraints on a spanning forest and check every remaining edge closes
// mod pi.
SymmetryVerdict find_las_phase_graph(const StatePoint& point, const EigenSystem& es) {
    const int d = static_cast<int>(point.rho.rows());
    SymmetryVerdict v;
    v.tolerance = 1e-8;

    std::vector<Edge> edges;
    for (const Matrix& dr : point.partials) {
        const Matrix a = es.eigenvectors.adjoint() * dr * es.eigenvectors;
        const double na = std::max(a.norm(), 1e-300);
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k)
                if (std::abs(a(j, k)) > kEdgeTol * na) edges.push_back({j, k, -std::arg(a(j, k))});
    }

    std::vector<double> psi(d, 0.0);
    std::vector<int> comp(d, -1), parent(d, -1), parent_edge(d, -1);
    std::vector<std::vector<std::pair<int, int>>> adj(d);  // (neighbor, edge idx)
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        adj[edges[e].j].push_back({edges[e].k, e});
        adj[edges[e].k].push_back({edges[e].j, e});
    }
    std::vector<bool> tree_edge(edges.size(), false);
    for (int s = 0; s < d; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = s;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (auto [w, e] : adj[u]) {
                if (comp[w] >= 0) continue;
                comp[w] = s;
                parent[w] = u;
                parent_edge[w] = e;
                tree_edge[e] = true;
                psi[w] = (edges[e].j == u) ? psi[u] + edges[e].constraint : psi[u] - edges[e].constraint;
                queue.push_back(w);
            }
        }
    }

    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (tree_edge[e]) continue;
        const double defect = mod_pi_defect(psi[edges[e].k] - psi[edges[e].j] - edges[e].constraint);
        if (defect > kCycleTol) {
            v.status = SymmetryVerdict::Status::not_found;
            v.cycle_defect = defect;
            // Cycle: tree paths from j and k to their common ancestor + edge.
            std::vector<int> pj, pk;
            for (int u = edges[e].j; u >= 0; u = parent[u]) pj.push_back(u);
            for (int u = edges[e].k; u >= 0; u = parent[u]) pk.push_back(u);
            while (pj.size() > 1 && pk.size() > 1 && pj[pj.size() - 2] == pk[pk.size() - 2]) {
                pj.pop_back();
                pk.pop_back();
            }
            v.certificate_cycle = pj;
            for (auto it = pk.rbegin() + 1; it != pk.rend(); ++it) v.certificate_cycle.push_back(*it);
            std::ostringstream os;
            os << "inconsistent phase cycle, defect " << defect << " rad (mod pi)";
            v.message = os.str();
            return v;
        }
    }

    Matrix u = es.eigenvectors;
    for (int k = 0; k < d; ++k) u.col(k) *= std::exp(Complex(0.0, psi[k]));
    Antiunitary theta{u * u.transpose()};
    v.residual = witness_residual(theta, point);
    if (v.residual <= v.tolerance) {
        v.status = SymmetryVerdict::Status::found;
        v.witness = std::move(theta);
    } else {
        v.status = SymmetryVerdict::Status::not_found;
        v.message = "phase assignment found but witness residual exceeds tolerance";
    }
    return v;
}

// Pure state: a LAS exists iff the Gram matrix of the horizontal lift
// {psi, h_i = P_perp d_i psi} is real; the conjugation of any real-coefficient
// orthonormalization then fixes rho and every partial.
SymmetryVerdict find_las_pure(const StatePoint& point, const EigenSystem& es) {
    const int d = static_cast<int>(point.rho.rows());
    SymmetryVerdict v;
    v.tolerance = 1e-8;

    const Vector psi = es.eigenvectors.col(d - 1);
    std::vector<Vector> span{psi};
    for (const Matrix& dr : point.partials) {
        const Vector h = dr * psi - (psi.adjoint() * dr * psi).value() * psi;
        span.push_back(h);
    }

    double gram_scale = 0.0, gram_imag = 0.0;
    for (const Vector& a : span)
        for (const Vector& b : span) {
            const Complex g = a.dot(b);
            gram_scale = std::max(gram_scale, std::abs(g));
            gram_imag = std::max(gram_imag, std::abs(g.imag()));
        }
    if (gram_imag > 1e-8 * (1.0 + gram_scale)) {
        v.status = SymmetryVerdict::Status::not_found;
        v.residual = gram_imag;
        v.message = "lift Gram matrix has imaginary part (not weakly commutative)";
        return v;
    }

    // Real-coefficient Gram-Schmidt keeps the span inside one real subspace.
    std::vector<Vector> basis;
    for (const Vector& vv : span) {
        Vector w = vv;
        for (const Vector& b : basis) w -= b.dot(w).real() * b;
        const double nw = w.norm();
        if (nw > 1e-9) basis.push_back(w / nw);
    }
    Matrix e(d, static_cast<int>(basis.size()));
    for (int k = 0; k < static_cast<int>(basis.size()); ++k) e.col(k) = basis[k];

    // Complete to a full orthonormal basis with the complement eigenvectors.
    if (e.cols() < d) {
        const Matrix p = Matrix::Identity(d, d) - e * e.adjoint();
        Eigen::SelfAdjointEigenSolver<Matrix> ep(hermitian_part(p));
        Matrix full(d, d);
        full.leftCols(e.cols()) = e;
        int c = static_cast<int>(e.cols());
        for (int k = 0; k < d && c < d; ++k)
            if (ep.eigenvalues()[k] > 0.5) full.col(c++) = ep.eigenvectors().col(k);
        e = full;
    }

    Antiunitary theta{e * e.transpose()};
    v.residual = witness_residual(theta, point);
    if (v.residual <= v.tolerance) {
        v.status = SymmetryVerdict::Status::found;
        v.witness = std::move(theta);
    } else {
        v.status = SymmetryVerdict::Status::not_found;
        v.message = "real-span witness residual exceeds tolerance";
    }
    return v;
}

}  // namespace

SymmetryVerdict find_las(const StatePoint& point) {
    const EigenSystem es = hermitian_eig(hermitian_part(point.rho));
    const int d = static_cast<int>(point.rho.rows());
    const double lmax = es.eigenvalues.maxCoeff();
    if (lmax <= 0) throw InvalidState("find_las: state has no positive eigenvalue");

    int rank = 0;
    for (int k = 0; k < d; ++k)
        if (es.eigenvalues[k] > 1e-12 * lmax) ++rank;
    if (rank == 1) return find_las_pure(point, es);

    double min_gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k + 1 < d; ++k) min_gap = std::min(min_gap, es.eigenvalues[k + 1] - es.eigenvalues[k]);
    if (d > 1 && min_gap <= kGapTol) {
        SymmetryVerdict v;
        v.status = SymmetryVerdict::Status::inconclusive;
        std::ostringstream os;
        os << "degenerate mixed state (eigenvalue gap " << min_gap << " <= " << kGapTol
           << "); within-block search not attempted";
        v.message = os.str();
        return v;
    }
    return find_las_phase_graph(point, es);
}

Povm invariant_povm(const Antiunitary& theta, int rotations, std::uint64_t seed) {
    if (!theta.is_conjugation()) throw NotConjugation("invariant_povm: unitary part is not symmetric");
    if (rotations < 1) throw InvalidSpec("invariant_povm: need at least one rotation");
    const int d = static_cast<int>(theta.m.rows());
    const Matrix w = takagi_factorize(theta.m).w;

    Povm povm;
    const double weight = 1.0 / rotations;
    for (int l = 0; l < rotations; ++l) {
        Matrix basis;
        if (l == 0) {
            basis = w;
        } else {
            Rng rng(Rng::child_seed(seed, static_cast<std::uint64_t>(l)));
            basis = w * random_orthogonal(d, rng).cast<Complex>();
        }
        for (int k = 0; k < d; ++k) {
            povm.elements.push_back(weight * (basis.col(k) * basis.col(k).adjoint()));
            povm.labels.push_back("r" + std::to_string(l) + "_b" + std::to_string(k));
        }
    }
    return povm;
}

namespace {

struct TorusObjective {
    // Terms r^2 sin^2(theta + psi_k - psi_j) per derivative entry j<k.
    struct Term {
        int j, k;
        double r2, theta;
    };
    std::vector<Term> terms;
    double scale = 0.0;  // 8/n

    double value(const RealVector& psi) const {
        double f = 0.0;
        for (const Term& t : terms) {
            const double s = std::sin(t.theta + psi[t.k] - psi[t.j]);
            f += t.r2 * s * s;
        }
        return scale * f;
    }
    RealVector gradient(const RealVector& psi) const {
        RealVector g = RealVector::Zero(psi.size());
        for (const Term& t : terms) {
            const double s = scale * t.r2 * std::sin(2.0 * (t.theta + psi[t.k] - psi[t.j]));
            g[t.k] += s;
            g[t.j] -= s;
        }
        return g;
    }
};

// Gradient descent with Barzilai-Borwein steps and an Armijo fallback.  The
// objective is invariant under a global phase shift, so the gauge is fixed
// only on return.
RealVector gradient_descent(const TorusObjective& obj, RealVector psi, int max_iter = 2000) {
    double f = obj.value(psi);
    RealVector g = obj.gradient(psi);
    double step = 0.1;
    for (int it = 0; it < max_iter; ++it) {
        const double gn2 = g.squaredNorm();
        if (gn2 <= 1e-26 * (1.0 + f * f)) break;
        double alpha = step;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt) {
            const RealVector trial = psi - alpha * g;
            const double ft = obj.value(trial);
            if (ft <= f - 1e-4 * alpha * gn2) {
                const RealVector g_new = obj.gradient(trial);
                const RealVector dpsi = trial - psi;
                const RealVector dg = g_new - g;
                const double denom = dpsi.dot(dg);
                step = (denom > 1e-300) ? std::clamp(dpsi.squaredNorm() / denom, 1e-6, 1e3) : 0.1;
                psi = trial;
                f = ft;
                g = g_new;
                moved = true;
                break;
            }
            alpha /= 2.0;
        }
        if (!moved) break;
    }
    psi.array() -= psi[0];  // gauge
    return psi;
}

// Derivative-free refinement for the non-smooth trace-norm objectives.
template <typename F>
RealVector compass_search(const F& fn, RealVector psi, double step0 = 0.3, double tol = 1e-9) {
    double f = fn(psi);
    double step = step0;
    const int n = static_cast<int>(psi.size());
    while (step > tol) {
        bool improved = false;
        for (int i = 1; i < n; ++i) {  // coordinate 0 is gauge-fixed
            for (double sgn : {1.0, -1.0}) {
                RealVector trial = psi;
                trial[i] += sgn * step;
                const double ft = fn(trial);
                if (ft < f - 1e-15) {
                    psi = trial;
                    f = ft;
                    improved = true;
                }
            }
        }
        if (!improved) step /= 2.0;
    }
    return psi;
}

}  // namespace

double asymmetry_objective(const StatePoint& point, const RealVector& phases) {
    const EigenSystem es = hermitian_eig(hermitian_part(point.rho));
    const int d = static_cast<int>(point.rho.rows());
    Matrix u = es.eigenvectors;
    for (int k = 0; k < d; ++k) u.col(k) *= std::exp(Complex(0.0, phases[k]));
    double total = 0.0;
    for (const Matrix& dr : point.partials) {
        const Matrix a = u.adjoint() * dr * u;
        total += 4.0 * a.imag().squaredNorm();
    }
    return total / static_cast<double>(point.partials.size());
}

AsymmetryReport asymmetry_measures(const StatePoint& point) {
    const EigenSystem es = hermitian_eig(hermitian_part(point.rho));
    const int d = static_cast<int>(point.rho.rows());
    const int n = static_cast<int>(point.partials.size());
    if (n == 0) throw InvalidSpec("asymmetry_measures: no partials");
    for (int k = 0; k + 1 < d; ++k)
        if (es.eigenvalues[k + 1] - es.eigenvalues[k] <= kGapTol)
            throw DegenerateState("asymmetry_measures: eigenvalue gap below 1e-9");

    TorusObjective obj;
    obj.scale = 8.0 / static_cast<double>(n);
    for (const Matrix& dr : point.partials) {
        const Matrix a = es.eigenvectors.adjoint() * dr * es.eigenvectors;
        for (int j = 0; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                const double r = std::abs(a(j, k));
                if (r > 1e-15) obj.terms.push_back({j, k, r * r, std::arg(a(j, k))});
            }
    }

    // Multi-start: psi = 0 plus seeded random starts (deterministic).
    std::vector<RealVector> starts{RealVector::Zero(d)};
    Rng rng(0x51D5EEDULL);
    for (int s = 1; s < 8; ++s) {
        RealVector p(d);
        p[0] = 0.0;
        for (int k = 1; k < d; ++k) p[k] = rng.uniform(0.0, std::numbers::pi);
        starts.push_back(p);
    }

    AsymmetryReport rep;
    rep.m_sq = std::numeric_limits<double>::infinity();
    std::vector<RealVector> minima;
    for (const RealVector& s : starts) {
        const RealVector m = gradient_descent(obj, s);
        minima.push_back(m);
        const double f = obj.value(m);
        if (f < rep.m_sq) {
            rep.m_sq = f;
            rep.minimizer = m;
        }
    }

    // Trace-norm imaginarity of the same conjugation family: M^1 per bullet
    // direction is ||d rho - Theta d rho Theta||_1 / 2.
    const auto trace_defects = [&](const RealVector& psi) {
        Matrix u = es.eigenvectors;
        for (int k = 0; k < d; ++k) u.col(k) *= std::exp(Complex(0.0, psi[k]));
        RealVector defects(n);
        for (int i = 0; i < n; ++i) {
            const Matrix a = u.adjoint() * point.partials[i] * u;
            defects[i] = trace_norm(a - a.conjugate()) / 2.0;
        }
        return defects;
    };
    const auto mean_obj = [&](const RealVector& psi) { return trace_defects(psi).mean(); };
    const auto max_obj = [&](const RealVector& psi) { return trace_defects(psi).maxCoeff(); };

    rep.m1_mean = mean_obj(rep.minimizer);
    rep.m1_max = max_obj(rep.minimizer);
    for (const RealVector& m : minima) {
        const RealVector pm = compass_search(mean_obj, m);
        rep.m1_mean = std::min(rep.m1_mean, mean_obj(pm));
        const RealVector px = compass_search(max_obj, m);
        rep.m1_max = std::min(rep.m1_max, max_obj(px));
    }
    return rep;
}

}  // namespace qmetro
