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

#include <doctest.h>

#include "test_support.hpp"

using namespace qmetro;
using namespace qmetro::test;

namespace {

Model classical_two_level() {
    Model m;
    m.name = "classical";
    m.dim = 2;
    m.n_params = 1;
    m.domain = {{0.05, 0.95, false}};
    m.state = [](const RealVector& x) {
        Matrix r = Matrix::Zero(2, 2);
        r(0, 0) = x[0];
        r(1, 1) = 1.0 - x[0];
        return r;
    };
    m.partials = [](const RealVector&) {
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = 1.0;
        d(1, 1) = -1.0;
        return std::vector<Matrix>{d};
    };
    return m;
}

}  // namespace

TEST_CASE("SLD of the classical model is diag(1/x, -1/(1-x))") {
    const Model m = classical_two_level();
    RealVector x(1);
    x << 0.25;
    const SldSet slds = compute_sld(evaluate(m, x));
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 4.0;
    expect(1, 1) = -4.0 / 3.0;
    CHECK(max_abs(slds.operators[0] - expect) < 1e-12);
}

TEST_CASE("spin SLDs match the closed forms") {
    const Model spin = make_model(spec_of("spin"));
    const double eta = 1.1, phi = 0.7;
    RealVector x(2);
    x << eta, phi;
    const SldSet slds = compute_sld(evaluate(spin, x));

    Matrix l_eta(2, 2), l_phi(2, 2);
    l_eta << -std::sin(eta), std::exp(Complex(0, -phi)) * std::cos(eta),
        std::exp(Complex(0, phi)) * std::cos(eta), std::sin(eta);
    l_phi << 0.0, Complex(0, -1) * std::exp(Complex(0, -phi)) * std::sin(eta),
        Complex(0, 1) * std::exp(Complex(0, phi)) * std::sin(eta), 0.0;
    CHECK(max_abs(slds.operators[0] - l_eta) < 1e-10);
    CHECK(max_abs(slds.operators[1] - l_phi) < 1e-10);
}

TEST_CASE("SLD residual and Lyapunov oracle on random full-rank qutrit models") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Model m = random_nondegenerate_model(3, 2, rng, false);
        const StatePoint pt = evaluate(m, random_point(m, rng));
        const SldSet slds = compute_sld(pt);
        for (int i = 0; i < 2; ++i) {
            const Matrix resid = slds.operators[i] * pt.rho + pt.rho * slds.operators[i] -
                                 2.0 * pt.partials[i];
            REQUIRE(resid.norm() <= 1e-8 * (1.0 + pt.partials[i].norm()));
            // Full-rank SLDs are unique: the Lyapunov solve must agree.
            REQUIRE(max_abs(slds.operators[i] - lyapunov_sld(pt.rho, pt.partials[i])) < 1e-8);
        }
    }
}

TEST_CASE("spin model curvature is sin(eta)/2") {
    const Model spin = make_model(spec_of("spin"));
    for (double eta : {0.3, 1.0, 2.4}) {
        RealVector x(2);
        x << eta, 1.3;
        const FisherReport rep = fisher_report(evaluate(spin, x));
        CHECK(rep.uhlmann(0, 1) == doctest::Approx(std::sin(eta) / 2.0).epsilon(1e-10));
        CHECK(rep.qfim(0, 0) == doctest::Approx(1.0));
        CHECK(rep.qfim(1, 1) == doctest::Approx(std::sin(eta) * std::sin(eta)));
        CHECK(!rep.weakly_commutative);
    }
}

TEST_CASE("antiparallel spins: doubled QFIM, vanishing curvature") {
    const Model anti = make_model(spec_of("antiparallel"));
    RealVector x(2);
    x << 2.0, 0.9;
    const FisherReport rep = fisher_report(evaluate(anti, x));
    CHECK(rep.qfim(0, 0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.qfim(1, 1) == doctest::Approx(2.0 * std::pow(std::sin(2.0), 2)).epsilon(1e-9));
    CHECK(std::abs(rep.qfim(0, 1)) < 1e-9);
    CHECK(max_abs(rep.uhlmann) < 1e-9);
    CHECK(rep.weakly_commutative);
}

TEST_CASE("superdense coding is weakly commutative iff r = 1/2") {
    Rng rng(32);
    for (double r : {0.3, 0.5}) {
        ZooSpec spec = spec_of("superdense");
        spec.scalars["r"] = r;
        const Model m = make_model(spec);
        const FisherReport rep = fisher_report(evaluate(m, random_point(m, rng)));
        CHECK(rep.weakly_commutative == (r == 0.5));
    }
}

TEST_CASE("cfim matches the closed form for the tetrahedral basis") {
    ZooSpec spec = spec_of("antiparallel_depolarized");
    spec.scalars["delta"] = 0.2;
    const Model m = make_model(spec);
    const Povm gisin = canonical_basis("gisin", spec);
    RealVector x(2);
    x << 3.0 * kPi / 4.0, kPi / 8.0;
    const CfimResult cf = cfim(evaluate(m, x), gisin);
    CHECK(max_abs(cf.matrix - gisin_closed_cfim(x[0], x[1], 0.2)) < 1e-10);
    CHECK(!cf.divergent);
}

TEST_CASE("eigenbasis measurement of a classical model saturates") {
    const Model m = classical_two_level();
    RealVector x(1);
    x << 0.3;
    const StatePoint pt = evaluate(m, x);
    Vector e0(2), e1(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    const Povm basis = Povm::from_vectors({e0, e1});
    const CfimResult cf = cfim(pt, basis);
    const FisherReport rep = fisher_report(pt);
    CHECK(max_abs(cf.matrix - rep.qfim) < 1e-10);
}

TEST_CASE("cfim against a finite-difference probability oracle") {
    Rng rng(33);
    const Model m = random_nondegenerate_model(2, 2, rng, false);
    const Povm povm = random_povm(2, 4, rng);
    const RealVector x = random_point(m, rng);
    const StatePoint pt = evaluate(m, x);
    const CfimResult cf = cfim(pt, povm);

    // Assemble by hand from centered differences of the outcome probabilities.
    const double h = 1e-6;
    RealMatrix grads(povm.size(), 2);
    for (int i = 0; i < 2; ++i) {
        RealVector xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        const Matrix rp = m.state(xp), rm = m.state(xm);
        for (int w = 0; w < povm.size(); ++w)
            grads(w, i) =
                ((povm.elements[w] * rp).trace().real() - (povm.elements[w] * rm).trace().real()) /
                (2.0 * h);
    }
    RealMatrix oracle = RealMatrix::Zero(2, 2);
    for (int w = 0; w < povm.size(); ++w) {
        const double p = (povm.elements[w] * pt.rho).trace().real();
        oracle += grads.row(w).transpose() * grads.row(w) / p;
    }
    CHECK(max_abs(cf.matrix - oracle) < 1e-6);
}

TEST_CASE("cfim flags genuinely divergent outcomes") {
    const Model m = classical_two_level();
    Model edge = m;
    edge.domain = {{0.0, 0.95, false}};
    RealVector x(1);
    x << 0.0;  // p_0 = 0 with dp_0 = 1
    const StatePoint pt = evaluate(edge, x);
    Vector e0(2), e1(2);
    e0 << 1.0, 0.0;
    e1 << 0.0, 1.0;
    const CfimResult cf = cfim(pt, Povm::from_vectors({e0, e1}));
    CHECK(cf.divergent);
}

TEST_CASE("qcrb_efficiency: saturation, no information, and mixed-state loss") {
    ZooSpec noon = spec_of("noon");
    noon.scalars["N"] = 3;
    const Model m = make_model(noon);
    const Povm inv = invariant_povm(canonical_gas(noon), 2, 5);
    Rng rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const Efficiency eff = qcrb_efficiency(evaluate(m, random_point(m, rng)), inv);
        CHECK(eff.min_ratio == doctest::Approx(1.0).epsilon(1e-6));
    }

    Povm trivial;
    trivial.elements = {Matrix::Identity(2, 2)};
    trivial.labels = {"all"};
    RealVector x(1);
    x << 0.4;
    const Efficiency none = qcrb_efficiency(evaluate(m, x), trivial);
    CHECK(none.min_ratio == doctest::Approx(0.0));

    ZooSpec dep = spec_of("antiparallel_depolarized");
    dep.scalars["delta"] = 0.2;
    const Model md = make_model(dep);
    RealVector y(2);
    y << 3.0 * kPi / 4.0, kPi / 8.0;
    const Efficiency lossy = qcrb_efficiency(evaluate(md, y), canonical_basis("gisin", dep));
    CHECK(lossy.min_ratio < 1.0 - 1e-3);
}

TEST_CASE("QFIM is gauge invariant under null-space SLD shifts") {
    // Rank-deficient state: pure antiparallel spins.
    const Model anti = make_model(spec_of("antiparallel"));
    RealVector x(2);
    x << 1.2, 0.5;
    const StatePoint pt = evaluate(anti, x);
    const SldSet slds = compute_sld(pt);
    const Matrix p_perp = Matrix::Identity(4, 4) - slds.support_projector;

    Rng rng(35);
    std::vector<Matrix> shifted = slds.operators;
    for (Matrix& l : shifted) {
        const Matrix k = p_perp * random_hermitian(4, rng) * p_perp;  // K rho + rho K = 0
        l += k;
    }
    CHECK(max_abs(qfim_from(pt.rho, slds.operators) - qfim_from(pt.rho, shifted)) < 1e-8);
}

TEST_CASE("pure models: quasi-classical iff weakly commutative") {
    Rng rng(36);
    const Model spin = make_model(spec_of("spin"));
    ZooSpec noonspec = spec_of("noon");
    noonspec.scalars["N"] = 2;
    const Model noon = make_model(noonspec);
    const Model anti = make_model(spec_of("antiparallel"));
    for (const Model* m : {&spin, &noon, &anti}) {
        for (int trial = 0; trial < 5; ++trial) {
            const FisherReport rep = fisher_report(evaluate(*m, random_point(*m, rng)));
            CHECK(rep.quasi_classical == rep.weakly_commutative);
        }
    }
}

TEST_CASE("CFIM is additive over product models") {
    const Model spin = make_model(spec_of("spin"));
    RealVector x(2);
    x << 1.3, 0.8;

    Model pair;
    pair.name = "spin_pair";
    pair.dim = 4;
    pair.n_params = 2;
    pair.domain = spin.domain;
    auto base = spin.state;
    auto dbase = spin.partials;
    pair.state = [base](const RealVector& p) {
        const Matrix r = base(p);
        return Matrix(kron(r, r));
    };
    pair.partials = [base, dbase](const RealVector& p) {
        const Matrix r = base(p);
        std::vector<Matrix> out;
        for (const Matrix& dr : dbase(p)) out.push_back(kron(dr, r) + kron(r, dr));
        return out;
    };

    Rng rng(37);
    const Povm single = random_basis_povm(2, rng);
    const CfimResult one = cfim(evaluate(spin, x), single);
    const CfimResult two = cfim(evaluate(pair, x), tensor_product(single, single));
    CHECK(max_abs(two.matrix - 2.0 * one.matrix) < 1e-8);
}

TEST_CASE("CFIM <= QFIM in the PSD order (small sample)") {
    Rng rng(38);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = 2 + static_cast<int>(rng.uniform(0.0, 3.0));
        const Model m = random_nondegenerate_model(d, 2, rng, false);
        const Povm povm = (trial % 2 == 0) ? random_basis_povm(d, rng) : random_povm(d, d + 2, rng);
        const StatePoint pt = evaluate(m, random_point(m, rng));
        const RealMatrix gap = fisher_report(pt).qfim - cfim(pt, povm).matrix;
        const Eigen::SelfAdjointEigenSolver<RealMatrix> es(gap);
        REQUIRE(es.eigenvalues().minCoeff() >= -1e-8 * (1.0 + gap.norm()));
    }
}
