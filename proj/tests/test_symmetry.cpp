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

ZooSpec qutrit_spec(double w12, double w13, double w23) {
    ZooSpec s = spec_of("qutrit_las");
    s.scalars["a"] = 0.2;
    s.scalars["b"] = 0.3;
    s.scalars["c"] = 0.5;
    s.vectors["omega"] = {w12, w13, w23};
    return s;
}

}  // namespace

TEST_CASE("plain conjugation leaves real matrices alone") {
    const Antiunitary conj{Matrix::Identity(3, 3)};
    Matrix a(3, 3);
    a.setZero();
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(2, 2) = -1.0;
    CHECK(max_abs(apply_antiunitary(conj, a) - a) == 0.0);
}

TEST_CASE("spin flip sends the Bloch vector to its antipode") {
    const Model spin = make_model(spec_of("spin"));
    RealVector x(2), xf(2);
    x << 1.1, 0.7;
    xf << kPi - 1.1, kPi + 0.7;  // antipodal point
    const Antiunitary flip{pauli_y()};
    CHECK(max_abs(apply_antiunitary(flip, spin.state(x)) - spin.state(xf)) < 1e-14);
}

TEST_CASE("conjugations square to the identity map; spin flip does not") {
    Rng rng(51);
    const Matrix u = random_unitary(4, rng);
    const Antiunitary conj{Matrix(u * u.transpose())};
    REQUIRE(conj.is_conjugation());
    for (int trial = 0; trial < 100; ++trial) {
        Matrix a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
        REQUIRE(max_abs(apply_antiunitary(conj, apply_antiunitary(conj, a)) - a) < 1e-9);
    }
    const Antiunitary flip{pauli_y()};
    CHECK(!flip.is_conjugation());
}

TEST_CASE("tensor product of two spin flips is a conjugation") {
    const Antiunitary flip{pauli_y()};
    const Antiunitary pair = compose_tensor(flip, flip);
    CHECK(pair.is_conjugation());
    CHECK(!flip.is_conjugation());

    const Antiunitary conj1{Matrix::Identity(2, 2)};
    CHECK(compose_tensor(conj1, conj1).is_conjugation());

    // Direct composition oracle: applying the pair twice is the identity map.
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
        REQUIRE(max_abs(apply_antiunitary(pair, apply_antiunitary(pair, a)) - a) < 1e-12);
    }
}

TEST_CASE("verify_gas: antiparallel symmetry over a 20x20 grid") {
    const Model anti = make_model(spec_of("antiparallel"));
    const Antiunitary gas = canonical_gas(spec_of("antiparallel"));
    std::vector<RealVector> grid;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            RealVector x(2);
            x << kPi * i / 19.0, 2.0 * kPi * j / 19.0;
            grid.push_back(x);
        }
    const SymmetryVerdict v = verify_gas(anti, gas, grid);
    CHECK(v.found());
    CHECK(v.residual <= 1e-10);
}

TEST_CASE("verify_gas: the bare spin flip is not a symmetry of the spin model") {
    const Model spin = make_model(spec_of("spin"));
    std::vector<RealVector> sample;
    RealVector x(2);
    x << kPi / 2.0, 0.3;
    sample.push_back(x);
    const SymmetryVerdict v = verify_gas(spin, Antiunitary{pauli_y()}, sample);
    CHECK(!v.found());
    // The state maps to its antipode: trace distance is the Bloch distance 1.
    CHECK(v.residual == doctest::Approx(1.0));
}

TEST_CASE("find_las: qutrit counterexample yields a cycle certificate") {
    const Model bad = make_model(qutrit_spec(0.3, 0.5, 1.4));  // w12+w23-w13 = 1.2, not in pi Z
    RealVector x(1);
    x << 0.0;
    const SymmetryVerdict v = find_las(evaluate(bad, x));
    CHECK(v.status == SymmetryVerdict::Status::not_found);
    CHECK(v.certificate_cycle.size() == 3);
    CHECK(v.cycle_defect > 0.1);
}

TEST_CASE("find_las: consistent qutrit phases yield a verified witness") {
    const Model good = make_model(qutrit_spec(0.3, 0.8, 0.5));  // w13 = w12 + w23
    RealVector x(1);
    x << 0.0;
    const StatePoint pt = evaluate(good, x);
    const SymmetryVerdict v = find_las(pt);
    REQUIRE(v.found());
    REQUIRE(v.witness.has_value());
    CHECK(v.residual <= 1e-9);
    CHECK(max_abs(apply_antiunitary(*v.witness, pt.rho) - pt.rho) <= 1e-9);
    CHECK(max_abs(apply_antiunitary(*v.witness, pt.partials[0]) - pt.partials[0]) <= 1e-9);
    CHECK(v.witness->is_conjugation());
}

TEST_CASE("find_las: off-equator spin has pointwise symmetries but no global one") {
    ZooSpec spec = spec_of("off_equator_spin");
    spec.scalars["c"] = kPi / 3.0;
    const Model m = make_model(spec);
    CHECK_THROWS_AS(canonical_gas(spec), NoKnownGas);
    RealVector x(1);
    x << 1.0;
    const SymmetryVerdict v = find_las(evaluate(m, x));
    CHECK(v.found());
    CHECK(v.residual <= 1e-9);
}

TEST_CASE("find_las: degenerate mixed states are inconclusive") {
    Model m;
    m.name = "degenerate";
    m.dim = 3;
    m.n_params = 1;
    m.domain = {{-0.1, 0.1, false}};
    m.state = [](const RealVector& x) {
        Matrix r = Matrix::Zero(3, 3);
        r(0, 0) = 0.25;
        r(1, 1) = 0.25;
        r(2, 2) = 0.5;
        r(0, 2) = r(2, 0) = 0.1 * x[0];
        return r;
    };
    // Exactly repeated eigenvalues {0.25, 0.25} at x = 0 with a nonzero
    // derivative: the within-block search is deliberately out of scope.
    RealVector x(1);
    x << 0.0;
    CHECK(find_las(evaluate(m, x)).status == SymmetryVerdict::Status::inconclusive);
}

TEST_CASE("invariant_povm of the plain conjugation is the computational basis") {
    const Povm p = invariant_povm(Antiunitary{Matrix::Identity(3, 3)}, 1, 0);
    REQUIRE(p.size() == 3);
    for (int w = 0; w < 3; ++w) {
        Matrix e = Matrix::Zero(3, 3);
        e(w, w) = 1.0;
        bool matched = false;
        for (int v = 0; v < 3; ++v) matched = matched || max_abs(p.elements[v] - e) < 1e-12;
        CHECK(matched);
    }
}

TEST_CASE("invariant_povm of the antiparallel GAS reproduces the product basis") {
    const Antiunitary gas = canonical_gas(spec_of("antiparallel"));
    const Povm takagi = invariant_povm(gas, 1, 0);
    const Povm product = canonical_basis("antiparallel_product", spec_of("antiparallel"));
    for (const Matrix& e : product.elements) {
        bool matched = false;
        for (const Matrix& f : takagi.elements) matched = matched || max_abs(e - f) < 1e-10;
        CHECK(matched);
    }
}

TEST_CASE("invariant_povm elements are rank-1, invariant, complete for m in {1,2,3}") {
    Rng rng(53);
    for (const char* name : {"antiparallel", "noon"}) {
        ZooSpec spec = spec_of(name);
        if (spec.name == "noon") spec.scalars["N"] = 4;
        const Antiunitary gas = canonical_gas(spec);
        for (int m : {1, 2, 3}) {
            for (std::uint64_t seed : {1ull, 77ull}) {
                const Povm p = invariant_povm(gas, m, seed);
                Matrix sum = Matrix::Zero(gas.m.rows(), gas.m.cols());
                for (const Matrix& e : p.elements) {
                    sum += e;
                    REQUIRE(max_abs(apply_antiunitary(gas, e) - e) < 1e-10);
                    const EigenSystem es = hermitian_eig(e);
                    int rank = 0;
                    for (int k = 0; k < es.eigenvalues.size(); ++k)
                        if (es.eigenvalues[k] > 1e-10) ++rank;
                    REQUIRE(rank == 1);
                }
                REQUIRE(max_abs(sum - Matrix::Identity(gas.m.rows(), gas.m.cols())) < 1e-10);
            }
        }
    }
    CHECK_THROWS_AS(invariant_povm(Antiunitary{pauli_y()}, 1, 0), NotConjugation);
}

TEST_CASE("canonical symmetries of spanning models are conjugations") {
    ZooSpec sd = spec_of("superdense");
    sd.scalars["r"] = 0.5;
    const Antiunitary gsd = canonical_gas(sd);
    CHECK(gsd.is_conjugation());
    const Antiunitary ganti = canonical_gas(spec_of("antiparallel"));
    CHECK(ganti.is_conjugation());

    Rng rng(54);
    const Model msd = make_model(sd);
    std::vector<RealVector> sample;
    for (int i = 0; i < 10; ++i) sample.push_back(random_point(msd, rng));
    CHECK(verify_gas(msd, gsd, sample).found());
}

TEST_CASE("find_las positive implies weak commutativity; planted symmetries are found") {
    Rng rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const Model m = random_nondegenerate_model(4, 2, rng, true);
        const StatePoint pt = evaluate(m, RealVector::Zero(2));
        const SymmetryVerdict v = find_las(pt);
        REQUIRE(v.found());
        REQUIRE(fisher_report(pt).weakly_commutative);
    }
}

TEST_CASE("pure weakly commutative points have a LAS") {
    Rng rng(56);
    ZooSpec noonspec = spec_of("noon");
    noonspec.scalars["N"] = 3;
    const Model noon = make_model(noonspec);
    const Model anti = make_model(spec_of("antiparallel"));
    for (const Model* m : {&noon, &anti}) {
        for (int trial = 0; trial < 10; ++trial) {
            const StatePoint pt = evaluate(*m, random_point(*m, rng));
            REQUIRE(fisher_report(pt).weakly_commutative);
            REQUIRE(find_las(pt).found());
        }
    }
}

TEST_CASE("asymmetry vanishes exactly on the LAS-positive set") {
    Rng rng(57);
    for (int trial = 0; trial < 5; ++trial) {
        const Model m = random_nondegenerate_model(4, 2, rng, true);
        const StatePoint pt = evaluate(m, RealVector::Zero(2));
        REQUIRE(find_las(pt).found());
        CHECK(asymmetry_measures(pt).m_sq <= 1e-8);
    }
    // Counterexample direction: positive asymmetry, no LAS.
    const Model bad = make_model(qutrit_spec(0.3, 0.5, 1.4));
    RealVector x(1);
    x << 0.0;
    const StatePoint pt = evaluate(bad, x);
    REQUIRE(!find_las(pt).found());
    const AsymmetryReport rep = asymmetry_measures(pt);
    CHECK(rep.m_sq > 1e-7);
    CHECK(rep.m1_max >= 0.0);
    CHECK(rep.m1_mean >= 0.0);
    CHECK(rep.m1_max >= rep.m1_mean - 1e-12);
}

TEST_CASE("asymmetry rejects degenerate states") {
    const Model anti = make_model(spec_of("antiparallel"));  // pure: spectrum is degenerate
    RealVector x(2);
    x << 1.0, 0.5;
    CHECK_THROWS_AS(asymmetry_measures(evaluate(anti, x)), DegenerateState);
}

TEST_CASE("asymmetry is invariant under isometric parameter rotations") {
    Rng rng(58);
    const Model m = random_nondegenerate_model(4, 2, rng, false);
    StatePoint pt = evaluate(m, RealVector::Zero(2));
    const double m0 = asymmetry_measures(pt).m_sq;

    const RealMatrix r = random_orthogonal(2, rng);
    StatePoint rotated = pt;
    rotated.partials = {r(0, 0) * pt.partials[0] + r(0, 1) * pt.partials[1],
                        r(1, 0) * pt.partials[0] + r(1, 1) * pt.partials[1]};
    CHECK(asymmetry_measures(rotated).m_sq == doctest::Approx(m0).epsilon(1e-7));
}
