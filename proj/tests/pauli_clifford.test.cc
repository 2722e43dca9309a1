// Copyright 2026 The RBSV Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <set>

#include "rbsv/clifford.h"
#include "rbsv/engines.h"
#include "rbsv/stabilizer_tableau.h"

using namespace rbsv;

namespace {

std::string key(const CliffordElement &c) {
    std::string out;
    for (size_t q = 0; q < c.num_qubits(); q++) {
        out += c.x_image(q).str() + "," + c.z_image(q).str() + ";";
    }
    return out;
}

// Every Pauli string on n qubits with the given phase.
std::vector<PauliString> all_paulis(size_t n, uint8_t phase = 0) {
    std::vector<PauliString> out;
    for (size_t code = 0; code < (size_t{1} << (2 * n)); code++) {
        PauliString p(n);
        for (size_t q = 0; q < n; q++) {
            p.set_x(q, (code >> (2 * q)) & 1);
            p.set_z(q, (code >> (2 * q + 1)) & 1);
        }
        p.set_phase(phase);
        out.push_back(p);
    }
    return out;
}

// Closure of the generator set under composition, by breadth-first search.
std::set<std::string> enumerate_group(size_t n) {
    std::set<std::string> seen;
    std::deque<CliffordElement> frontier{CliffordElement::identity(n)};
    seen.insert(key(frontier.front()));
    auto gens = generator_set(n);
    while (!frontier.empty()) {
        CliffordElement c = frontier.front();
        frontier.pop_front();
        for (const auto &g : gens) {
            CliffordElement next = c;
            next.apply(g);
            if (seen.insert(key(next)).second) {
                frontier.push_back(std::move(next));
            }
        }
    }
    return seen;
}

}  // namespace

TEST(pauli_string, multiply_examples) {
    PauliString p = PauliString::from_str("I") * PauliString::from_str("Z");
    EXPECT_EQ(p, PauliString::from_str("Z"));

    // XZ = -iY and ZX = iY.
    EXPECT_EQ(PauliString::from_str("X") * PauliString::from_str("Z"), PauliString::from_str("-iY"));
    EXPECT_EQ(PauliString::from_str("Z") * PauliString::from_str("X"), PauliString::from_str("+iY"));
    Matrix xz = mat_x() * mat_z();
    EXPECT_LT((xz - (PauliString::from_str("-iY").to_matrix())).norm(), 1e-14);

    EXPECT_EQ(PauliString::from_str("XZ") * PauliString::from_str("XZ"), PauliString::from_str("II"));
}

TEST(pauli_string, multiply_size_mismatch) {
    EXPECT_THROW(PauliString::from_str("X") * PauliString::from_str("XX"), std::invalid_argument);
}

TEST(pauli_string, multiply_matches_matrices) {
    for (const auto &a : all_paulis(2, 1)) {
        for (const auto &b : all_paulis(2, 2)) {
            Matrix expected = a.to_matrix() * b.to_matrix();
            PauliString ab = a * b;
            ASSERT_LT((ab.to_matrix() - expected).norm(), 1e-12) << a << " * " << b;
            ASSERT_LE(ab.weight(), a.weight() + b.weight());
        }
    }
}

TEST(pauli_string, associativity) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 500; k++) {
        PauliString a = PauliString::random(70, rng), b = PauliString::random(70, rng), c = PauliString::random(70, rng);
        a.set_phase(k & 3);
        ASSERT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(pauli_string, hermitian_iff_real_phase) {
    for (uint8_t phase = 0; phase < 4; phase++) {
        for (const auto &p : all_paulis(2, phase)) {
            Matrix m = p.to_matrix();
            EXPECT_TRUE(is_unitary(m));
            bool hermitian = (m - m.adjoint()).norm() < 1e-12;
            EXPECT_EQ(hermitian, p.is_hermitian());
            EXPECT_EQ(hermitian, phase == 0 || phase == 2);
        }
    }
}

TEST(pauli_string, str_roundtrip_and_matrix_roundtrip) {
    for (const char *text : {"+XYZ", "-iZ_X", "iYY", "-I"}) {
        PauliString p = PauliString::from_str(text);
        EXPECT_EQ(PauliString::from_str(p.str()), p);
        EXPECT_EQ(pauli_from_matrix(p.to_matrix()), p);
    }
    EXPECT_THROW(PauliString::from_str("XQ"), std::invalid_argument);
}

TEST(pauli_string, commutation) {
    EXPECT_FALSE(PauliString::from_str("X").commutes(PauliString::from_str("Z")));
    EXPECT_TRUE(PauliString::from_str("XX").commutes(PauliString::from_str("ZZ")));
    EXPECT_TRUE(PauliString::from_str("XI").commutes(PauliString::from_str("IZ")));
}

TEST(generator_gate, conjugation_matches_dense_matrices) {
    for (size_t n = 1; n <= 3; n++) {
        std::vector<GeneratorGate> gates = generator_set(n);
        for (uint32_t q = 0; q < n; q++) {
            gates.push_back(GeneratorGate::x(q));
        }
        for (const auto &g : gates) {
            Matrix u = g.to_matrix(n);
            ASSERT_TRUE(is_unitary(u));
            for (uint8_t phase : {0, 1, 2, 3}) {
                for (auto s : all_paulis(n, phase)) {
                    Matrix expected = u * s.to_matrix() * u.adjoint();
                    g.conjugate(s);
                    ASSERT_LT((s.to_matrix() - expected).norm(), 1e-12) << g.str();
                }
            }
        }
    }
}

TEST(generator_gate, validate) {
    EXPECT_THROW(GeneratorGate::h(2).validate(2), std::invalid_argument);
    EXPECT_THROW(GeneratorGate::cnot(1, 1).validate(2), std::invalid_argument);
    EXPECT_NO_THROW(GeneratorGate::cnot(1, 0).validate(2));
}

TEST(generator_gate, parse_circuit) {
    auto gates = parse_circuit("H 0\nP 1  # phase\n\nPDAG 0\nCNOT 0 1\nX 1\n");
    ASSERT_EQ(gates.size(), 5u);
    EXPECT_EQ(gates[0], GeneratorGate::h(0));
    EXPECT_EQ(gates[1], GeneratorGate::p(1));
    EXPECT_EQ(gates[2], GeneratorGate::pdag(0));
    EXPECT_EQ(gates[3], GeneratorGate::cnot(0, 1));
    EXPECT_EQ(gates[4], GeneratorGate::x(1));
    EXPECT_EQ(parse_circuit(format_circuit(gates)), gates);
    EXPECT_THROW(parse_circuit("CNOT 0"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("CNOT 1 1"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("T 0"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("H 0 1"), std::invalid_argument);
}

TEST(clifford, conjugate_examples) {
    auto h = CliffordElement::from_gate(GeneratorGate::h(0), 1);
    EXPECT_EQ(h.conjugate(PauliString::from_str("Z")), PauliString::from_str("X"));

    auto cx = CliffordElement::from_gate(GeneratorGate::cnot(0, 1), 2);
    EXPECT_EQ(cx.conjugate(PauliString::from_str("XI")), PauliString::from_str("XX"));

    auto id = CliffordElement::identity(3);
    for (const auto &s : all_paulis(3, 1)) {
        EXPECT_EQ(id.conjugate(s), s);
    }
    EXPECT_THROW(cx.conjugate(PauliString::from_str("X")), std::invalid_argument);
}

TEST(clifford, inverse_and_compose_examples) {
    auto h = CliffordElement::from_gate(GeneratorGate::h(0), 1);
    EXPECT_EQ(inverse(h), h);

    auto p = CliffordElement::from_gate(GeneratorGate::p(0), 1);
    auto pp = compose(p, p);
    // Z conjugation: X -> -X, Z -> Z.
    auto z = CliffordElement::from_images({PauliString::from_str("-X")}, {PauliString::from_str("Z")});
    EXPECT_EQ(pp, z);
    EXPECT_LT(max_deviation_up_to_phase(clifford_to_matrix(pp), mat_z()), 1e-12);

    EXPECT_THROW(compose(h, CliffordElement::identity(2)), std::invalid_argument);
}

TEST(clifford, compose_order) {
    // compose(first, second) applies first, then second: unitary second * first.
    auto h = CliffordElement::from_gate(GeneratorGate::h(0), 1);
    auto p = CliffordElement::from_gate(GeneratorGate::p(0), 1);
    Matrix expected = mat_p() * mat_h();
    EXPECT_LT(max_deviation_up_to_phase(clifford_to_matrix(compose(h, p)), expected), 1e-12);
}

TEST(clifford, random_inverse_is_identity) {
    std::mt19937_64 rng(11);
    for (size_t n : {1, 2, 3, 5, 9, 70}) {
        for (int k = 0; k < 100; k++) {
            auto c = random_clifford(n, rng);
            ASSERT_TRUE(c.is_valid());
            ASSERT_TRUE(compose(c, inverse(c)).is_identity());
            ASSERT_TRUE(compose(inverse(c), c).is_identity());
        }
    }
}

TEST(clifford, single_qubit_group_has_24_elements) {
    EXPECT_EQ(enumerate_group(1).size(), 24u);
}

TEST(clifford, random_uniform_single_qubit_chi_square) {
    auto group = enumerate_group(1);
    std::map<std::string, int> counts;
    for (const auto &k : group) {
        counts[k] = 0;
    }
    std::mt19937_64 rng(2024);
    const int samples = 24000;
    for (int k = 0; k < samples; k++) {
        auto it = counts.find(key(random_clifford(1, rng)));
        ASSERT_NE(it, counts.end());
        it->second++;
    }
    double chi2 = 0;
    const double expected = samples / 24.0;
    for (const auto &[k, c] : counts) {
        EXPECT_GT(c, 0) << k;
        chi2 += (c - expected) * (c - expected) / expected;
    }
    // 0.99 quantile of chi-square with 23 degrees of freedom.
    EXPECT_LT(chi2, 41.638);
}

TEST(clifford, two_qubit_group_coverage) {
    auto group = enumerate_group(2);
    EXPECT_EQ(group.size(), 11520u);
    std::set<std::string> seen;
    std::mt19937_64 rng(7);
    for (int k = 0; k < 200000; k++) {
        auto c = random_clifford(2, rng);
        ASSERT_TRUE(c.is_valid());
        std::string s = key(c);
        ASSERT_TRUE(group.count(s)) << s;
        seen.insert(s);
    }
    // Expected number of unseen elements is 11520 exp(-17.4), well below one.
    EXPECT_EQ(seen.size(), 11520u);
}

TEST(clifford, from_images_rejects_invalid) {
    EXPECT_THROW(CliffordElement::from_images({PauliString::from_str("X")}, {PauliString::from_str("X")}),
                 std::invalid_argument);
    EXPECT_THROW(CliffordElement::from_images({PauliString::from_str("iX")}, {PauliString::from_str("Z")}),
                 std::invalid_argument);
}

TEST(clifford, matrix_oracle) {
    EXPECT_LT(max_deviation_up_to_phase(clifford_to_matrix(CliffordElement::identity(2)), Matrix::Identity(4, 4)),
              1e-12);
    EXPECT_LT(max_deviation_up_to_phase(clifford_to_matrix(CliffordElement::from_gate(GeneratorGate::h(0), 1)),
                                        mat_h()),
              1e-12);

    std::mt19937_64 rng(3);
    for (size_t n : {1, 2, 3}) {
        for (int k = 0; k < 30; k++) {
            auto c = random_clifford(n, rng);
            Matrix u = clifford_to_matrix(c);
            ASSERT_TRUE(is_unitary(u, 1e-12));
            for (const auto &s : all_paulis(n)) {
                Matrix expected = u * s.to_matrix() * u.adjoint();
                ASSERT_LT((c.conjugate(s).to_matrix() - expected).norm(), 1e-12);
            }
            ASSERT_EQ(CliffordElement::from_unitary(u), c);
        }
    }
    EXPECT_THROW(clifford_to_matrix(CliffordElement::identity(7)), std::invalid_argument);
}

TEST(clifford, gate_list_matches_matrix_product) {
    auto gates = parse_circuit("H 0\nCNOT 0 1\nP 1\nPDAG 2\nCNOT 2 0\nX 1\nH 2");
    Matrix u = Matrix::Identity(8, 8);
    for (const auto &g : gates) {
        u = g.to_matrix(3) * u;
    }
    EXPECT_LT(max_deviation_up_to_phase(clifford_to_matrix(CliffordElement::from_gates(gates, 3)), u), 1e-12);
}

TEST(stabilizer_group, examples) {
    auto group = stabilizer_group(CliffordElement::identity(2));
    std::set<std::string> got;
    for (const auto &s : group) {
        got.insert(s.str());
    }
    EXPECT_EQ(got, (std::set<std::string>{"+II", "+IZ", "+ZI", "+ZZ"}));

    got.clear();
    for (const auto &s : stabilizer_group(CliffordElement::from_gate(GeneratorGate::h(0), 2))) {
        got.insert(s.str());
    }
    EXPECT_EQ(got, (std::set<std::string>{"+II", "+XI", "+IZ", "+XZ"}));

    got.clear();
    auto bell = CliffordElement::from_gates({GeneratorGate::h(0), GeneratorGate::cnot(0, 1)}, 2);
    for (const auto &s : stabilizer_group(bell)) {
        got.insert(s.str());
    }
    EXPECT_EQ(got, (std::set<std::string>{"+II", "+XX", "+ZZ", "-YY"}));
}

TEST(stabilizer_group, closure_and_eigenvalues) {
    std::mt19937_64 rng(99);
    for (size_t n : {1, 2, 3}) {
        for (int k = 0; k < 20; k++) {
            auto c = random_clifford(n, rng);
            auto group = stabilizer_group(c);
            ASSERT_EQ(group.size(), size_t{1} << n);
            EXPECT_EQ(group[0], PauliString(n));
            std::set<std::string> members;
            for (const auto &s : group) {
                members.insert(s.str());
            }
            ASSERT_EQ(members.size(), group.size());
            for (const auto &a : group) {
                for (const auto &b : group) {
                    ASSERT_TRUE(members.count((a * b).str()));
                }
            }
            Vector psi = clifford_to_matrix(c).col(0);
            for (const auto &s : group) {
                ASSERT_LT((s.to_matrix() * psi - psi).norm(), 1e-12);
                ASSERT_EQ(stabilizer_sign(c, s), 1);
                PauliString neg = s;
                neg.negate();
                if (!s.is_identity_up_to_phase()) {
                    ASSERT_EQ(stabilizer_sign(c, neg), -1);
                }
            }
        }
    }
}

TEST(stabilizer_group, sampling_uniform_and_identity_switch) {
    auto bell = CliffordElement::from_gates({GeneratorGate::h(0), GeneratorGate::cnot(0, 1)}, 2);
    auto group = StabilizerGroup::of(bell);
    std::mt19937_64 rng(1);
    std::map<std::string, int> counts;
    for (int k = 0; k < 40000; k++) {
        counts[group.sample(rng).str()]++;
    }
    ASSERT_EQ(counts.size(), 4u);
    for (const auto &[s, c] : counts) {
        EXPECT_NEAR(c, 10000, 4 * std::sqrt(10000 * 0.75)) << s;
    }
    for (int k = 0; k < 1000; k++) {
        ASSERT_FALSE(group.sample(rng, false).is_identity_up_to_phase());
    }
}

TEST(stabilizer_group, large_register_not_materialized) {
    std::mt19937_64 rng(4);
    auto c = random_clifford(13, rng);
    EXPECT_THROW(stabilizer_group(c), std::invalid_argument);
    auto s = StabilizerGroup::of(c).sample(rng);
    EXPECT_EQ(stabilizer_sign(c, s), 1);
}

TEST(stabilizer_tableau, stays_valid_under_gates) {
    StabilizerTableau t(4);
    EXPECT_TRUE(t.is_valid());
    std::mt19937_64 rng(8);
    auto gates = generator_set(4);
    for (int k = 0; k < 500; k++) {
        t.apply(gates[rng() % gates.size()]);
        ASSERT_TRUE(t.is_valid());
    }
    EXPECT_THROW(t.apply(GeneratorGate::h(4)), std::invalid_argument);
}

TEST(stabilizer_tableau, matches_clifford_images) {
    auto gates = parse_circuit("H 0\nCNOT 0 1\nP 1\nCNOT 1 2");
    StabilizerTableau t(3);
    for (const auto &g : gates) {
        t.apply(g);
    }
    auto c = CliffordElement::from_gates(gates, 3);
    for (size_t q = 0; q < 3; q++) {
        EXPECT_EQ(t.stabilizers()[q], c.z_image(q));
        EXPECT_EQ(t.destabilizers()[q], c.x_image(q));
    }
}
