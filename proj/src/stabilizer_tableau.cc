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

#include "rbsv/stabilizer_tableau.h"

#include <bit>
#include <stdexcept>

namespace rbsv {

StabilizerTableau::StabilizerTableau(size_t num_qubits) : StabilizerTableau(CliffordElement::identity(num_qubits)) {
}

StabilizerTableau::StabilizerTableau(const CliffordElement &c) {
    for (size_t q = 0; q < c.num_qubits(); q++) {
        destabilizers_.push_back(c.x_image(q));
        stabilizers_.push_back(c.z_image(q));
    }
}

void StabilizerTableau::apply(const GeneratorGate &gate) {
    gate.validate(num_qubits());
    for (auto &row : destabilizers_) {
        gate.conjugate(row);
    }
    for (auto &row : stabilizers_) {
        gate.conjugate(row);
    }
}

bool StabilizerTableau::is_valid() const {
    const size_t n = num_qubits();
    for (size_t i = 0; i < n; i++) {
        if (!stabilizers_[i].is_hermitian() || !destabilizers_[i].is_hermitian()) {
            return false;
        }
        for (size_t j = 0; j < n; j++) {
            if (!stabilizers_[i].commutes(stabilizers_[j]) || !destabilizers_[i].commutes(destabilizers_[j])) {
                return false;
            }
            if (destabilizers_[i].commutes(stabilizers_[j]) == (i == j)) {
                return false;
            }
        }
    }
    return true;
}

StabilizerGroup::StabilizerGroup(std::vector<PauliString> generators) : generators_(std::move(generators)) {
    for (const auto &g : generators_) {
        if (g.num_qubits() != num_qubits() || !g.is_hermitian()) {
            throw std::invalid_argument("stabilizer generators must be Hermitian and equally sized");
        }
        for (const auto &h : generators_) {
            if (!g.commutes(h)) {
                throw std::invalid_argument("stabilizer generators must commute");
            }
        }
    }
}

StabilizerGroup StabilizerGroup::of(const CliffordElement &c) {
    std::vector<PauliString> gens;
    gens.reserve(c.num_qubits());
    for (size_t q = 0; q < c.num_qubits(); q++) {
        gens.push_back(c.z_image(q));
    }
    return StabilizerGroup(std::move(gens));
}

PauliString StabilizerGroup::element(const std::vector<bool> &selection) const {
    if (selection.size() != generators_.size()) {
        throw std::invalid_argument("selection size must equal the number of generators");
    }
    PauliString acc(num_qubits());
    for (size_t k = 0; k < generators_.size(); k++) {
        if (selection[k]) {
            acc *= generators_[k];
        }
    }
    return acc;
}

PauliString StabilizerGroup::sample(std::mt19937_64 &rng, bool include_identity) const {
    std::bernoulli_distribution coin(0.5);
    std::vector<bool> selection(generators_.size());
    while (true) {
        bool any = false;
        for (size_t k = 0; k < selection.size(); k++) {
            selection[k] = coin(rng);
            any |= selection[k];
        }
        if (include_identity || any || generators_.empty()) {
            return element(selection);
        }
    }
}

std::vector<PauliString> StabilizerGroup::elements() const {
    const size_t n = generators_.size();
    if (n > max_materialized_qubits) {
        throw std::invalid_argument("stabilizer group too large to materialize; sample elements instead");
    }
    std::vector<PauliString> out;
    out.reserve(size_t{1} << n);
    out.push_back(PauliString(num_qubits()));
    // Gray-code walk: each element differs from the previous by one generator.
    // Generators commute, so multiplication order does not affect the phase.
    PauliString acc(num_qubits());
    for (size_t i = 1; i < (size_t{1} << n); i++) {
        size_t bit = static_cast<size_t>(std::countr_zero(i));
        acc *= generators_[bit];
        out.push_back(acc);
    }
    return out;
}

std::vector<PauliString> stabilizer_group(const CliffordElement &c) {
    return StabilizerGroup::of(c).elements();
}

}  // namespace rbsv
