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

#include "rbsv/generator_gate.h"

#include <sstream>
#include <stdexcept>

namespace rbsv {

void GeneratorGate::validate(size_t num_qubits) const {
    if (q0 >= num_qubits || (is_two_qubit() && q1 >= num_qubits)) {
        throw std::invalid_argument("gate " + str() + " out of range for " + std::to_string(num_qubits) + " qubits");
    }
    if (is_two_qubit() && q0 == q1) {
        throw std::invalid_argument("CNOT control and target must differ");
    }
}

GeneratorGate GeneratorGate::inverse() const {
    switch (kind) {
        case GateKind::P:
            return pdag(q0);
        case GateKind::PDAG:
            return p(q0);
        default:
            return *this;
    }
}

void GeneratorGate::conjugate(PauliString &p) const {
    const bool x = p.x(q0), z = p.z(q0);
    switch (kind) {
        case GateKind::H:
            p.set_x(q0, z);
            p.set_z(q0, x);
            if (x && z) {
                p.negate();
            }
            break;
        case GateKind::P:
            if (x && z) {
                p.negate();
            }
            p.set_z(q0, z ^ x);
            break;
        case GateKind::PDAG:
            if (x && !z) {
                p.negate();
            }
            p.set_z(q0, z ^ x);
            break;
        case GateKind::X:
            if (z) {
                p.negate();
            }
            break;
        case GateKind::CNOT: {
            const bool xt = p.x(q1), zt = p.z(q1);
            if (x && zt && !(xt ^ z)) {
                p.negate();
            }
            p.set_x(q1, xt ^ x);
            p.set_z(q0, z ^ zt);
            break;
        }
    }
}

Matrix GeneratorGate::to_matrix(size_t num_qubits) const {
    validate(num_qubits);
    switch (kind) {
        case GateKind::H:
            return embed_single(mat_h(), q0, num_qubits);
        case GateKind::P:
            return embed_single(mat_p(), q0, num_qubits);
        case GateKind::PDAG:
            return embed_single(mat_p().adjoint(), q0, num_qubits);
        case GateKind::X:
            return embed_single(mat_x(), q0, num_qubits);
        case GateKind::CNOT: {
            Matrix zero_proj = Matrix::Zero(2, 2), one_proj = Matrix::Zero(2, 2);
            zero_proj(0, 0) = 1;
            one_proj(1, 1) = 1;
            return embed_single(zero_proj, q0, num_qubits) +
                   embed_single(one_proj, q0, num_qubits) * embed_single(mat_x(), q1, num_qubits);
        }
    }
    throw std::logic_error("unreachable");
}

std::string GeneratorGate::str() const {
    switch (kind) {
        case GateKind::H:
            return "H " + std::to_string(q0);
        case GateKind::P:
            return "P " + std::to_string(q0);
        case GateKind::PDAG:
            return "PDAG " + std::to_string(q0);
        case GateKind::X:
            return "X " + std::to_string(q0);
        case GateKind::CNOT:
            return "CNOT " + std::to_string(q0) + " " + std::to_string(q1);
    }
    return "?";
}

std::vector<GeneratorGate> parse_circuit(std::string_view text) {
    std::vector<GeneratorGate> gates;
    std::istringstream lines{std::string(text)};
    std::string line;
    size_t line_number = 0;
    while (std::getline(lines, line)) {
        line_number++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::string name;
        if (!(fields >> name)) {
            continue;
        }
        auto fail = [&](const std::string &why) {
            throw std::invalid_argument("line " + std::to_string(line_number) + ": " + why);
        };
        long a = -1, b = -1;
        if (!(fields >> a) || a < 0) {
            fail("expected a qubit index after " + name);
        }
        GeneratorGate g{GateKind::H, static_cast<uint32_t>(a), 0};
        if (name == "H") {
            g.kind = GateKind::H;
        } else if (name == "P") {
            g.kind = GateKind::P;
        } else if (name == "PDAG") {
            g.kind = GateKind::PDAG;
        } else if (name == "X") {
            g.kind = GateKind::X;
        } else if (name == "CNOT") {
            g.kind = GateKind::CNOT;
            if (!(fields >> b) || b < 0) {
                fail("CNOT needs two qubit indices");
            }
            g.q1 = static_cast<uint32_t>(b);
            if (g.q0 == g.q1) {
                fail("CNOT control and target must differ");
            }
        } else {
            fail("unknown gate '" + name + "'");
        }
        std::string extra;
        if (fields >> extra) {
            fail("unexpected trailing token '" + extra + "'");
        }
        gates.push_back(g);
    }
    return gates;
}

std::string format_circuit(const std::vector<GeneratorGate> &gates) {
    std::string out;
    for (const auto &g : gates) {
        out += g.str();
        out += "\n";
    }
    return out;
}

std::vector<GeneratorGate> generator_set(size_t num_qubits) {
    std::vector<GeneratorGate> out;
    for (uint32_t q = 0; q < num_qubits; q++) {
        out.push_back(GeneratorGate::h(q));
        out.push_back(GeneratorGate::p(q));
        out.push_back(GeneratorGate::pdag(q));
    }
    for (uint32_t c = 0; c < num_qubits; c++) {
        for (uint32_t t = 0; t < num_qubits; t++) {
            if (c != t) {
                out.push_back(GeneratorGate::cnot(c, t));
            }
        }
    }
    return out;
}

}  // namespace rbsv
