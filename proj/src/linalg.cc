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

#include "rbsv/linalg.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rbsv {

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix embed_single(const Matrix &op, size_t q, size_t num_qubits) {
    if (q >= num_qubits) {
        throw std::out_of_range("qubit index out of range");
    }
    Matrix out = Matrix::Identity(1, 1);
    for (size_t k = 0; k < num_qubits; k++) {
        out = kron(out, k == q ? op : mat_i());
    }
    return out;
}

Matrix mat_i() {
    return Matrix::Identity(2, 2);
}

Matrix mat_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix mat_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

Matrix mat_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

Matrix mat_h() {
    Matrix m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

Matrix mat_p() {
    Matrix m(2, 2);
    m << 1, 0, 0, Complex(0, 1);
    return m;
}

double max_deviation_up_to_phase(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    Eigen::Index bi = 0, bj = 0;
    b.cwiseAbs().maxCoeff(&bi, &bj);
    if (std::abs(b(bi, bj)) == 0 || std::abs(a(bi, bj)) < 1e-12) {
        return std::numeric_limits<double>::infinity();
    }
    Complex phase = a(bi, bj) / b(bi, bj);
    phase /= std::abs(phase);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix &u, double tolerance) {
    if (u.rows() != u.cols()) {
        return false;
    }
    Matrix id = Matrix::Identity(u.rows(), u.cols());
    return (u.adjoint() * u - id).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace rbsv
