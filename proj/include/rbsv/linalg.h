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

#ifndef RBSV_LINALG_H
#define RBSV_LINALG_H

#include <complex>

#include <Eigen/Dense>

namespace rbsv {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

Matrix kron(const Matrix &a, const Matrix &b);

/// Embeds a single-qubit operator on qubit `q` of an n-qubit register
/// (qubit 0 is the leftmost tensor factor).
Matrix embed_single(const Matrix &op, size_t q, size_t num_qubits);

/// Dense matrices of the named single-qubit gates.
Matrix mat_i();
Matrix mat_x();
Matrix mat_y();
Matrix mat_z();
Matrix mat_h();
Matrix mat_p();

/// Largest elementwise |a - c*b| after choosing the global phase c from the
/// largest-magnitude entry of b. Returns +inf when no consistent phase exists.
double max_deviation_up_to_phase(const Matrix &a, const Matrix &b);

bool is_unitary(const Matrix &u, double tolerance = 1e-10);

}  // namespace rbsv

#endif
