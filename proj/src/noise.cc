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

#include "rbsv/noise.h"

#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "rbsv/clifford.h"

namespace rbsv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_probability(double v, const char *what) {
    if (!(v >= 0 && v <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

size_t qubits_for_dim(Eigen::Index d) {
    size_t n = 0;
    while ((Eigen::Index{1} << n) < d) {
        n++;
    }
    if ((Eigen::Index{1} << n) != d) {
        throw std::invalid_argument("dimension is not a power of two");
    }
    return n;
}

bool has_trivial_perturbation(const DeltaDepolarizing &ch) {
    return ch.delta == 0 || ch.perturbation.size() == 0 ||
           max_deviation_up_to_phase(ch.perturbation, Matrix::Identity(ch.perturbation.rows(), ch.perturbation.cols())) <
               1e-15;
}

}  // namespace

PauliChannel PauliChannel::from_table(const std::map<std::string, double> &table) {
    PauliChannel ch;
    for (const auto &[key, prob] : table) {
        ch.paulis.push_back(PauliString::from_str(key));
        ch.probabilities.push_back(prob);
    }
    return ch;
}

Matrix rotation_perturbation(size_t num_qubits, char axis, double angle) {
    Matrix sigma;
    switch (axis) {
        case 'x':
            sigma = mat_x();
            break;
        case 'y':
            sigma = mat_y();
            break;
        case 'z':
            sigma = mat_z();
            break;
        default:
            throw std::invalid_argument(std::string("rotation axis must be x, y or z, got '") + axis + "'");
    }
    Matrix r = std::cos(angle / 2) * mat_i() - Complex(0, 1) * std::sin(angle / 2) * sigma;
    return embed_single(r, 0, num_qubits);
}

void validate_channel(const NoiseChannel &ch, size_t num_qubits) {
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    std::visit(overloaded{
                   [](const Ideal &) {},
                   [](const Depolarizing &c) { require_probability(c.epsilon, "depolarizing epsilon"); },
                   [&](const PauliChannel &c) {
                       if (c.paulis.empty() || c.paulis.size() != c.probabilities.size()) {
                           throw std::invalid_argument("Pauli channel needs one probability per Pauli");
                       }
                       double total = 0;
                       for (size_t k = 0; k < c.paulis.size(); k++) {
                           if (c.paulis[k].num_qubits() != num_qubits) {
                               throw std::invalid_argument("Pauli channel key " + c.paulis[k].str() + " does not act on " +
                                                           std::to_string(num_qubits) + " qubits");
                           }
                           if (c.paulis[k].phase() != 0) {
                               throw std::invalid_argument("Pauli channel key " + c.paulis[k].str() +
                                                           " must have phase +1");
                           }
                           require_probability(c.probabilities[k], "Pauli channel probability");
                           total += c.probabilities[k];
                       }
                       if (std::abs(total - 1) > 1e-12) {
                           throw std::invalid_argument("Pauli channel probabilities sum to " + std::to_string(total));
                       }
                   },
                   [&](const DeltaDepolarizing &c) {
                       require_probability(c.delta, "delta");
                       require_probability(c.p_prime, "p_prime");
                       if (c.perturbation.size() != 0) {
                           if (c.perturbation.rows() != d || c.perturbation.cols() != d) {
                               throw std::invalid_argument("delta-depolarizing perturbation has the wrong dimension");
                           }
                           if (!is_unitary(c.perturbation, 1e-10)) {
                               throw std::invalid_argument("delta-depolarizing perturbation must be unitary");
                           }
                       }
                   },
               },
               ch);
}

bool is_pauli_diagonal(const NoiseChannel &ch) {
    if (const auto *delta = std::get_if<DeltaDepolarizing>(&ch)) {
        return has_trivial_perturbation(*delta);
    }
    return true;
}

std::string channel_name(const NoiseChannel &ch) {
    return std::visit(overloaded{
                          [](const Ideal &) { return std::string("ideal"); },
                          [](const Depolarizing &) { return std::string("depolarizing"); },
                          [](const PauliChannel &) { return std::string("pauli"); },
                          [](const DeltaDepolarizing &) { return std::string("delta_depolarizing"); },
                      },
                      ch);
}

void SpamModel::validate(size_t num_qubits) const {
    validate_channel(prep, num_qubits);
    validate_channel(meas, num_qubits);
    require_probability(p_meas, "p_meas");
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    qubits_for_dim(m_.rows());
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1, 0)) > 1e-12) {
        throw std::invalid_argument("density matrix trace differs from one");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::zero_state(size_t num_qubits) {
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    Matrix m = Matrix::Zero(d, d);
    m(0, 0) = 1;
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(size_t num_qubits) {
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const Vector &psi) {
    Vector v = psi.normalized();
    return DensityMatrix(v * v.adjoint());
}

size_t DensityMatrix::num_qubits() const {
    return qubits_for_dim(m_.rows());
}

double DensityMatrix::fidelity_with(const Vector &psi) const {
    return (psi.adjoint() * m_ * psi)(0, 0).real();
}

Matrix apply_linear(const NoiseChannel &ch, const Matrix &m) {
    const Eigen::Index d = m.rows();
    return std::visit(overloaded{
                          [&](const Ideal &) -> Matrix { return m; },
                          [&](const Depolarizing &c) -> Matrix {
                              return (1 - c.epsilon) * m + c.epsilon * m.trace() / static_cast<double>(d) *
                                                               Matrix::Identity(d, d);
                          },
                          [&](const PauliChannel &c) -> Matrix {
                              Matrix out = Matrix::Zero(d, d);
                              for (size_t k = 0; k < c.paulis.size(); k++) {
                                  if (c.probabilities[k] == 0) {
                                      continue;
                                  }
                                  Matrix p = c.paulis[k].to_matrix();
                                  out += c.probabilities[k] * (p * m * p.adjoint());
                              }
                              return out;
                          },
                          [&](const DeltaDepolarizing &c) -> Matrix {
                              Matrix dep = c.p_prime * m + (1 - c.p_prime) * m.trace() / static_cast<double>(d) *
                                                               Matrix::Identity(d, d);
                              Matrix rotated = c.perturbation.size() == 0
                                                   ? m
                                                   : Matrix(c.perturbation * m * c.perturbation.adjoint());
                              return (1 - c.delta) * dep + c.delta * rotated;
                          },
                      },
                      ch);
}

DensityMatrix apply_channel(const NoiseChannel &ch, const DensityMatrix &rho) {
    validate_channel(ch, rho.num_qubits());
    return DensityMatrix(apply_linear(ch, rho.matrix()));
}

LinearMap as_map(const NoiseChannel &ch) {
    return [ch](const Matrix &m) { return apply_linear(ch, m); };
}

Matrix choi_matrix(const LinearMap &map, Eigen::Index dim) {
    Matrix j = Matrix::Zero(dim * dim, dim * dim);
    for (Eigen::Index a = 0; a < dim; a++) {
        for (Eigen::Index b = 0; b < dim; b++) {
            Matrix e = Matrix::Zero(dim, dim);
            e(a, b) = 1;
            j.block(a * dim, b * dim, dim, dim) = map(e);
        }
    }
    return j;
}

bool is_cptp(const LinearMap &map, Eigen::Index dim) {
    for (Eigen::Index a = 0; a < dim; a++) {
        for (Eigen::Index b = 0; b < dim; b++) {
            Matrix e = Matrix::Zero(dim, dim);
            e(a, b) = 1;
            Complex expected = a == b ? 1.0 : 0.0;
            if (std::abs(map(e).trace() - expected) > 1e-12) {
                return false;
            }
        }
    }
    Matrix j = choi_matrix(map, dim);
    if ((j - j.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(j, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -1e-10;
}

double entanglement_fidelity(const LinearMap &map, Eigen::Index dim) {
    Complex total = 0;
    for (Eigen::Index a = 0; a < dim; a++) {
        for (Eigen::Index b = 0; b < dim; b++) {
            Matrix e = Matrix::Zero(dim, dim);
            e(a, b) = 1;
            total += map(e)(a, b);
        }
    }
    return total.real() / static_cast<double>(dim * dim);
}

double average_fidelity(const LinearMap &map, Eigen::Index dim) {
    const double d = static_cast<double>(dim);
    return (d * entanglement_fidelity(map, dim) + 1) / (d + 1);
}

double depolarizing_parameter(const LinearMap &map, Eigen::Index dim) {
    const double d = static_cast<double>(dim);
    return (d * average_fidelity(map, dim) - 1) / (d - 1);
}

double depolarizing_parameter(const NoiseChannel &ch, size_t num_qubits) {
    validate_channel(ch, num_qubits);
    return depolarizing_parameter(as_map(ch), Eigen::Index{1} << num_qubits);
}

TwirlEstimate monte_carlo_twirl(const LinearMap &map, size_t num_qubits, size_t samples, std::mt19937_64 &rng) {
    if (samples < 2) {
        throw std::invalid_argument("twirl needs at least two samples");
    }
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    Matrix sum = Matrix::Zero(d * d, d * d);
    double sum_sq_norm = 0;
    for (size_t k = 0; k < samples; k++) {
        Matrix u = clifford_to_matrix(random_clifford(num_qubits, rng));
        LinearMap twirled = [&](const Matrix &m) -> Matrix {
            return u.adjoint() * map(u * m * u.adjoint()) * u;
        };
        Matrix jk = choi_matrix(twirled, d);
        sum += jk;
        sum_sq_norm += jk.squaredNorm();
    }
    TwirlEstimate out;
    out.samples = samples;
    out.mean_choi = sum / static_cast<double>(samples);
    // sum_k |J_k - mean|^2 = sum_k |J_k|^2 - N |mean|^2.
    const double n = static_cast<double>(samples);
    const double spread = std::max(0.0, sum_sq_norm - n * out.mean_choi.squaredNorm());
    out.choi_standard_error = std::sqrt(spread / (n * (n - 1)));
    return out;
}

FaultSampler::FaultSampler(const NoiseChannel &ch, size_t num_qubits) : num_qubits_(num_qubits) {
    validate_channel(ch, num_qubits);
    std::visit(overloaded{
                   [&](const Ideal &) { kind_ = Kind::None; },
                   [&](const Depolarizing &c) {
                       kind_ = c.epsilon == 0 ? Kind::None : Kind::Uniform;
                       epsilon_ = c.epsilon;
                   },
                   [&](const PauliChannel &c) {
                       kind_ = Kind::Table;
                       double acc = 0;
                       for (size_t k = 0; k < c.paulis.size(); k++) {
                           acc += c.probabilities[k];
                           cumulative_.push_back(acc);
                           faults_.push_back(c.paulis[k]);
                       }
                   },
                   [&](const DeltaDepolarizing &c) {
                       if (!has_trivial_perturbation(c)) {
                           throw UnsupportedForTrajectory(
                               "delta-depolarizing channel with a non-Pauli perturbation cannot be sampled as Pauli "
                               "faults; use the exact engine");
                       }
                       // With U = I the channel is depolarizing with epsilon = (1 - delta)(1 - p').
                       epsilon_ = (1 - c.delta) * (1 - c.p_prime);
                       kind_ = epsilon_ == 0 ? Kind::None : Kind::Uniform;
                   },
               },
               ch);
}

PauliString FaultSampler::sample(std::mt19937_64 &rng) const {
    PauliString out(num_qubits_);
    std::vector<uint64_t> xs(out.num_words(), 0), zs(out.num_words(), 0);
    sample_into(rng, xs.data(), zs.data());
    for (size_t q = 0; q < num_qubits_; q++) {
        out.set_x(q, (xs[q >> 6] >> (q & 63)) & 1);
        out.set_z(q, (zs[q >> 6] >> (q & 63)) & 1);
    }
    return out;
}

PauliString sample_pauli_fault(const NoiseChannel &ch, size_t num_qubits, std::mt19937_64 &rng) {
    return FaultSampler(ch, num_qubits).sample(rng);
}

Matrix apply_measurement_flips(const Matrix &rho, const std::vector<size_t> &qubits, double p_meas) {
    if (p_meas == 0) {
        return rho;
    }
    const size_t n = qubits_for_dim(rho.rows());
    Matrix out = rho;
    for (size_t q : qubits) {
        Matrix x = embed_single(mat_x(), q, n), y = embed_single(mat_y(), q, n), z = embed_single(mat_z(), q, n);
        out = (1 - p_meas) * out + p_meas / 3 * (x * out * x + y * out * y + z * out * z);
    }
    return out;
}

double measurement_success_probability(const DensityMatrix &rho, const PauliString &s, const SpamModel &spam) {
    if (!s.is_hermitian()) {
        throw std::invalid_argument("measured Pauli " + s.str() + " is not Hermitian");
    }
    if (s.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("measured Pauli size does not match the state");
    }
    if (s.is_identity_up_to_phase() && !s.is_negative()) {
        return 1.0;
    }
    std::vector<size_t> touched;
    for (size_t q = 0; q < s.num_qubits(); q++) {
        if (s.x(q) || s.z(q)) {
            touched.push_back(q);
        }
    }
    Matrix m = apply_linear(spam.meas, rho.matrix());
    m = apply_measurement_flips(m, touched, spam.p_meas);
    const Eigen::Index d = rho.dim();
    Matrix projector = (Matrix::Identity(d, d) + s.to_matrix()) * 0.5;
    return (projector * m).trace().real();
}

}  // namespace rbsv
