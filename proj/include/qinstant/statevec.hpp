// Copyright 2026 The qinstant Authors
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

#pragma once

// Dense state-vector simulation.
//
// Qubit ordering is little-endian throughout the library: qubit q is bit q of
// the basis-state index, so qubit 0 is the least-significant bit. Applying X
// to qubit q of |0...0> gives basis index 2^q.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qinstant {

inline constexpr int kDefaultMaxQubits = 16;

template <typename Real>
constexpr Real norm_tolerance() {
  if constexpr (sizeof(Real) >= sizeof(double)) {
    return Real(1e-9);
  } else {
    return Real(1e-5);
  }
}

template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

inline void check_qubit_count(int num_qubits, int max_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("qubit count must be at least 1, got " + std::to_string(num_qubits));
  }
  if (num_qubits > max_qubits) {
    throw std::length_error("qubit count " + std::to_string(num_qubits) + " exceeds maximum " +
                            std::to_string(max_qubits));
  }
}

inline int log2_exact(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude count " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

/// Validates a target list against a register of `num_qubits` qubits.
inline void check_targets(std::span<const int> targets, int num_qubits) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits) {
      throw std::invalid_argument("target qubit " + std::to_string(targets[i]) + " out of range [0, " +
                                  std::to_string(num_qubits) + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("duplicate target qubit " + std::to_string(targets[i]));
      }
    }
  }
}

/// Splits a register into a target subsystem and the remaining ("rest")
/// qubits. Every basis index decomposes as rest_offset[r] + target_offset[j],
/// where bit b of j is the value of targets[b] and bit b of r is the value of
/// the b-th non-target qubit in ascending order.
struct SubsystemSplit {
  std::vector<std::uint64_t> target_offset;
  std::vector<std::uint64_t> rest_offset;
  std::vector<int> rest_qubits;

  SubsystemSplit(std::span<const int> targets, int num_qubits) {
    check_targets(targets, num_qubits);
    std::vector<bool> is_target(static_cast<std::size_t>(num_qubits), false);
    for (int t : targets) is_target[static_cast<std::size_t>(t)] = true;
    for (int q = 0; q < num_qubits; ++q) {
      if (!is_target[static_cast<std::size_t>(q)]) rest_qubits.push_back(q);
    }
    target_offset = deposit(targets);
    rest_offset = deposit(rest_qubits);
  }

  std::size_t target_dim() const { return target_offset.size(); }
  std::size_t rest_dim() const { return rest_offset.size(); }

 private:
  static std::vector<std::uint64_t> deposit(std::span<const int> qubits) {
    std::vector<std::uint64_t> out(std::size_t{1} << qubits.size());
    for (std::size_t local = 0; local < out.size(); ++local) {
      std::uint64_t idx = 0;
      for (std::size_t b = 0; b < qubits.size(); ++b) {
        if ((local >> b) & 1u) idx |= std::uint64_t{1} << qubits[b];
      }
      out[local] = idx;
    }
    return out;
  }
};

/// Gathers amplitudes into a (rest_dim x target_dim) matrix.
template <typename Real>
ComplexMatrix<Real> gather(const ComplexVector<Real>& amps, const SubsystemSplit& split) {
  ComplexMatrix<Real> m(split.rest_dim(), split.target_dim());
  for (std::size_t j = 0; j < split.target_dim(); ++j) {
    for (std::size_t r = 0; r < split.rest_dim(); ++r) {
      m(Eigen::Index(r), Eigen::Index(j)) = amps(Eigen::Index(split.rest_offset[r] + split.target_offset[j]));
    }
  }
  return m;
}

template <typename Real>
void scatter(const ComplexMatrix<Real>& m, const SubsystemSplit& split, ComplexVector<Real>& amps) {
  for (std::size_t j = 0; j < split.target_dim(); ++j) {
    for (std::size_t r = 0; r < split.rest_dim(); ++r) {
      amps(Eigen::Index(split.rest_offset[r] + split.target_offset[j])) = m(Eigen::Index(r), Eigen::Index(j));
    }
  }
}

template <typename Real>
bool is_unitary(const ComplexMatrix<Real>& m, Real tol = norm_tolerance<Real>()) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix<Real> prod = m * m.adjoint();
  const ComplexMatrix<Real> id = ComplexMatrix<Real>::Identity(m.rows(), m.cols());
  return (prod - id).cwiseAbs().maxCoeff() <= tol;
}

/// Index of the outcome selected by a uniform draw against `probs`.
template <typename Real, typename RandomEngine>
std::size_t sample_index(std::span<const Real> probs, RandomEngine& rng) {
  std::uniform_real_distribution<Real> unif(Real(0), Real(1));
  const Real u = unif(rng);
  Real acc = 0;
  std::size_t last_nonzero = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] <= Real(0)) continue;
    last_nonzero = k;
    acc += probs[k];
    if (u < acc) return k;
  }
  return last_nonzero;
}

}  // namespace detail

/// Pure state of `num_qubits` qubits stored as 2^num_qubits amplitudes.
///
/// Values are immutable from the caller's perspective: every operation below
/// returns a new state.
template <typename Real>
class BasicStateVector {
 public:
  using RealType = Real;
  using Scalar = std::complex<Real>;
  using Vector = ComplexVector<Real>;

  /// Wraps `amplitudes`, which must have power-of-two length and unit norm.
  explicit BasicStateVector(Vector amplitudes, int max_qubits = kDefaultMaxQubits)
      : amps_(std::move(amplitudes)) {
    num_qubits_ = detail::log2_exact(static_cast<std::size_t>(amps_.size()));
    detail::check_qubit_count(num_qubits_, max_qubits);
    const Real norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - Real(1)) > norm_tolerance<Real>()) {
      throw std::invalid_argument("state is not normalized: squared norm " + std::to_string(norm2));
    }
  }

  /// Normalizes an arbitrary non-zero vector.
  static BasicStateVector normalized(Vector v, int max_qubits = kDefaultMaxQubits) {
    const Real norm = v.norm();
    if (!(norm > Real(0))) throw std::invalid_argument("cannot normalize the zero vector");
    v /= norm;
    return BasicStateVector(std::move(v), max_qubits);
  }

  static BasicStateVector basis(int num_qubits, std::uint64_t index, int max_qubits = kDefaultMaxQubits) {
    detail::check_qubit_count(num_qubits, max_qubits);
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (index >= dim) {
      throw std::invalid_argument("basis index " + std::to_string(index) + " out of range for " +
                                  std::to_string(num_qubits) + " qubits");
    }
    Vector v = Vector::Zero(Eigen::Index(dim));
    v(Eigen::Index(index)) = Scalar(1);
    return BasicStateVector(std::move(v), num_qubits, Unchecked{});
  }

  static BasicStateVector zero(int num_qubits, int max_qubits = kDefaultMaxQubits) {
    return basis(num_qubits, 0, max_qubits);
  }

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Scalar operator[](std::size_t i) const { return amps_(Eigen::Index(i)); }
  Real squared_norm() const { return amps_.squaredNorm(); }

  // Trusted construction for results of norm-preserving operations.
  struct Unchecked {};
  BasicStateVector(Vector amplitudes, int num_qubits, Unchecked)
      : amps_(std::move(amplitudes)), num_qubits_(num_qubits) {}

 private:
  Vector amps_;
  int num_qubits_ = 0;
};

/// A unitary on one or two qubits. Local index bit b refers to the b-th
/// target passed at application time.
template <typename Real>
class BasicGate {
 public:
  using Matrix = ComplexMatrix<Real>;

  BasicGate(Matrix matrix, std::string name = {}) : matrix_(std::move(matrix)), name_(std::move(name)) {
    if (matrix_.rows() == 2 && matrix_.cols() == 2) {
      arity_ = 1;
    } else if (matrix_.rows() == 4 && matrix_.cols() == 4) {
      arity_ = 2;
    } else {
      throw std::invalid_argument("gate matrix must be 2x2 or 4x4");
    }
    if (!detail::is_unitary<Real>(matrix_)) throw std::invalid_argument("gate matrix is not unitary");
  }

  int arity() const { return arity_; }
  const Matrix& matrix() const { return matrix_; }
  /// Mnemonic ("H", "CNOT", ...) or empty for an unnamed matrix.
  const std::string& name() const { return name_; }

  /// Conjugate transpose. Self-inverse named gates keep their name.
  BasicGate adjoint() const {
    const bool self_inverse = name_ == "H" || name_ == "X" || name_ == "Y" || name_ == "Z" || name_ == "CNOT";
    return BasicGate(matrix_.adjoint(), self_inverse ? name_ : std::string{});
  }

 private:
  Matrix matrix_;
  std::string name_;
  int arity_ = 0;
};

using StateVector = BasicStateVector<double>;
using Gate = BasicGate<double>;
using Complex = std::complex<double>;
using Vector = ComplexVector<double>;
using Matrix = ComplexMatrix<double>;

namespace gates {

template <typename Real = double>
BasicGate<Real> hadamard() {
  const Real s = Real(1) / std::sqrt(Real(2));
  ComplexMatrix<Real> m(2, 2);
  m << s, s, s, -s;
  return {m, "H"};
}

template <typename Real = double>
BasicGate<Real> pauli_x() {
  ComplexMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return {m, "X"};
}

template <typename Real = double>
BasicGate<Real> pauli_y() {
  using C = std::complex<Real>;
  ComplexMatrix<Real> m(2, 2);
  m << C(0), C(0, -1), C(0, 1), C(0);
  return {m, "Y"};
}

template <typename Real = double>
BasicGate<Real> pauli_z() {
  ComplexMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return {m, "Z"};
}

template <typename Real = double>
BasicGate<Real> phase_s() {
  using C = std::complex<Real>;
  ComplexMatrix<Real> m(2, 2);
  m << C(1), C(0), C(0), C(0, 1);
  return {m, "S"};
}

template <typename Real = double>
BasicGate<Real> phase_t() {
  using C = std::complex<Real>;
  ComplexMatrix<Real> m(2, 2);
  m << C(1), C(0), C(0), std::polar(Real(1), std::numbers::pi_v<Real> / 4);
  return {m, "T"};
}

/// CNOT with control on the first target and target on the second.
template <typename Real = double>
BasicGate<Real> cnot() {
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  // local index = control + 2 * target
  m(0, 0) = 1;
  m(2, 2) = 1;
  m(3, 1) = 1;
  m(1, 3) = 1;
  return {m, "CNOT"};
}

template <typename Real = double>
BasicGate<Real> rotation_z(Real angle) {
  using C = std::complex<Real>;
  ComplexMatrix<Real> m(2, 2);
  m << std::polar(Real(1), -angle / 2), C(0), C(0), std::polar(Real(1), angle / 2);
  return {m};
}

/// Looks up H, X, Y, Z, S, T or CNOT.
template <typename Real = double>
std::optional<BasicGate<Real>> by_name(const std::string& name) {
  if (name == "H") return hadamard<Real>();
  if (name == "X") return pauli_x<Real>();
  if (name == "Y") return pauli_y<Real>();
  if (name == "Z") return pauli_z<Real>();
  if (name == "S") return phase_s<Real>();
  if (name == "T") return phase_t<Real>();
  if (name == "CNOT") return cnot<Real>();
  return std::nullopt;
}

}  // namespace gates

/// |a> (x) |b> with `a` on the lower-indexed qubits.
template <typename Real>
BasicStateVector<Real> tensor_product(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b,
                                      int max_qubits = kDefaultMaxQubits) {
  const int n = a.num_qubits() + b.num_qubits();
  detail::check_qubit_count(n, max_qubits);
  ComplexVector<Real> out(Eigen::Index(a.dimension() * b.dimension()));
  const auto da = Eigen::Index(a.dimension());
  for (Eigen::Index ib = 0; ib < Eigen::Index(b.dimension()); ++ib) {
    out.segment(ib * da, da) = a.amplitudes() * b.amplitudes()(ib);
  }
  return BasicStateVector<Real>(std::move(out), n, typename BasicStateVector<Real>::Unchecked{});
}

/// Applies an arbitrary 2^k x 2^k matrix to the given targets. Used by
/// apply_gate and by protocol code that needs block-sized operators.
template <typename Real>
BasicStateVector<Real> apply_matrix(const BasicStateVector<Real>& state, const ComplexMatrix<Real>& matrix,
                                    std::span<const int> targets) {
  const detail::SubsystemSplit split(targets, state.num_qubits());
  if (matrix.rows() != Eigen::Index(split.target_dim()) || matrix.cols() != matrix.rows()) {
    throw std::invalid_argument("matrix size does not match target count");
  }
  ComplexMatrix<Real> block = detail::gather<Real>(state.amplitudes(), split);
  // new(r, i) = sum_j M(i, j) old(r, j)
  const ComplexMatrix<Real> updated = block * matrix.transpose();
  ComplexVector<Real> out(state.amplitudes().size());
  detail::scatter<Real>(updated, split, out);
  return BasicStateVector<Real>(std::move(out), state.num_qubits(), typename BasicStateVector<Real>::Unchecked{});
}

template <typename Real>
BasicStateVector<Real> apply_gate(const BasicStateVector<Real>& state, const BasicGate<Real>& gate,
                                  std::span<const int> targets) {
  if (int(targets.size()) != gate.arity()) {
    throw std::invalid_argument("gate of arity " + std::to_string(gate.arity()) + " given " +
                                std::to_string(targets.size()) + " targets");
  }
  return apply_matrix(state, gate.matrix(), targets);
}

template <typename Real>
BasicStateVector<Real> apply_gate(const BasicStateVector<Real>& state, const BasicGate<Real>& gate,
                                  std::initializer_list<int> targets) {
  return apply_gate(state, gate, std::span<const int>(targets.begin(), targets.size()));
}

/// Throws unless the columns of `basis` are orthonormal.
template <typename Real>
void check_orthonormal(const ComplexMatrix<Real>& basis) {
  if (basis.rows() != basis.cols()) throw std::invalid_argument("basis must be square");
  const ComplexMatrix<Real> gram = basis.adjoint() * basis;
  const ComplexMatrix<Real> id = ComplexMatrix<Real>::Identity(basis.rows(), basis.cols());
  if ((gram - id).cwiseAbs().maxCoeff() > norm_tolerance<Real>()) {
    throw std::invalid_argument("measurement basis is not orthonormal");
  }
}

/// Exact probability of every outcome when measuring `targets` in the basis
/// whose columns are `basis`.
template <typename Real>
std::vector<Real> outcome_probabilities(const BasicStateVector<Real>& state, std::span<const int> targets,
                                        const ComplexMatrix<Real>& basis) {
  check_orthonormal(basis);
  const detail::SubsystemSplit split(targets, state.num_qubits());
  if (basis.rows() != Eigen::Index(split.target_dim())) {
    throw std::invalid_argument("basis dimension does not match target count");
  }
  const ComplexMatrix<Real> overlaps = detail::gather<Real>(state.amplitudes(), split) * basis.conjugate();
  std::vector<Real> probs(split.target_dim());
  for (Eigen::Index k = 0; k < overlaps.cols(); ++k) probs[std::size_t(k)] = overlaps.col(k).squaredNorm();
  return probs;
}

template <typename Real>
struct BasicMeasurement {
  std::size_t outcome = 0;
  /// Pre-measurement probability of `outcome`.
  Real probability = 0;
  /// Post-measurement state on the full register.
  BasicStateVector<Real> collapsed;
};

/// Projective measurement of `targets` in an orthonormal basis (columns of
/// `basis`). Local index bit b of a basis vector refers to targets[b].
template <typename Real, typename RandomEngine>
BasicMeasurement<Real> measure_in_basis(const BasicStateVector<Real>& state, std::span<const int> targets,
                                        const ComplexMatrix<Real>& basis, RandomEngine& rng) {
  check_orthonormal(basis);
  const detail::SubsystemSplit split(targets, state.num_qubits());
  if (basis.rows() != Eigen::Index(split.target_dim())) {
    throw std::invalid_argument("basis dimension does not match target count");
  }
  const ComplexMatrix<Real> overlaps = detail::gather<Real>(state.amplitudes(), split) * basis.conjugate();
  std::vector<Real> probs(split.target_dim());
  for (Eigen::Index k = 0; k < overlaps.cols(); ++k) probs[std::size_t(k)] = overlaps.col(k).squaredNorm();

  const std::size_t k = detail::sample_index<Real>(probs, rng);
  const auto kk = Eigen::Index(k);
  const ComplexMatrix<Real> collapsed_block = overlaps.col(kk) * basis.col(kk).transpose() / std::sqrt(probs[k]);
  ComplexVector<Real> out(state.amplitudes().size());
  detail::scatter<Real>(collapsed_block, split, out);
  return {k, probs[k],
          BasicStateVector<Real>(std::move(out), state.num_qubits(), typename BasicStateVector<Real>::Unchecked{})};
}

template <typename Real>
struct BasicProjection {
  /// Probability of projecting `targets` onto the requested vector.
  Real probability = 0;
  /// Normalized state of the remaining qubits (ascending order), absent when
  /// the probability is zero or no qubits remain.
  std::optional<BasicStateVector<Real>> remainder;
};

/// Projects `targets` onto `vector` and discards them.
template <typename Real>
BasicProjection<Real> project_and_discard(const BasicStateVector<Real>& state, std::span<const int> targets,
                                          const ComplexVector<Real>& vector) {
  const detail::SubsystemSplit split(targets, state.num_qubits());
  if (vector.size() != Eigen::Index(split.target_dim())) {
    throw std::invalid_argument("projection vector dimension does not match target count");
  }
  ComplexVector<Real> rest = detail::gather<Real>(state.amplitudes(), split) * vector.conjugate();
  const Real p = rest.squaredNorm();
  BasicProjection<Real> result{p, std::nullopt};
  if (p > Real(0) && !split.rest_qubits.empty()) {
    rest /= std::sqrt(p);
    result.remainder.emplace(std::move(rest), int(split.rest_qubits.size()),
                             typename BasicStateVector<Real>::Unchecked{});
  }
  return result;
}

/// |<a|b>|^2, invariant under global phase.
template <typename Real>
Real fidelity(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity of states with different qubit counts (" + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()) + ")");
  }
  return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), Real(0), Real(1));
}

/// Haar-random pure state: normalized vector of i.i.d. standard complex
/// Gaussians.
template <typename Real = double, typename RandomEngine>
BasicStateVector<Real> sample_haar_state(int num_qubits, RandomEngine& rng, int max_qubits = kDefaultMaxQubits) {
  detail::check_qubit_count(num_qubits, max_qubits);
  std::normal_distribution<Real> gauss;
  ComplexVector<Real> v(Eigen::Index(1) << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Real re = gauss(rng);
    const Real im = gauss(rng);
    v(i) = {re, im};
  }
  return BasicStateVector<Real>::normalized(std::move(v), max_qubits);
}

/// Haar-random unitary of size dim x dim (QR of a Ginibre matrix with the
/// phases of R's diagonal divided out).
template <typename Real = double, typename RandomEngine>
ComplexMatrix<Real> sample_haar_unitary(Eigen::Index dim, RandomEngine& rng) {
  std::normal_distribution<Real> gauss;
  ComplexMatrix<Real> z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const Real re = gauss(rng);
      const Real im = gauss(rng);
      z(i, j) = {re, im};
    }
  }
  Eigen::HouseholderQR<ComplexMatrix<Real>> qr(z);
  ComplexMatrix<Real> q = qr.householderQ();
  const ComplexMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const std::complex<Real> d = r(j, j);
    const Real mag = std::abs(d);
    if (mag > Real(0)) q.col(j) *= d / mag;
  }
  return q;
}

/// Orthonormal basis (as columns) whose first element is `first`, completed
/// by Gram-Schmidt over the computational basis vectors in index order.
/// Candidates whose squared overlap with the span so far exceeds
/// 1 - 1e-6 are skipped.
template <typename Real>
ComplexMatrix<Real> basis_with_first(const ComplexVector<Real>& first) {
  const Eigen::Index dim = first.size();
  const Real first_norm = first.norm();
  if (!(first_norm > Real(0))) throw std::invalid_argument("basis seed vector is zero");
  ComplexMatrix<Real> basis(dim, dim);
  basis.col(0) = first / first_norm;
  Eigen::Index filled = 1;
  constexpr Real kParallelThreshold = Real(1e-6);
  for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
    ComplexVector<Real> v = ComplexVector<Real>::Zero(dim);
    v(e) = 1;
    // Two passes of modified Gram-Schmidt keep the basis orthonormal to
    // working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < filled; ++c) v -= basis.col(c) * basis.col(c).dot(v);
    }
    const Real residual = v.squaredNorm();
    if (residual < kParallelThreshold) continue;
    basis.col(filled++) = v / std::sqrt(residual);
  }
  return basis;
}

}  // namespace qinstant
