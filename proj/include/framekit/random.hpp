#pragma once

// Seeded generators for randomized checks. Every trial derives its own
// sub-seed from (seed, trial) so runs replay exactly.

#include "framekit/numerics.hpp"

#include <cstdint>
#include <random>

namespace framekit {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ull));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return gauss_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  long long integer(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(engine_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }

  Complex complex_normal() { return {normal(), normal()}; }

  Vector vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_normal();
    return v;
  }

  Operator matrix(Eigen::Index rows, Eigen::Index cols) {
    Operator m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
    return m;
  }

  Operator hermitian(Eigen::Index n) {
    const Operator m = matrix(n, n);
    return 0.5 * (m + m.adjoint());
  }

  /// Haar-like unitary from the QR factor of a Gaussian matrix.
  Operator unitary(Eigen::Index n) {
    const Operator m = matrix(n, n);
    Eigen::HouseholderQR<Operator> qr(m);
    Operator q = qr.householderQ() * Operator::Identity(n, n);
    const Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex d = r(i, i);
      if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
    }
    return q;
  }

  /// rows x cols matrix with orthonormal columns (rows >= cols).
  Operator isometry(Eigen::Index rows, Eigen::Index cols) {
    const Operator m = matrix(rows, cols);
    Eigen::HouseholderQR<Operator> qr(m);
    return qr.householderQ() * Operator::Identity(rows, cols);
  }

  /// Q diag(values) Q* with Q random unitary.
  Operator normal_with_spectrum(const Vector& values) {
    const Operator q = unitary(values.size());
    return q * values.asDiagonal() * q.adjoint();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace framekit
