#pragma once

#include "framekit/numerics.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace framekit {

/// (j, k, m) index of a wave-packet element.
using Label = std::array<long long, 3>;

/// Finite ordered family {f_k} in C^n, optionally labelled by (j,k,m) triples.
class FrameSystem {
 public:
  FrameSystem(Eigen::Index n, std::vector<Vector> vectors, std::vector<Label> labels = {})
      : n_(n), vectors_(std::move(vectors)), labels_(std::move(labels)) {
    if (n_ <= 0) throw Error(ErrorKind::InvalidInput, "frame dimension must be positive");
    if (vectors_.empty()) throw Error(ErrorKind::InvalidInput, "frame system needs at least one vector");
    for (const auto& v : vectors_) {
      if (v.size() != n_) throw Error(ErrorKind::DimensionMismatch, "frame vector of wrong dimension");
    }
    if (!labels_.empty() && labels_.size() != vectors_.size()) {
      throw Error(ErrorKind::InvalidInput, "labels must match vectors one to one");
    }
  }

  /// Columns of m become the frame vectors.
  static FrameSystem from_columns(const Operator& m) {
    std::vector<Vector> v;
    v.reserve(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) v.emplace_back(m.col(c));
    return FrameSystem(m.rows(), std::move(v));
  }

  static FrameSystem canonical_basis(Eigen::Index n) {
    return from_columns(Operator::Identity(n, n));
  }

  Eigen::Index dimension() const { return n_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<Vector>& vectors() const { return vectors_; }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Label>& labels() const { return labels_; }
  bool labelled() const { return !labels_.empty(); }

  /// Unlabelled systems use (0, 0, i) for vector i.
  Label label(std::size_t i) const {
    return labelled() ? labels_[i] : Label{0, 0, static_cast<long long>(i)};
  }

  std::optional<std::size_t> index_of(const Label& l) const {
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      if (label(i) == l) return i;
    }
    return std::nullopt;
  }

  /// Synthesis matrix V: columns are the frame vectors.
  Operator synthesis() const {
    Operator v(n_, static_cast<Eigen::Index>(vectors_.size()));
    for (std::size_t c = 0; c < vectors_.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = vectors_[c];
    return v;
  }

  /// {M f_k}, labels kept.
  FrameSystem mapped(const Operator& m) const {
    if (m.cols() != n_) throw Error(ErrorKind::DimensionMismatch, "operator does not act on C^n");
    std::vector<Vector> out;
    out.reserve(vectors_.size());
    for (const auto& v : vectors_) out.emplace_back(m * v);
    return FrameSystem(m.rows(), std::move(out), labels_);
  }

 private:
  Eigen::Index n_;
  std::vector<Vector> vectors_;
  std::vector<Label> labels_;
};

/// Analysis matrix V*: row k is f_k*, so (V* f)_k = <f, f_k>.
inline Operator analysis_matrix(const FrameSystem& f) { return f.synthesis().adjoint(); }

/// S = V V* = sum_k f_k f_k*.
inline Operator frame_operator(const FrameSystem& f) {
  const Operator v = f.synthesis();
  return hermitian_part(v * v.adjoint());
}

/// sum_k |<f, f_k>|^2
inline double frame_energy(const FrameSystem& sys, const Vector& f) {
  return (analysis_matrix(sys) * f).squaredNorm();
}

struct FrameBounds {
  double lower = 0.0;  // delta_0 = lambda_min(S)
  double upper = 0.0;  // gamma_0 = lambda_max(S)
  bool tight = false;
  bool is_frame = false;  // lower > psd_floor
  Vector lower_witness;
  Vector upper_witness;
};

inline FrameBounds optimal_bounds(const FrameSystem& f, const Tolerance& tol = {}) {
  const HermEig e = herm_eig(frame_operator(f), tol);
  FrameBounds b;
  const Eigen::Index n = e.values.size();
  b.lower = std::max(0.0, e.values(0));
  b.upper = std::max(0.0, e.values(n - 1));
  b.tight = std::abs(b.upper - b.lower) <= tol.verdict_rel * b.upper;
  b.is_frame = b.lower > tol.psd_floor;
  b.lower_witness = e.vectors.col(0);
  b.upper_witness = e.vectors.col(n - 1);
  return b;
}

struct Reconstruction {
  Vector coefficients;  // <S^{-1} f, f_k>
  Vector reassembled;   // sum_k c_k f_k
};

inline Reconstruction reconstruct(const FrameSystem& sys, const Vector& f, const Tolerance& tol = {}) {
  if (f.size() != sys.dimension()) throw Error(ErrorKind::DimensionMismatch, "vector does not live in C^n");
  const Operator s = frame_operator(sys);
  const HermEig e = herm_eig(s, tol);
  if (e.values(0) <= tol.psd_floor) {
    throw Error(ErrorKind::NotAFrame, "frame operator is singular (delta_0 = " + std::to_string(e.values(0)) + ")");
  }
  const Vector sinv_f = e.vectors * (e.values.cwiseInverse().asDiagonal() * (e.vectors.adjoint() * f));
  Reconstruction r;
  r.coefficients = analysis_matrix(sys) * sinv_f;
  r.reassembled = sys.synthesis() * r.coefficients;
  return r;
}

}  // namespace framekit
