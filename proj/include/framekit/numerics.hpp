#pragma once

// Dense complex-matrix kernels shared by every other framekit header.
//
// Operators are plain Eigen::MatrixXcd values; the helpers here add the
// tolerance-aware verdicts (positivity, numerical rank, range inclusion) and
// the whitened-pencil majorization constant that the frame checks rely on.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace framekit {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  DimensionMismatch,
  NotSquare,
  OffGridShift,
  OffGridFrequency,
  OffGridEndpoints,
  NonCoprimeDilation,
  NotAFrame,
  NotThetaFrame,
  NotParseval,
  NotHyponormal,
  SingularU,
  PartitionNotDisjoint,
  PartitionNotExhaustive,
  InvalidInput,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::OffGridShift: return "OffGridShift";
    case ErrorKind::OffGridFrequency: return "OffGridFrequency";
    case ErrorKind::OffGridEndpoints: return "OffGridEndpoints";
    case ErrorKind::NonCoprimeDilation: return "NonCoprimeDilation";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::NotThetaFrame: return "NotThetaFrame";
    case ErrorKind::NotParseval: return "NotParseval";
    case ErrorKind::NotHyponormal: return "NotHyponormal";
    case ErrorKind::SingularU: return "SingularU";
    case ErrorKind::PartitionNotDisjoint: return "PartitionNotDisjoint";
    case ErrorKind::PartitionNotExhaustive: return "PartitionNotExhaustive";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical thresholds for positivity, rank and inequality verdicts.
struct Tolerance {
  double psd_floor = 1e-9;    // eigenvalue floor, scaled by max(1, ||H||)
  double rank_rel = 1e-10;    // singular values below rank_rel * sigma_max are dropped
  double verdict_rel = 1e-8;  // relative slack for inequality / equality verdicts

  void validate() const {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!ok(psd_floor) || !ok(rank_rel) || !ok(verdict_rel)) {
      throw Error(ErrorKind::InvalidInput, "tolerances must be finite and nonnegative");
    }
  }
};

inline Operator adjoint(const Operator& m) { return m.adjoint(); }

inline void require_square(const Operator& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::NotSquare, std::string(who) + " needs a square operator, got " +
                                          std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
}

struct HermEig {
  RealVector values;  // ascending
  Operator vectors;   // orthonormal columns, vectors.col(i) pairs with values(i)
};

struct Svd {
  Operator left;
  RealVector singulars;  // descending
  Operator right;
};

inline Svd svd(const Operator& m) {
  Svd out;
  if (m.size() == 0) {
    out.left = Operator::Identity(m.rows(), 0);
    out.right = Operator::Identity(m.cols(), 0);
    out.singulars = RealVector(0);
    return out;
  }
  Eigen::JacobiSVD<Operator> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "SVD did not converge");
  }
  out.left = solver.matrixU();
  out.singulars = solver.singularValues();
  out.right = solver.matrixV();
  return out;
}

/// Largest singular value (operator 2-norm).
inline double op_norm(const Operator& m) {
  if (m.size() == 0) return 0.0;
  return svd(m).singulars(0);
}

/// Smallest singular value of a square operator.
inline double min_singular(const Operator& m) {
  require_square(m, "min_singular");
  if (m.size() == 0) return 0.0;
  const RealVector s = svd(m).singulars;
  return s(s.size() - 1);
}

/// (H + H*) / 2, for forms that are Hermitian by construction but carry rounding.
inline Operator hermitian_part(const Operator& h) { return 0.5 * (h + h.adjoint()); }

inline HermEig herm_eig(const Operator& h, const Tolerance& tol = {}) {
  require_square(h, "herm_eig");
  const double scale = h.norm();
  const double skew = (h - h.adjoint()).norm();
  if (skew > tol.verdict_rel * scale) {
    throw Error(ErrorKind::NotHermitian,
                "||H - H*|| = " + std::to_string(skew) + " exceeds tolerance");
  }
  HermEig out;
  if (h.size() == 0) {
    out.values = RealVector(0);
    out.vectors = Operator(0, 0);
    return out;
  }
  const Operator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

inline double max_abs(const RealVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

/// Number of singular values above rank_rel times the reference scale.
/// A nonpositive reference falls back to the operator's own largest singular value.
inline Eigen::Index numerical_rank(const Operator& m, const Tolerance& tol = {},
                                   double reference = -1.0) {
  if (m.size() == 0) return 0;
  const RealVector s = svd(m).singulars;
  const double ref = reference > 0.0 ? reference : s(0);
  if (ref == 0.0) return 0;
  const double cutoff = tol.rank_rel * ref;
  return static_cast<Eigen::Index>((s.array() > cutoff).count());
}

inline Operator pinv(const Operator& m, const Tolerance& tol = {}) {
  if (m.size() == 0) return Operator::Zero(m.cols(), m.rows());
  const Svd d = svd(m);
  const double cutoff = tol.rank_rel * d.singulars(0);
  Operator out = Operator::Zero(m.cols(), m.rows());
  for (Eigen::Index i = 0; i < d.singulars.size(); ++i) {
    const double s = d.singulars(i);
    if (s > cutoff && s > 0.0) {
      out += (d.right.col(i) / s) * d.left.col(i).adjoint();
    }
  }
  return out;
}

struct PsdVerdict {
  bool verdict = false;
  double min_eigenvalue = 0.0;
};

inline PsdVerdict is_psd(const Operator& h, const Tolerance& tol = {}) {
  const HermEig e = herm_eig(h, tol);
  PsdVerdict out;
  if (e.values.size() == 0) {
    out.verdict = true;
    return out;
  }
  out.min_eigenvalue = e.values(0);
  const double scale = std::max(1.0, max_abs(e.values));
  out.verdict = out.min_eigenvalue >= -tol.psd_floor * scale;
  return out;
}

/// R(a) subset of R(b), decided by comparing numerical ranks of [b | a] and b.
inline bool range_inclusion(const Operator& a, const Operator& b, const Tolerance& tol = {}) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "range_inclusion operands need equal row counts");
  }
  Operator joined(b.rows(), b.cols() + a.cols());
  joined << b, a;
  const double ref = op_norm(joined);
  if (ref == 0.0) return true;
  return numerical_rank(joined, tol, ref) == numerical_rank(b, tol, ref);
}

/// Least lambda with X <= lambda * Y for Hermitian PSD X, Y.
///
/// Y is eigendecomposed and split into a numerical range (eigenvalues above
/// rank_rel * lambda_max(Y)) and kernel. If the compression of X onto the
/// kernel exceeds psd_floor * max(1, ||X||) no finite constant exists and
/// kernel_witness carries a unit vector in ker(Y) maximizing <Xf, f>.
/// Otherwise constant = lambda_max(L^{-1/2} U* X U L^{-1/2}) on the range and
/// witness is a unit vector whose quotient <Xf,f>/<Yf,f> attains it.
struct Majorization {
  double constant = 0.0;
  bool finite = true;
  Vector witness;          // attains the constant (empty when X vanishes on range(Y))
  double kernel_excess = 0.0;
  Vector kernel_witness;   // empty when Y has no numerical kernel
  Eigen::Index range_rank = 0;
  RealVector pencil_eigenvalues;  // ascending whitened-pencil spectrum on range(Y)
};

inline Majorization majorization(const Operator& x, const Operator& y, const Tolerance& tol = {}) {
  require_square(x, "majorization");
  require_square(y, "majorization");
  if (x.rows() != y.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "majorization operands differ in size");
  }
  const Eigen::Index n = x.rows();
  Majorization out;
  if (n == 0) return out;

  const HermEig ey = herm_eig(y, tol);
  const HermEig ex = herm_eig(x, tol);
  const double ymax = std::max(0.0, ey.values(n - 1));
  const double cutoff = tol.rank_rel * ymax;

  std::vector<Eigen::Index> range_idx;
  std::vector<Eigen::Index> kernel_idx;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ymax > 0.0 && ey.values(i) > cutoff) {
      range_idx.push_back(i);
    } else {
      kernel_idx.push_back(i);
    }
  }
  out.range_rank = static_cast<Eigen::Index>(range_idx.size());

  if (!kernel_idx.empty()) {
    Operator k(n, static_cast<Eigen::Index>(kernel_idx.size()));
    for (std::size_t c = 0; c < kernel_idx.size(); ++c) {
      k.col(static_cast<Eigen::Index>(c)) = ey.vectors.col(kernel_idx[c]);
    }
    const Operator compressed = hermitian_part(k.adjoint() * x * k);
    const HermEig ek = herm_eig(compressed, tol);
    out.kernel_excess = ek.values(ek.values.size() - 1);
    out.kernel_witness = k * ek.vectors.col(ek.vectors.cols() - 1);
    out.kernel_witness.normalize();
    const double xscale = std::max(1.0, max_abs(ex.values));
    if (out.kernel_excess > tol.psd_floor * xscale) {
      out.finite = false;
      out.constant = kInfinity;
      out.witness = out.kernel_witness;
      return out;
    }
  }

  if (range_idx.empty()) {
    out.constant = 0.0;
    return out;
  }

  Operator whitener(n, out.range_rank);
  for (std::size_t c = 0; c < range_idx.size(); ++c) {
    const Eigen::Index i = range_idx[c];
    whitener.col(static_cast<Eigen::Index>(c)) = ey.vectors.col(i) / std::sqrt(ey.values(i));
  }
  const Operator pencil = hermitian_part(whitener.adjoint() * x * whitener);
  const HermEig ep = herm_eig(pencil, tol);
  out.pencil_eigenvalues = ep.values;
  out.constant = std::max(0.0, ep.values(ep.values.size() - 1));
  Vector w = whitener * ep.vectors.col(ep.vectors.cols() - 1);
  const double wn = w.norm();
  if (wn > 0.0) out.witness = w / wn;
  return out;
}

/// Greatest c with c * Y <= X, i.e. the reciprocal of majorization(Y, X).
/// Returns +inf when Y vanishes (vacuous lower inequality) and 0 when ker(X)
/// meets Y nontrivially. The witness attains the constant as <Xf,f>/<Yf,f>.
struct LowerConstant {
  double constant = 0.0;
  bool vacuous = false;
  Vector witness;
};

inline LowerConstant lower_constant(const Operator& x, const Operator& y, const Tolerance& tol = {}) {
  const Majorization m = majorization(y, x, tol);
  LowerConstant out;
  out.witness = m.witness;
  if (!m.finite) {
    out.constant = 0.0;
  } else if (m.constant == 0.0) {
    out.constant = kInfinity;
    out.vacuous = true;
  } else {
    out.constant = 1.0 / m.constant;
  }
  return out;
}

/// Quadratic form <H f, f> for Hermitian H.
inline double quad(const Operator& h, const Vector& f) {
  return std::real(f.dot(h * f));
}

/// Orthonormal basis for the numerical range of m.
inline Operator range_basis(const Operator& m, const Tolerance& tol = {}) {
  if (m.size() == 0) return Operator(m.rows(), 0);
  const Svd d = svd(m);
  const double cutoff = tol.rank_rel * d.singulars(0);
  Eigen::Index r = 0;
  while (r < d.singulars.size() && d.singulars(r) > cutoff && d.singulars(r) > 0.0) ++r;
  return d.left.leftCols(r);
}

}  // namespace framekit
