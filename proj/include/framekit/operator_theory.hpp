#pragma once

// Hyponormality tests, relative hyponormality, the Douglas range/majorization/
// factorization triple, and the Moore-Penrose hyponormality criterion.

#include "framekit/numerics.hpp"

#include <cmath>
#include <optional>

namespace framekit {

struct HyponormalityReport {
  double commutator_min_eig = 0.0;  // lambda_min(T*T - TT*)
  double commutator_norm = 0.0;
  double commutator_trace = 0.0;
  bool global_verdict = false;
  std::optional<bool> margin_verdict;     // compressed commutator on the test subspace
  std::optional<double> margin_min_eig;
};

inline Operator self_commutator(const Operator& t) { return hermitian_part(t.adjoint() * t - t * t.adjoint()); }

/// test_subspace, when given, must have orthonormal columns.
inline HyponormalityReport hyponormality(const Operator& t, const Tolerance& tol = {},
                                         const std::optional<Operator>& test_subspace = std::nullopt) {
  require_square(t, "hyponormality");
  const Operator k = self_commutator(t);
  const HermEig e = herm_eig(k, tol);
  HyponormalityReport r;
  const double tn = op_norm(t);
  r.commutator_min_eig = e.values.size() ? e.values(0) : 0.0;
  r.commutator_norm = max_abs(e.values);
  r.commutator_trace = std::real(k.trace());
  r.global_verdict = r.commutator_min_eig >= -tol.psd_floor * std::max(1.0, tn * tn);
  if (test_subspace) {
    const Operator& p = *test_subspace;
    if (p.rows() != t.rows()) throw Error(ErrorKind::DimensionMismatch, "test subspace has wrong ambient dimension");
    const PsdVerdict v = is_psd(hermitian_part(p.adjoint() * k * p), tol);
    r.margin_verdict = v.verdict;
    r.margin_min_eig = v.min_eigenvalue;
  }
  return r;
}

struct RelativeHyponormality {
  bool holds = false;
  double lambda_opt = kInfinity;  // least lambda with lambda T1*T1 >= T2 T2*
  bool degenerate_zero = false;   // lambda = 0 forced by T2 = 0
  Vector witness;
};

inline RelativeHyponormality relative_hyponormality(const Operator& t1, const Operator& t2,
                                                    const Tolerance& tol = {}) {
  if (t1.cols() != t2.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "T1*T1 and T2 T2* must have the same size");
  }
  const Majorization m = majorization(hermitian_part(t2 * t2.adjoint()), hermitian_part(t1.adjoint() * t1), tol);
  RelativeHyponormality r;
  r.lambda_opt = m.constant;
  r.holds = m.finite;
  r.witness = m.witness;
  r.degenerate_zero = m.finite && m.constant == 0.0;
  return r;
}

struct DouglasReport {
  bool range_included = false;   // (i)
  double lambda_min = kInfinity; // (ii) least lambda with T1T1* <= lambda^2 T2T2*
  std::optional<Operator> factor;  // (iii) S with T1 = T2 S
  double factor_residual = 0.0;    // ||T2 S - T1|| for the pinv candidate
  bool consistent = false;

  bool majorized() const { return std::isfinite(lambda_min); }
};

inline DouglasReport douglas_check(const Operator& t1, const Operator& t2, const Tolerance& tol = {}) {
  if (t1.rows() != t2.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "Douglas check needs equal row counts");
  }
  DouglasReport r;
  r.range_included = range_inclusion(t1, t2, tol);

  const Majorization m = majorization(hermitian_part(t1 * t1.adjoint()), hermitian_part(t2 * t2.adjoint()), tol);
  r.lambda_min = m.finite ? std::sqrt(m.constant) : kInfinity;

  const Operator candidate = pinv(t2, tol) * t1;
  r.factor_residual = op_norm(t2 * candidate - t1);
  if (r.factor_residual <= tol.verdict_rel * op_norm(t1)) r.factor = candidate;

  const bool f = r.factor.has_value();
  r.consistent = (r.range_included == r.majorized()) && (r.majorized() == f);
  return r;
}

struct DjordjevicVerdict {
  bool verdict = false;
  double witness_min_eig = 0.0;  // lambda_min(AA* - 2AA*(AA*+A*A)^+ AA*)
};

inline DjordjevicVerdict djordjevic_hyponormal(const Operator& a, const Tolerance& tol = {}) {
  require_square(a, "djordjevic_hyponormal");
  const Operator aa = a * a.adjoint();
  const Operator sum = aa + a.adjoint() * a;
  const Operator g = hermitian_part(aa - 2.0 * aa * pinv(sum, tol) * aa);
  const PsdVerdict v = is_psd(g, tol);
  return {v.verdict, v.min_eigenvalue};
}

}  // namespace framekit
