#pragma once

// Frames whose lower and upper inequalities are controlled by a bounded
// operator Theta:
//
//   alpha ||Theta* f||^2 <= sum_k |<f, f_k>|^2 <= beta ||Theta f||^2.
//
// With S the frame operator, C = Theta Theta* and D = Theta* Theta, the
// optimal alpha is the greatest c with c C <= S and the optimal beta the
// least c with S <= c D; both come out of the whitened-pencil majorization
// in numerics.hpp. All checks accept an optional test subspace (orthonormal
// columns) onto which every quadratic form is compressed first.

#include "framekit/frame_core.hpp"
#include "framekit/operator_theory.hpp"
#include "framekit/random.hpp"
#include "framekit/verification.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

namespace framekit {

using Subspace = std::optional<Operator>;

namespace detail {

inline Operator compress(const Operator& h, const Subspace& p) {
  return hermitian_part(p ? Operator(p->adjoint() * h * (*p)) : h);
}

inline Vector lift(const Vector& w, const Subspace& p) {
  if (w.size() == 0) return w;
  return p ? Vector(*p * w) : w;
}

inline void require_theta(const FrameSystem& f, const Operator& theta, const Subspace& p) {
  require_square(theta, "theta frame check");
  if (theta.rows() != f.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "Theta must act on the frame's space");
  }
  if (p && p->rows() != f.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "test subspace has wrong ambient dimension");
  }
}

}  // namespace detail

struct ThetaFrameReport {
  double alpha_opt = 0.0;
  bool alpha_vacuous = false;  // Theta* vanishes on the tested space
  double beta_opt = kInfinity;
  bool lower_ok = false;
  bool upper_ok = false;
  Vector lower_witness;  // attains alpha_opt, or lies in ker(S) when alpha_opt = 0
  Vector upper_witness;  // attains beta_opt
  std::optional<Vector> kernel_obstruction;  // Theta f ~ 0 but sum |<f,f_k>|^2 > 0

  bool passes() const { return lower_ok && upper_ok; }
};

inline ThetaFrameReport check_theta_frame(const FrameSystem& f, const Operator& theta,
                                          const Tolerance& tol = {}, const Subspace& subspace = std::nullopt) {
  detail::require_theta(f, theta, subspace);
  const Operator s = detail::compress(frame_operator(f), subspace);
  const Operator c = detail::compress(theta * theta.adjoint(), subspace);
  const Operator d = detail::compress(theta.adjoint() * theta, subspace);

  ThetaFrameReport r;
  const LowerConstant lower = lower_constant(s, c, tol);
  r.alpha_opt = lower.constant;
  r.alpha_vacuous = lower.vacuous;
  r.lower_witness = detail::lift(lower.witness, subspace);
  r.lower_ok = r.alpha_opt > tol.psd_floor;

  const Majorization upper = majorization(s, d, tol);
  r.beta_opt = upper.constant;
  r.upper_ok = upper.finite;
  r.upper_witness = detail::lift(upper.witness, subspace);
  if (!upper.finite) r.kernel_obstruction = detail::lift(upper.kernel_witness, subspace);
  return r;
}

struct KFrameBounds {
  double a_opt = 0.0;
  double b_opt = 0.0;
  bool degenerate = false;  // K = 0 on the tested space: lower inequality is vacuous
  Vector lower_witness;
};

inline KFrameBounds check_k_frame(const FrameSystem& f, const Operator& k, const Tolerance& tol = {},
                                  const Subspace& subspace = std::nullopt) {
  detail::require_theta(f, k, subspace);
  const Operator s = detail::compress(frame_operator(f), subspace);
  const Operator kk = detail::compress(k * k.adjoint(), subspace);
  const LowerConstant lower = lower_constant(s, kk, tol);
  KFrameBounds out;
  out.a_opt = lower.constant;
  out.degenerate = lower.vacuous;
  out.lower_witness = detail::lift(lower.witness, subspace);
  const HermEig e = herm_eig(s, tol);
  out.b_opt = e.values.size() ? std::max(0.0, e.values(e.values.size() - 1)) : 0.0;
  return out;
}

struct KBoundsFromTheta {
  double a = 0.0;
  double b = 0.0;
};

/// A Theta-frame with bounds (alpha, beta) is a K-frame for K = Theta with
/// bounds (alpha, beta ||Theta||^2).
inline KBoundsFromTheta theta_to_k_bounds(const ThetaFrameReport& report, const Operator& theta) {
  if (!report.passes()) {
    throw Error(ErrorKind::NotThetaFrame, "report does not certify a Theta-frame");
  }
  const double t = op_norm(theta);
  return {report.alpha_opt, report.beta_opt * t * t};
}

struct ThetaTightness {
  bool is_theta_tight = false;
  double alpha0 = 0.0;
  bool theta_is_identity = false;
  ThetaFrameReport report;
};

/// A common constant alpha0 with alpha0 C <= S <= alpha0 D exists iff
/// beta_opt <= alpha_opt; when required_alpha0 is given that exact constant
/// is tested instead.
inline ThetaTightness theta_tight_check(const FrameSystem& f, const Operator& theta, const Tolerance& tol = {},
                                        std::optional<double> required_alpha0 = std::nullopt,
                                        const Subspace& subspace = std::nullopt) {
  ThetaTightness out;
  out.report = check_theta_frame(f, theta, tol, subspace);
  const Eigen::Index n = theta.rows();
  out.theta_is_identity = (theta - Operator::Identity(n, n)).norm() <= tol.verdict_rel * std::sqrt(double(n));

  const ThetaFrameReport& r = out.report;
  const double slack = 1.0 + tol.verdict_rel;
  out.alpha0 = required_alpha0.value_or(r.alpha_opt);
  if (!r.passes() || r.alpha_vacuous) return out;
  if (required_alpha0) {
    const double a0 = *required_alpha0;
    out.is_theta_tight = a0 > 0.0 && r.beta_opt <= a0 * slack && a0 <= r.alpha_opt * slack;
  } else {
    out.is_theta_tight = r.beta_opt <= r.alpha_opt * slack;
  }
  return out;
}

struct TightConstruction {
  FrameSystem system;  // {Theta f_k}
  Verification verification;
  ThetaTightness tightness;
};

/// Maps a Parseval frame through a hyponormal Theta and verifies that the
/// image is a (Theta, 1)-tight frame: sum_k |<f, Theta f_k>|^2 = ||Theta* f||^2
/// <= ||Theta f||^2.
inline TightConstruction construct_theorem_3_8(const FrameSystem& parseval, const Operator& theta,
                                               const Tolerance& tol = {}, const Subspace& subspace = std::nullopt,
                                               std::uint64_t seed = 0x38, int samples = 100) {
  detail::require_theta(parseval, theta, subspace);
  const FrameBounds b = optimal_bounds(parseval, tol);
  if (std::abs(b.lower - 1.0) > tol.verdict_rel || std::abs(b.upper - 1.0) > tol.verdict_rel) {
    throw Error(ErrorKind::NotParseval, "input frame bounds are (" + std::to_string(b.lower) + ", " +
                                            std::to_string(b.upper) + "), not (1, 1)");
  }
  const HyponormalityReport h = hyponormality(theta, tol, subspace);
  const bool hypo = subspace ? h.margin_verdict.value_or(false) : h.global_verdict;
  if (!hypo) {
    throw Error(ErrorKind::NotHyponormal, "commutator min eigenvalue " +
                                              std::to_string(subspace ? *h.margin_min_eig : h.commutator_min_eig));
  }

  FrameSystem image = parseval.mapped(theta);
  Verification v;
  const double tn2 = std::pow(op_norm(theta), 2);
  const Operator c = theta * theta.adjoint();
  v.at_most("frame operator equals Theta Theta*", op_norm(frame_operator(image) - c),
            tol.verdict_rel * std::max(1.0, tn2));

  Rng rng(seed);
  const Operator synth_adj = analysis_matrix(image);
  double worst_identity = 0.0;
  double worst_hypo = 0.0;
  for (int i = 0; i < samples; ++i) {
    Vector f = rng.vector(theta.rows());
    if (subspace) f = *subspace * rng.vector(subspace->cols());
    const double energy = (synth_adj * f).squaredNorm();
    const double star = (theta.adjoint() * f).squaredNorm();
    const double plain = (theta * f).squaredNorm();
    const double denom = std::max(star, 1e-300);
    worst_identity = std::max(worst_identity, std::abs(energy - star) / denom);
    worst_hypo = std::max(worst_hypo, (star - plain) / std::max(plain, 1e-300));
  }
  v.at_most("sampled sum |<f,Theta f_k>|^2 = ||Theta* f||^2 (relative)", worst_identity, tol.verdict_rel);
  v.at_most("sampled ||Theta* f||^2 <= ||Theta f||^2 (relative excess)", worst_hypo, tol.verdict_rel);

  ThetaTightness t = theta_tight_check(image, theta, tol, 1.0, subspace);
  v.add("(Theta,1)-tight", t.is_theta_tight, t.report.beta_opt, t.report.alpha_opt);
  return {std::move(image), std::move(v), std::move(t)};
}

struct TransformCheck {
  FrameSystem system = FrameSystem::canonical_basis(1);  // {U f_k}
  bool commutes = false;
  double commutator_norm = 0.0;   // ||U Theta* - Theta* U||
  Vector commutator_witness;      // unit f maximizing ||(U Theta* - Theta* U) f||
  bool fully_commuting = false;   // U also commutes with Theta
  double norm_u = 0.0;
  double norm_u_inv = 0.0;
  double norm_theta = 0.0;
  ThetaFrameReport original;
  ThetaFrameReport transformed;
  RelativeHyponormality theta_u_star;  // lambda Theta*Theta >= U* U
  Verification stated_bounds;     // A1||U||^-2 <= A2 <= A1||U^-1||^2, B2 <= B1||U||^2, B1 <= lambda B2 ||Theta||^2
  Verification classical_bounds;  // A1||U^-1||^-2 <= A2 <= A1||U||^2, B1||U^-1||^-2 <= B2 <= B1||U||^2
};

inline TransformCheck transform_frame_check(const FrameSystem& f, const Operator& theta, const Operator& u,
                                            const Tolerance& tol = {}) {
  detail::require_theta(f, theta, std::nullopt);
  require_square(u, "transform_frame_check");
  if (u.rows() != theta.rows()) throw Error(ErrorKind::DimensionMismatch, "U and Theta differ in size");
  const Svd du = svd(u);
  const double smax = du.singulars(0);
  const double smin = du.singulars(du.singulars.size() - 1);
  if (smin <= 0.0 || smax / smin >= 1.0 / tol.rank_rel) {
    throw Error(ErrorKind::SingularU, "U is numerically singular (condition " + std::to_string(smax / smin) + ")");
  }

  TransformCheck out;
  out.system = f.mapped(u);
  out.norm_u = smax;
  out.norm_u_inv = 1.0 / smin;
  out.norm_theta = op_norm(theta);
  const Operator comm = u * theta.adjoint() - theta.adjoint() * u;
  const Svd dc = svd(comm);
  out.commutator_norm = dc.singulars(0);
  out.commutator_witness = dc.right.col(0);
  const double scale = out.norm_u * out.norm_theta;
  out.commutes = out.commutator_norm <= tol.verdict_rel * scale;
  out.fully_commuting = out.commutes && op_norm(u * theta - theta * u) <= tol.verdict_rel * scale;

  out.original = check_theta_frame(f, theta, tol);
  out.transformed = check_theta_frame(out.system, theta, tol);
  out.theta_u_star = relative_hyponormality(theta, u.adjoint(), tol);

  const double a1 = out.original.alpha_opt, b1 = out.original.beta_opt;
  const double a2 = out.transformed.alpha_opt, b2 = out.transformed.beta_opt;
  const double nu2 = out.norm_u * out.norm_u, ninv2 = out.norm_u_inv * out.norm_u_inv;
  const double slack = 1.0 + tol.verdict_rel;

  Verification& s = out.stated_bounds;
  s.add("A1 ||U||^-2 <= A2", a1 / nu2 <= a2 * slack, a1 / nu2, a2);
  s.add("A2 <= A1 ||U^-1||^2", a2 <= a1 * ninv2 * slack, a2, a1 * ninv2);
  s.add("B2 <= B1 ||U||^2", b2 <= b1 * nu2 * slack, b2, b1 * nu2);
  if (out.theta_u_star.holds) {
    const double rhs = out.theta_u_star.lambda_opt * b2 * out.norm_theta * out.norm_theta;
    s.add("B1 <= lambda B2 ||Theta||^2", b1 <= rhs * slack, b1, rhs);
  }

  Verification& c = out.classical_bounds;
  c.add("A1 ||U^-1||^-2 <= A2", a1 / ninv2 <= a2 * slack, a1 / ninv2, a2);
  c.add("A2 <= A1 ||U||^2", a2 <= a1 * nu2 * slack, a2, a1 * nu2);
  c.add("B1 ||U^-1||^-2 <= B2", b1 / ninv2 <= b2 * slack, b1 / ninv2, b2);
  c.add("B2 <= B1 ||U||^2", b2 <= b1 * nu2 * slack, b2, b1 * nu2);
  return out;
}

struct PseudoinverseChain {
  bool vacuous = false;  // range(Theta) = {0}
  double alpha = 0.0;
  double beta = 0.0;
  double pinv_norm = 0.0;          // ||Theta^+||
  double restricted_min_eig = 0.0; // lambda_min of S compressed to range(Theta)
  Verification verification;
};

/// On range(Theta): Theta Theta^+ = I, and
/// alpha ||Theta^+||^-2 ||f||^2 <= <S f, f> <= beta ||Theta||^2 ||f||^2,
/// so S restricted to range(Theta) is invertible.
inline PseudoinverseChain pseudoinverse_bound_chain(const FrameSystem& f, const Operator& theta,
                                                    const Tolerance& tol = {}, std::uint64_t seed = 0x32,
                                                    int samples = 100) {
  detail::require_theta(f, theta, std::nullopt);
  PseudoinverseChain out;
  const Operator q = range_basis(theta, tol);
  if (q.cols() == 0) {
    out.vacuous = true;
    out.verification.add("range(Theta) trivial", true, 0.0, 0.0);
    return out;
  }
  const ThetaFrameReport r = check_theta_frame(f, theta, tol);
  if (!r.passes()) throw Error(ErrorKind::NotThetaFrame, "bound chain needs a Theta-frame");
  out.alpha = r.alpha_opt;
  out.beta = r.beta_opt;

  const Operator tp = pinv(theta, tol);
  out.pinv_norm = op_norm(tp);
  const double tn = op_norm(theta);
  const Operator s = frame_operator(f);
  Verification& v = out.verification;

  const Operator proj = theta * tp;
  v.at_most("Theta Theta^+ = I on range(Theta)", (proj * q - q).norm() / std::sqrt(double(q.cols())),
            tol.verdict_rel);

  const double lower = out.alpha / (out.pinv_norm * out.pinv_norm);
  const double upper = out.beta * tn * tn;
  const HermEig restricted = herm_eig(hermitian_part(q.adjoint() * s * q), tol);
  out.restricted_min_eig = restricted.values(0);
  v.add("S invertible on range(Theta)", out.restricted_min_eig > tol.psd_floor, out.restricted_min_eig,
        tol.psd_floor);
  v.add("lambda_min(S | range) >= alpha ||Theta^+||^-2", out.restricted_min_eig >= lower * (1.0 - tol.verdict_rel),
        out.restricted_min_eig, lower);

  Rng rng(seed);
  double worst_lower = kInfinity, worst_upper = 0.0, worst_pinv = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector x = q * rng.vector(q.cols());
    const double nx2 = x.squaredNorm();
    const double form = quad(s, x);
    worst_lower = std::min(worst_lower, form / nx2);
    worst_upper = std::max(worst_upper, form / nx2);
    worst_pinv = std::max(worst_pinv, std::sqrt(nx2) / (out.pinv_norm * (theta.adjoint() * x).norm()));
  }
  v.add("sampled <Sf,f> >= alpha ||Theta^+||^-2 ||f||^2", worst_lower >= lower * (1.0 - tol.verdict_rel),
        worst_lower, lower);
  v.at_most("sampled <Sf,f> <= beta ||Theta||^2 ||f||^2", worst_upper, upper * (1.0 + tol.verdict_rel));
  v.at_most("sampled ||f|| <= ||Theta^+|| ||Theta* f||", worst_pinv, 1.0 + tol.verdict_rel);
  return out;
}

}  // namespace framekit
