#pragma once

// Pinned desk-scale models of the worked examples. Each run returns the
// list of numeric assertions it made; run_example throws on an unknown id.

#include "framekit/signal_space.hpp"
#include "framekit/theta_frame.hpp"
#include "framekit/wavepacket.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace framekit {

struct ExampleRun {
  std::string id;
  std::string title;
  Verification checks;

  bool passed() const { return checks.holds(); }
};

namespace models {

inline void near(Verification& v, std::string name, double value, double expected, double tol) {
  v.add(std::move(name), std::abs(value - expected) <= tol, value, expected);
}

/// Canonical basis of C^32 against the backward shift, margin of one.
inline ExampleRun backward_shift(const Tolerance& tol = {}) {
  ExampleRun out{"3.2", "canonical basis is a K-frame for the backward shift but not a Theta-frame", {}};
  const TruncatedSequenceSpace space(32, 1);
  const FrameSystem e = FrameSystem::canonical_basis(space.n);
  const Operator theta = shift_operators(space).backward;
  const Operator margin = space.margin_subspace();
  Verification& v = out.checks;

  const KFrameBounds k = check_k_frame(e, theta, tol, margin);
  near(v, "A_opt on margin", k.a_opt, 1.0, 1e-9);
  near(v, "B_opt on margin", k.b_opt, 1.0, 1e-9);

  const ThetaFrameReport r = check_theta_frame(e, theta, tol);
  v.add("Theta-frame check fails", !r.passes(), r.beta_opt, kInfinity);
  v.add("upper inequality fails", !r.upper_ok, r.upper_ok ? 1.0 : 0.0, 0.0);
  near(v, "alpha_opt", r.alpha_opt, 1.0, 1e-9);
  const Vector chi1 = space.chi(1);
  const double align = r.kernel_obstruction ? std::abs(r.kernel_obstruction->dot(chi1)) : 0.0;
  near(v, "|<kernel witness, chi_1>|", align, 1.0, 1e-9);
  v.at_most("||Theta chi_1||", (theta * chi1).norm(), 1e-12);
  near(v, "sum |<chi_1, e_k>|^2", frame_energy(e, chi1), 1.0, 1e-12);
  return out;
}

/// {chi_k + chi_{k+1}} against the summing operator on C^64.
inline ExampleRun summing_operator_frame(const Tolerance& tol = {}) {
  ExampleRun out{"3.3", "{chi_k + chi_(k+1)} is a Theta-frame for the summing operator but not a frame", {}};
  const TruncatedSequenceSpace space(64, 1);
  const Operator theta = summing_operator(space);
  std::vector<Vector> vecs;
  for (Eigen::Index k = 1; k <= space.n; ++k) vecs.push_back(theta * space.chi(k));
  const FrameSystem f(space.n, std::move(vecs));
  Verification& v = out.checks;

  const ThetaFrameReport r = check_theta_frame(f, theta, tol, space.margin_subspace());
  v.add("lower inequality holds on margin", r.lower_ok, r.alpha_opt, tol.psd_floor);
  const double gamma = 0.5;
  v.add("gamma = 1/2 in (0,1) satisfies gamma <= alpha_opt", gamma <= r.alpha_opt, gamma, r.alpha_opt);
  v.add("upper inequality holds on margin", r.upper_ok, r.beta_opt, kInfinity);

  const FrameBounds b = optimal_bounds(f, tol);
  v.at_most("classical delta_0", b.lower, 0.01);
  return out;
}

/// {chi_[k,k+1)} on Grid(4,4) against multiplication by chi_[0,1).
inline ExampleRun indicator_system(const Tolerance& tol = {}) {
  ExampleRun out{"3.5", "indicator system fails the upper inequality for Theta = M_chi[0,1)", {}};
  const Grid g(4, 4);
  WavePacketParams p;
  p.grid = g;
  p.psi = indicator(g, 0, 1);
  p.k_lo = 0;
  p.k_hi = 3;
  const FrameSystem f = generate_system(p);
  const Operator theta = mult_operator(indicator(g, 0, 1));
  Verification& v = out.checks;

  v.add("system has 4 vectors", f.size() == 4, static_cast<double>(f.size()), 4.0);
  const ThetaFrameReport r = check_theta_frame(f, theta, tol);
  v.add("beta_opt = inf", !r.upper_ok && std::isinf(r.beta_opt), r.beta_opt, kInfinity);
  if (r.kernel_obstruction) {
    const Vector& w = *r.kernel_obstruction;
    v.at_most("||Theta w|| for kernel witness", (theta * w).norm(), 1e-12);
    v.add("kernel witness has positive energy", frame_energy(f, w) > tol.psd_floor, frame_energy(f, w), tol.psd_floor);
  } else {
    v.add("kernel witness present", false, 0.0, 1.0);
  }

  const double big_b = 1.0;
  const Vector h = (indicator(g, 0, 1) + indicator(g, 2, 3) * std::sqrt(big_b)).coordinates();
  const double energy = frame_energy(f, h);
  const double theta_h = (theta * h).squaredNorm();
  near(v, "sum |<h,f_k>|^2 = 1 + B", energy, 1.0 + big_b, 1e-10);
  near(v, "||Theta h||^2 = 1", theta_h, 1.0, 1e-10);
  v.add("sum |<h,f_k>|^2 > B ||Theta h||^2", energy > big_b * theta_h, energy, big_b * theta_h);
  return out;
}

/// Parseval frames mapped through normal operators are (Theta,1)-tight.
inline ExampleRun tight_construction(const Tolerance& tol = {}) {
  ExampleRun out{"3.8", "Theta maps a Parseval frame onto a (Theta,1)-tight frame", {}};
  Verification& v = out.checks;
  auto absorb = [&](const std::string& tag, const TightConstruction& c) {
    for (const auto& ch : c.verification.checks) v.add(tag + ": " + ch.name, ch.passed, ch.value, ch.bound);
  };

  Operator diag = Operator::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 2.0;
  absorb("diag(1,2)", construct_theorem_3_8(FrameSystem::canonical_basis(2), diag, tol));

  Rng rng(0x3808);
  const Eigen::Index n = 8;
  const Operator iso = rng.isometry(12, n);
  const FrameSystem parseval = FrameSystem::from_columns(iso.adjoint());
  absorb("normal n=8", construct_theorem_3_8(parseval, rng.normal_with_spectrum(rng.vector(n)), tol));
  return out;
}

/// Translation-modulation basis transformed by a commuting unitary.
inline ExampleRun commuting_transform(const Tolerance& tol = {}) {
  ExampleRun out{"3.10", "a unitary commuting with Theta* preserves Theta-frame bounds", {}};
  const Grid g(4, 4);
  WavePacketParams p;
  p.grid = g;
  p.psi = indicator(g, 0, 1);
  p.k_lo = 0;
  p.k_hi = 3;
  p.c_list = {0.0, 1.0, 2.0, 3.0};
  const FrameSystem f = generate_system(p);
  const Operator e1 = operator_of(g, GridOp::Modulate, 1.0);
  Verification& v = out.checks;

  const TransformCheck t = transform_frame_check(f, e1, e1, tol);
  v.add("U = E_1 commutes with Theta* = E_1*", t.commutes, t.commutator_norm, 0.0);
  v.add("original passes", t.original.passes(), t.original.alpha_opt, t.original.beta_opt);
  v.add("transformed passes", t.transformed.passes(), t.transformed.alpha_opt, t.transformed.beta_opt);
  for (const auto& ch : t.stated_bounds.checks) v.add("stated: " + ch.name, ch.passed, ch.value, ch.bound);
  for (const auto& ch : t.classical_bounds.checks) v.add("classical: " + ch.name, ch.passed, ch.value, ch.bound);
  near(v, "A2 = A1", t.transformed.alpha_opt, t.original.alpha_opt, 1e-9);
  near(v, "B2 = B1", t.transformed.beta_opt, t.original.beta_opt, 1e-9);
  return out;
}

/// Translation by 1 does not commute with M_chi[0,1) and destroys the lower bound.
inline ExampleRun noncommuting_transform(const Tolerance& tol = {}) {
  ExampleRun out{"3.12", "translation does not commute with Theta* and breaks the lower bound", {}};
  const Grid g(8, 4);
  WavePacketParams p;
  p.grid = g;
  p.psi = indicator(g, 0, 1);
  p.b = 0.0;
  p.c_list.clear();
  for (int m = 0; m < 8; ++m) p.c_list.push_back(m);
  const FrameSystem f = generate_system(p);
  const Signal window = indicator(g, 0, 1);
  const Operator theta = mult_operator(window);
  const Operator u = operator_of(g, GridOp::Translate, 1.0);
  Verification& v = out.checks;

  const ThetaFrameReport orig = check_theta_frame(f, theta, tol);
  near(v, "original alpha_opt", orig.alpha_opt, 1.0, 1e-9);
  near(v, "original beta_opt", orig.beta_opt, 1.0, 1e-9);

  Rng rng(0x312);
  double worst_identity = 0.0, worst_left = 0.0, worst_right = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Signal s(g, rng.vector(g.n()));
    const Vector x = s.coordinates();
    const double energy = frame_energy(f, x);
    worst_identity = std::max(worst_identity, std::abs(energy - (theta.adjoint() * x).squaredNorm()));
    // Theta* U f = chi_[0,1) T_1 f and U Theta* f = chi_[1,2) T_1 f
    const Signal shifted = translate(s, 1.0);
    worst_left = std::max(worst_left, (theta.adjoint() * u * x - shifted.times(window).coordinates()).norm());
    worst_right = std::max(worst_right,
                           (u * theta.adjoint() * x - shifted.times(indicator(g, 1, 2)).coordinates()).norm());
  }
  v.at_most("sum |<f,psi_m>|^2 = ||Theta* f||^2 (sampled)", worst_identity, 1e-10);
  v.at_most("Theta* U f = chi_[0,1) T_1 f", worst_left, 1e-12);
  v.at_most("U Theta* f = chi_[1,2) T_1 f", worst_right, 1e-12);

  const TransformCheck t = transform_frame_check(f, theta, u, tol);
  v.add("commutes = false", !t.commutes, t.commutator_norm, 0.0);
  v.add("commutator witness separates", (u * theta.adjoint() - theta.adjoint() * u).norm() > 0.5 &&
                                            (u * theta.adjoint() * t.commutator_witness -
                                             theta.adjoint() * u * t.commutator_witness).norm() > 0.5,
        t.commutator_norm, 0.5);

  const Vector f0 = window.coordinates();
  const double lower_energy = frame_energy(t.system, f0);
  v.at_most("sum |<chi_[0,1), U psi_m>|^2", lower_energy, 1e-12);
  near(v, "||Theta* chi_[0,1)||^2", (theta.adjoint() * f0).squaredNorm(), 1.0, 1e-12);
  v.add("transformed lower inequality fails", !t.transformed.lower_ok, t.transformed.alpha_opt, 0.0);
  return out;
}

struct FiniteSumModel {
  FiniteSumSpec spec;
  WavePacketParams params;
  Operator theta;
};

/// One window chi_[0,1) repeated with weights alpha on an orthonormal lattice of Grid(4,4).
inline FiniteSumModel finite_sum_model(std::vector<Complex> alphas) {
  const Grid g(4, 4);
  FiniteSumModel m;
  m.params.grid = g;
  m.params.psi = indicator(g, 0, 1);
  m.params.k_lo = 0;
  m.params.k_hi = 3;
  m.params.c_list = {0.0, 1.0, 2.0, 3.0};
  m.spec.alphas = std::move(alphas);
  m.spec.psis.assign(m.spec.alphas.size(), m.params.psi);
  m.theta = operator_of(g, GridOp::Modulate, 1.0);
  return m;
}

inline ExampleRun finite_sum(const Tolerance& tol = {}) {
  ExampleRun out{"4.3", "mu_opt = |sum alpha_s|^2 for a repeated window", {}};
  Verification& v = out.checks;

  const FiniteSumModel m = finite_sum_model({1.0, 2.0, -1.0});
  const FiniteSumCheck c = theorem_4_2_check(m.spec, m.params, m.theta, tol);
  v.add("components pass and Theta* hyponormal", c.preconditions_hold, 1.0, 1.0);
  for (std::size_t s = 0; s < c.mu_opt.size(); ++s) {
    near(v, "mu_opt(xi=" + std::to_string(s + 1) + ")", c.mu_opt[s], 4.0, 1e-9);
  }
  v.add("F_p passes", c.combined.passes(), c.combined.alpha_opt, c.combined.beta_opt);
  v.add("biconditional", c.biconditional_holds, 1.0, 1.0);
  for (const auto& ch : c.estimates.checks) v.add(ch.name, ch.passed, ch.value, ch.bound);

  const FiniteSumModel single = finite_sum_model({3.0});
  const FiniteSumCheck s = theorem_4_2_check(single.spec, single.params, single.theta, tol);
  near(v, "p = 1, alpha = 3: mu_opt = 9", s.mu_opt.front(), 9.0, 1e-9);

  const FiniteSumModel zero = finite_sum_model({1.0, 1.0, -2.0});
  const FiniteSumCheck z = theorem_4_2_check(zero.spec, zero.params, zero.theta, tol);
  double worst_mu = 0.0;
  for (double mu : z.mu_opt) worst_mu = std::max(worst_mu, mu);
  v.at_most("zero sum: max mu_opt", worst_mu, tol.psd_floor);
  v.add("zero sum: F_p fails", !z.combined.passes(), z.combined.alpha_opt, 0.0);
  v.add("zero sum: biconditional", z.biconditional_holds, 1.0, 1.0);
  return out;
}

}  // namespace models

inline const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"3.2", "3.3", "3.5", "3.8", "3.10", "3.12", "4.3"};
  return ids;
}

inline ExampleRun run_example(const std::string& id, const Tolerance& tol = {}) {
  using Runner = ExampleRun (*)(const Tolerance&);
  static const std::vector<std::pair<std::string, Runner>> table{
      {"3.2", models::backward_shift},       {"3.3", models::summing_operator_frame},
      {"3.5", models::indicator_system},     {"3.8", models::tight_construction},
      {"3.10", models::commuting_transform}, {"3.12", models::noncommuting_transform},
      {"4.3", models::finite_sum}};
  for (const auto& [key, run] : table)
    if (key == id) return run(tol);
  throw Error(ErrorKind::InvalidInput, "unknown example id '" + id + "'");
}

}  // namespace framekit
