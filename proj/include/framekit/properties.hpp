#pragma once

// Seeded randomized invariant suites. Trial t runs on Rng(trial_seed(seed, t)),
// so any failure can be replayed alone from its reported sub-seed.

#include "framekit/random.hpp"
#include "framekit/reference_models.hpp"
#include "framekit/signal_space.hpp"
#include "framekit/theta_frame.hpp"
#include "framekit/wavepacket.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace framekit {

struct TrialOutcome {
  bool ok = true;
  std::string message;  // first failed assertion
  std::map<std::string, double> metrics;

  /// Records value under name (keeping the max) and fails when it exceeds bound.
  void at_most(const std::string& name, double value, double bound) {
    auto [it, inserted] = metrics.emplace(name, value);
    if (!inserted) it->second = std::max(it->second, value);
    if (!(value <= bound)) fail(name + ": " + std::to_string(value) + " > " + std::to_string(bound));
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void fail(const std::string& what) {
    if (ok) message = what;
    ok = false;
  }
  void merge(const Verification& v, const std::string& prefix = "") {
    if (const Check* c = v.first_failure()) {
      fail(prefix + c->name + " (value " + std::to_string(c->value) + ", bound " + std::to_string(c->bound) + ")");
    }
  }
};

struct TrialFailure {
  std::uint64_t trial = 0;
  std::uint64_t sub_seed = 0;
  std::string message;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::vector<TrialFailure> failures;
  std::map<std::string, double> metrics;  // max over trials
  std::map<std::string, double> counters;

  bool passed() const { return failures.empty(); }
};

using TrialFn = std::function<TrialOutcome(Rng&, std::uint64_t trial, const Tolerance&)>;

namespace props {

inline Eigen::Index dim(Rng& r, Eigen::Index lo, Eigen::Index hi) { return static_cast<Eigen::Index>(r.integer(lo, hi)); }

/// rows x cols of rank at most r.
inline Operator low_rank(Rng& rng, Eigen::Index rows, Eigen::Index cols, Eigen::Index r) {
  return rng.matrix(rows, r) * rng.matrix(r, cols);
}

inline TrialOutcome numerics_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const Eigen::Index rows = dim(rng, 1, 12), cols = dim(rng, 1, 12);
  const Operator m = rng.coin(0.3) ? low_rank(rng, rows, cols, dim(rng, 1, std::min(rows, cols)))
                                   : rng.matrix(rows, cols);
  const Operator p = pinv(m, tol);
  const double nm = op_norm(m), np = op_norm(p);
  const double scale = std::max(nm, np);
  o.at_most("mp1 ||MPM - M||/scale", op_norm(m * p * m - m) / scale, 1e-8);
  o.at_most("mp2 ||PMP - P||/scale", op_norm(p * m * p - p) / scale, 1e-8);
  const Operator mp = m * p, pm = p * m;
  o.at_most("mp3 ||(MP)* - MP||", op_norm(mp.adjoint() - mp), 1e-8 * std::max(1.0, nm));
  o.at_most("mp4 ||(PM)* - PM||", op_norm(pm.adjoint() - pm), 1e-8 * std::max(1.0, nm));
  o.at_most("pinv(pinv(M)) - M", op_norm(pinv(p, tol) - m) / std::max(nm, 1e-300), 1e-7);

  const Eigen::Index n = dim(rng, 1, 12);
  const Operator h = rng.hermitian(n);
  const HermEig e = herm_eig(h, tol);
  const double nh = std::max(op_norm(h), 1e-300);
  o.at_most("eig reconstruction", op_norm(e.vectors * e.values.asDiagonal() * e.vectors.adjoint() - h) / nh, 1e-9);
  o.at_most("eig orthonormality", op_norm(e.vectors.adjoint() * e.vectors - Operator::Identity(n, n)), 1e-10);
  for (Eigen::Index i = 0; i + 1 < n; ++i) o.expect(e.values(i) <= e.values(i + 1), "eigenvalues not ascending");

  const Svd d = svd(m);
  o.at_most("svd reconstruction",
            op_norm(d.left * d.singulars.asDiagonal() * d.right.adjoint() - m) / std::max(nm, 1e-300), 1e-10);

  const Operator gram = m.adjoint() * m;
  const PsdVerdict g = is_psd(gram, tol);
  o.expect(g.verdict, "Gram matrix judged not PSD (min eig " + std::to_string(g.min_eigenvalue) + ")");
  o.expect(is_psd(Operator(-gram - Operator::Identity(cols, cols)), tol).verdict == false,
           "negative definite matrix judged PSD");
  return o;
}

inline TrialOutcome douglas_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const Eigen::Index m = dim(rng, 2, 24);
  const Eigen::Index k2 = dim(rng, 1, 24), k1 = dim(rng, 1, 24);
  const Eigen::Index r = dim(rng, 1, std::min(m - 1, k2));
  const Operator t2 = low_rank(rng, m, k2, r);

  // inclusion branch: T1 = T2 S0
  const Operator s0 = rng.matrix(k2, k1);
  const Operator t1 = t2 * s0;
  const DouglasReport in = douglas_check(t1, t2, tol);
  o.expect(in.range_included && in.majorized() && in.factor.has_value(), "inclusion branch: not all three true");
  o.expect(in.consistent, "inclusion branch: tri-equivalence disagrees");
  if (in.factor) {
    const double nt1 = std::max(op_norm(t1), 1e-300);
    o.at_most("factor residual / ||T1||", op_norm(t2 * (*in.factor) - t1) / nt1, 1e-8);
    o.at_most("||T2 S - T2 S0|| / ||T1||", op_norm(t2 * (*in.factor) - t2 * s0) / nt1, 1e-8);
  }

  // exclusion branch: generic T1 leaves the rank-deficient range of T2
  const Operator x1 = rng.matrix(m, k1);
  const DouglasReport ex = douglas_check(x1, t2, tol);
  o.expect(!ex.range_included && !ex.majorized() && !ex.factor.has_value(), "exclusion branch: not all three false");
  o.expect(ex.consistent, "exclusion branch: tri-equivalence disagrees");
  return o;
}

inline void djordjevic_case(TrialOutcome& o, const Operator& a, const Tolerance& tol, const std::string& tag) {
  const DjordjevicVerdict d = djordjevic_hyponormal(a, tol);
  const HyponormalityReport h = hyponormality(a, tol);
  o.expect(d.verdict == h.global_verdict, tag + ": Djordjevic verdict disagrees with commutator verdict");
  const double nt2 = std::max(1.0, std::pow(op_norm(a), 2));
  const double floor = tol.psd_floor * nt2;
  const bool d_neg = d.witness_min_eig < -floor, h_neg = h.commutator_min_eig < -floor;
  o.expect(d_neg == h_neg, tag + ": witness eigenvalue signs disagree");
  o.at_most("|trace of self-commutator| / ||T||^2", std::abs(h.commutator_trace) / nt2, 1e-10);
  if (h.global_verdict) o.at_most("hyponormal => ||K|| / ||T||^2", h.commutator_norm / nt2, 10 * tol.psd_floor);
}

/// Every tenth trial also builds a normal matrix.
inline TrialOutcome djordjevic_trial(Rng& rng, std::uint64_t trial, const Tolerance& tol) {
  TrialOutcome o;
  const Eigen::Index n = dim(rng, 1, 12);
  djordjevic_case(o, rng.matrix(n, n), tol, "random");
  if (trial % 10 == 9) {
    const Eigen::Index k = dim(rng, 1, 12);
    const Operator normal = rng.normal_with_spectrum(rng.vector(k));
    djordjevic_case(o, normal, tol, "normal");
    o.expect(djordjevic_hyponormal(normal, tol).verdict, "normal matrix judged not hyponormal");
  }
  return o;
}

inline TrialOutcome theta_selfcheck_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const Eigen::Index n = dim(rng, 2, 16);
  const int mode = static_cast<int>(rng.integer(0, 3));
  Operator theta;
  FrameSystem f = FrameSystem::canonical_basis(n);
  switch (mode) {
    case 0:  // generic invertible Theta, redundant frame
      theta = rng.matrix(n, n);
      f = FrameSystem::from_columns(rng.matrix(n, dim(rng, n, 3 * n)));
      break;
    case 1: {  // diagonal Theta with zeros, frame living in its range
      Vector d = rng.vector(n);
      for (Eigen::Index i = 1; i < n; ++i)
        if (rng.coin(0.3)) d(i) = 0.0;
      theta = d.asDiagonal();
      f = FrameSystem::from_columns(theta * rng.matrix(n, dim(rng, n, 2 * n)));
      break;
    }
    case 2:  // undercomplete system
      theta = rng.matrix(n, n);
      f = FrameSystem::from_columns(rng.matrix(n, dim(rng, 1, n - 1)));
      break;
    default:  // low-rank Theta against a full frame
      theta = low_rank(rng, n, n, dim(rng, 1, n - 1));
      f = FrameSystem::from_columns(rng.matrix(n, dim(rng, n, 2 * n)));
      break;
  }
  const ThetaFrameReport r = check_theta_frame(f, theta, tol);
  const Operator s = frame_operator(f);
  const Operator c = theta * theta.adjoint(), dd = theta.adjoint() * theta;
  const double sn = std::max(op_norm(s), 1e-300);

  if (r.passes()) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vector x = rng.vector(n);
      const double e = quad(s, x);
      const double lo = r.alpha_opt * quad(c, x), hi = r.beta_opt * quad(dd, x);
      worst = std::max({worst, (lo - e) / std::max(e, 1e-300), (e - hi) / std::max(hi, 1e-300)});
    }
    o.at_most("sandwich violation (relative)", worst, tol.verdict_rel);
    // sharpness: the witnesses attain the optima
    const double lw = r.lower_witness.size() ? quad(c, r.lower_witness) : 0.0;
    if (!r.alpha_vacuous && lw > tol.psd_floor * op_norm(c)) {
      o.at_most("lower witness quotient vs alpha", std::abs(quad(s, r.lower_witness) / lw - r.alpha_opt) /
                                                       r.alpha_opt, 1e-6);
    }
    if (r.upper_witness.size() && r.beta_opt > 0.0) {
      const double uw = quad(dd, r.upper_witness);
      o.at_most("upper witness quotient vs beta",
                std::abs(quad(s, r.upper_witness) / uw - r.beta_opt) / r.beta_opt, 1e-6);
    }
    const KFrameBounds k = check_k_frame(f, theta, tol);
    const KBoundsFromTheta kb = theta_to_k_bounds(r, theta);
    o.expect(k.a_opt >= kb.a * (1.0 - tol.verdict_rel), "K-frame lower bound below alpha");
    o.expect(k.b_opt <= kb.b * (1.0 + tol.verdict_rel), "K-frame upper bound above beta ||Theta||^2");
  } else if (!r.upper_ok) {
    o.expect(r.kernel_obstruction.has_value() || std::isinf(r.beta_opt), "upper failure without obstruction");
    if (r.kernel_obstruction) {
      const Vector& w = *r.kernel_obstruction;
      o.expect(quad(s, w) > quad(dd, w) * 1e3 || quad(dd, w) <= tol.psd_floor * std::max(1.0, op_norm(dd)),
               "kernel obstruction does not separate S from Theta*Theta");
    }
  } else {
    o.expect(r.alpha_opt <= tol.psd_floor, "lower failure with positive alpha");
    o.at_most("lower-failure witness energy / ||S||", quad(s, r.lower_witness) / sn, 1e-8);
  }

  // Theta = I specialization
  const ThetaFrameReport id = check_theta_frame(f, Operator::Identity(n, n), tol);
  const FrameBounds b = optimal_bounds(f, tol);
  if (b.is_frame) {
    o.at_most("alpha(I) vs delta_0", std::abs(id.alpha_opt - b.lower) / sn, 1e-10);
    o.at_most("beta(I) vs gamma_0", std::abs(id.beta_opt - b.upper) / sn, 1e-10);
  }
  return o;
}

inline Operator random_normal(Rng& rng, Eigen::Index n) { return rng.normal_with_spectrum(rng.vector(n)); }

inline TrialOutcome tight_construction_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const Eigen::Index n = dim(rng, 1, 32);
  const Eigen::Index count = dim(rng, n, 2 * n);
  const FrameSystem parseval = FrameSystem::from_columns(rng.isometry(count, n).adjoint());
  const Operator theta = random_normal(rng, n);
  const TightConstruction c = construct_theorem_3_8(parseval, theta, tol, std::nullopt, rng.engine()());
  o.merge(c.verification);
  o.expect(c.tightness.is_theta_tight, "(Theta,1)-tight check failed");
  if (c.tightness.is_theta_tight) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.vector(n);
      const double star = (theta.adjoint() * x).norm(), plain = (theta * x).norm();
      worst = std::max(worst, (star - plain) / std::max(plain, 1e-300));
    }
    o.at_most("converse ||Theta* f|| - ||Theta f|| (relative)", worst, tol.verdict_rel);
  }
  return o;
}

/// Commuting pair: Theta and U share an eigenbasis; |eig U| in [0.5, 2].
struct CommutingPair {
  Operator theta;
  Operator u;
  FrameSystem f;
};

inline CommutingPair commuting_pair(Rng& rng) {
  const Eigen::Index n = dim(rng, 2, 16);
  const Operator q = rng.unitary(n);
  Vector th(n), uv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    th(i) = rng.complex_normal();
    uv(i) = std::polar(rng.uniform(0.5, 2.0), rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return {q * th.asDiagonal() * q.adjoint(), q * uv.asDiagonal() * q.adjoint(),
          FrameSystem::from_columns(rng.matrix(n, dim(rng, n, 2 * n)))};
}

/// Stated transform bounds: A1||U||^-2 <= A2 <= A1||U^-1||^2 and B2 <= B1||U||^2.
inline TrialOutcome transform_stated_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const CommutingPair p = commuting_pair(rng);
  const TransformCheck t = transform_frame_check(p.f, p.theta, p.u, tol);
  o.expect(t.commutes, "constructed pair does not commute");
  o.expect(t.original.passes() && t.transformed.passes(), "original or transformed system is not a Theta-frame");
  for (const auto& c : t.stated_bounds.checks) {
    if (c.name.rfind("B1 <= lambda", 0) == 0) continue;
    o.metrics[c.name + " failures"] += c.passed ? 0.0 : 1.0;
    if (!c.passed) o.fail(c.name + " (value " + std::to_string(c.value) + ", bound " + std::to_string(c.bound) + ")");
  }
  return o;
}

/// Classical bounds A1||U^-1||^-2 <= A2 <= A1||U||^2, B1||U^-1||^-2 <= B2 <= B1||U||^2.
inline TrialOutcome transform_classical_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const CommutingPair p = commuting_pair(rng);
  const TransformCheck t = transform_frame_check(p.f, p.theta, p.u, tol);
  o.expect(t.commutes, "constructed pair does not commute");
  o.merge(t.classical_bounds);
  return o;
}

/// Window and Theta families for the wave-packet biconditional.
inline TrialOutcome range_criterion_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  static const std::vector<std::pair<int, int>> grids{{2, 2}, {2, 4}, {3, 3}, {4, 4}, {2, 8}, {4, 8}, {3, 5}, {8, 8}};
  const auto [q, period] = grids[static_cast<std::size_t>(rng.integer(0, grids.size() - 1))];
  const Grid g(q, period);
  const Eigen::Index n = g.n();
  const int mode = static_cast<int>(rng.integer(0, 3));

  WavePacketParams p;
  p.grid = g;
  p.psi = Signal(g, rng.vector(n));
  p.k_lo = 0;
  p.k_hi = period - 1;
  p.c_list.clear();
  for (int m = 0; m < q; ++m) p.c_list.push_back(m);
  Operator theta;

  switch (mode) {
    case 0:
      theta = rng.unitary(n);
      break;
    case 1: {
      Vector d = rng.vector(n);
      for (Eigen::Index i = 0; i < n; ++i)
        if (rng.coin(0.25)) d(i) = 0.0;
      theta = d.asDiagonal();
      break;
    }
    case 2: {  // window supported on [0,1), b = 0, Theta localized on the window
      Vector w = Vector::Zero(n), d = Vector::Zero(n);
      for (Eigen::Index i = 0; i < q; ++i) {
        w(i) = rng.complex_normal();
        d(i) = rng.complex_normal();
      }
      p.psi = Signal(g, w);
      p.b = 0.0;
      theta = d.asDiagonal();
      break;
    }
    default: {  // sparse lattice
      std::vector<long long> coprime;
      for (long long a = 1; a < n; ++a)
        if (std::gcd(a, static_cast<long long>(n)) == 1) coprime.push_back(a);
      p.a_list = {coprime[static_cast<std::size_t>(rng.integer(0, coprime.size() - 1))]};
      p.b = static_cast<double>(rng.integer(1, 2));
      p.k_lo = 0;
      p.k_hi = rng.integer(0, period - 1);
      p.c_list = {0.0};
      for (int m = 1; m < q; ++m)
        if (rng.coin()) p.c_list.push_back(m);
      theta = rng.coin() ? rng.unitary(n) : Operator(rng.vector(n).asDiagonal());
      break;
    }
  }
  const FrameSystem f = generate_system(p);
  const RangeCriterion r = theorem_3_5_check(f, theta, tol);
  o.at_most("max ||Xi e_l - f_l||", r.xi_residual, 1e-12);
  o.expect(r.agrees, std::string("conditions ") + (r.conditions_hold() ? "hold" : "fail") + " but report " +
                         (r.report.passes() ? "passes" : "fails"));
  o.metrics[r.report.passes() ? "passing instances" : "failing instances"] = 1.0;
  return o;
}

inline TrialOutcome partition_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const Eigen::Index n = dim(rng, 2, 12);
  const Eigen::Index count = dim(rng, n, 3 * n);
  const Operator theta = rng.unitary(n);
  const FrameSystem f = FrameSystem::from_columns(rng.matrix(n, count));
  const auto cells_n = static_cast<std::size_t>(rng.integer(1, count));

  std::vector<std::size_t> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng.engine());
  PartitionCombination pc;
  pc.cells.resize(cells_n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t cell = i < cells_n ? i : static_cast<std::size_t>(rng.integer(0, cells_n - 1));
    pc.cells[cell].push_back(f.label(order[i]));
    pc.coefficients[f.label(order[i])] = rng.coin(0.2) ? Complex(0.0, 0.0) : rng.complex_normal();
  }
  const CombinationCheck c = theorem_4_1_check(f, pc, theta, tol);
  o.expect(c.preconditions_hold, "F is not a Theta-frame or Theta* not hyponormal");
  o.expect(c.biconditional_holds, "lambda_opt > 0 disagrees with Phi verdict (lambda_opt " +
                                      std::to_string(c.lambda_opt) + ")");
  o.merge(c.estimates);
  return o;
}

inline TrialOutcome finite_sum_trial(Rng& rng, std::uint64_t, const Tolerance& tol) {
  TrialOutcome o;
  const Grid g(static_cast<int>(rng.integer(2, 4)), static_cast<int>(rng.integer(1, 4)));
  WavePacketParams params;
  params.grid = g;
  params.k_lo = 0;
  params.k_hi = g.P - 1;
  params.c_list.clear();
  for (int m = 0; m < g.q; ++m) params.c_list.push_back(m);

  const auto p = static_cast<std::size_t>(rng.integer(1, 4));
  const int mode = static_cast<int>(rng.integer(0, 2));
  FiniteSumSpec spec;
  const Signal shared(g, rng.vector(g.n()));
  for (std::size_t s = 0; s < p; ++s) {
    spec.alphas.push_back(rng.complex_normal());
    spec.psis.push_back(mode == 0 ? Signal(g, rng.vector(g.n())) : shared);
  }
  if (mode == 2 && p >= 2) {  // zero-sum weights
    Complex rest(0.0, 0.0);
    for (std::size_t s = 0; s + 1 < p; ++s) rest += spec.alphas[s];
    if (std::abs(rest) > 1e-3) spec.alphas.back() = -rest;
  }
  params.psi = spec.psis.front();
  const FiniteSumCheck c = theorem_4_2_check(spec, params, rng.unitary(g.n()), tol);
  o.expect(c.preconditions_hold, "a component is not a Theta-frame");
  o.expect(c.biconditional_holds, "exists mu > 0 disagrees with F_p verdict");
  o.merge(c.estimates);
  return o;
}

}  // namespace props

inline const std::vector<std::pair<std::string, TrialFn>>& property_suites() {
  static const std::vector<std::pair<std::string, TrialFn>> suites{
      {"numerics", props::numerics_trial},
      {"douglas", props::douglas_trial},
      {"djordjevic", props::djordjevic_trial},
      {"theta-frame-selfcheck", props::theta_selfcheck_trial},
      {"range-criterion", props::range_criterion_trial},
      {"tight-construction", props::tight_construction_trial},
      {"transform-stated", props::transform_stated_trial},
      {"transform-classical", props::transform_classical_trial},
      {"partition-combination", props::partition_trial},
      {"finite-sum", props::finite_sum_trial},
  };
  return suites;
}

inline TrialOutcome run_trial(const TrialFn& fn, std::uint64_t sub_seed, std::uint64_t trial, const Tolerance& tol) {
  Rng rng(sub_seed);
  try {
    return fn(rng, trial, tol);
  } catch (const std::exception& e) {
    TrialOutcome o;
    o.fail(std::string("exception: ") + e.what());
    return o;
  }
}

/// Runs trials 0..count-1 (or only `only_trial`) of the named suite.
inline SuiteResult run_suite(const std::string& name, std::uint64_t trials, std::uint64_t seed,
                             const Tolerance& tol = {}, std::optional<std::uint64_t> only_trial = std::nullopt) {
  const TrialFn* fn = nullptr;
  for (const auto& [key, f] : property_suites())
    if (key == name) fn = &f;
  if (!fn) throw Error(ErrorKind::InvalidInput, "unknown suite '" + name + "'");

  SuiteResult out;
  out.suite = name;
  out.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (only_trial && t != *only_trial) continue;
    const std::uint64_t sub = trial_seed(seed, t);
    const TrialOutcome o = run_trial(*fn, sub, t, tol);
    ++out.trials;
    for (const auto& [k, v] : o.metrics) {
      if (k.find("instances") != std::string::npos || k.find("failures") != std::string::npos) {
        out.counters[k] += v;
      } else {
        auto [it, inserted] = out.metrics.emplace(k, v);
        if (!inserted) it->second = std::max(it->second, v);
      }
    }
    if (!o.ok) out.failures.push_back({t, sub, o.message});
  }
  return out;
}

}  // namespace framekit
