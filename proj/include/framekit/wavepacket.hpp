#pragma once

// Wave-packet systems {D_a T_{bk} E_c psi} on a cyclic grid, their analysis
// operator into coordinate space, and linear combinations of such systems.

#include "framekit/signal_space.hpp"
#include "framekit/theta_frame.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace framekit {

struct WavePacketParams {
  Grid grid;
  Signal psi = Signal::zeros(Grid{});
  std::vector<long long> a_list{1};  // dilation factors, each coprime to n
  double b = 1.0;                    // translation step, b*q integral
  long long k_lo = 0;                // inclusive k range
  long long k_hi = 0;
  std::vector<double> c_list{0.0};   // modulation frequencies, c*P integral
  bool dedupe = true;

  /// Effective k values: b = 0 with dedupe collapses the range to {0}.
  std::vector<long long> k_values() const {
    if (b == 0.0 && dedupe) return {0};
    std::vector<long long> ks;
    for (long long k = k_lo; k <= k_hi; ++k) ks.push_back(k);
    return ks;
  }

  void validate() const {
    if (!(psi.grid() == grid)) throw Error(ErrorKind::DimensionMismatch, "psi is not sampled on the parameter grid");
    if (a_list.empty() || c_list.empty()) throw Error(ErrorKind::InvalidInput, "a_list and c_list must be nonempty");
    if (k_hi < k_lo) throw Error(ErrorKind::InvalidInput, "empty k range");
    if (b < 0.0) throw Error(ErrorKind::InvalidInput, "translation step b must be nonnegative");
  }
};

inline constexpr double kDuplicateTol = 1e-12;

namespace detail {

struct RawElement {
  Label label;
  Vector coords;
};

/// Labels are (index into a_list, k, index into c_list), lexicographic.
inline std::vector<RawElement> raw_wave_packets(const WavePacketParams& p, const Signal& psi) {
  p.validate();
  if (!(psi.grid() == p.grid)) throw Error(ErrorKind::DimensionMismatch, "window is not on the parameter grid");
  std::vector<RawElement> out;
  const auto ks = p.k_values();
  for (std::size_t j = 0; j < p.a_list.size(); ++j) {
    for (long long k : ks) {
      for (std::size_t m = 0; m < p.c_list.size(); ++m) {
        const Signal v = dilate(translate(modulate(psi, p.c_list[m]), p.b * static_cast<double>(k)), p.a_list[j]);
        out.push_back({Label{static_cast<long long>(j), k, static_cast<long long>(m)}, v.coordinates()});
      }
    }
  }
  return out;
}

inline FrameSystem assemble(const Grid& g, std::vector<RawElement> elems, bool dedupe) {
  std::vector<Vector> vecs;
  std::vector<Label> labels;
  for (auto& e : elems) {
    if (dedupe) {
      const bool dup = std::any_of(vecs.begin(), vecs.end(), [&](const Vector& v) {
        return (v - e.coords).cwiseAbs().maxCoeff() <= kDuplicateTol;
      });
      if (dup) continue;
    }
    vecs.push_back(std::move(e.coords));
    labels.push_back(e.label);
  }
  return FrameSystem(g.n(), std::move(vecs), std::move(labels));
}

}  // namespace detail

/// D_{a_j} T_{b k} E_{c_m} psi in coordinates, (j,k,m) lexicographic.
inline FrameSystem generate_system(const WavePacketParams& p) {
  return detail::assemble(p.grid, detail::raw_wave_packets(p, p.psi), p.dedupe);
}

/// Human-readable notes about degenerate parameter choices.
inline std::vector<std::string> generation_warnings(const WavePacketParams& p) {
  std::vector<std::string> w;
  if (p.b == 0.0 && p.dedupe && p.k_hi > p.k_lo) w.emplace_back("b = 0: k range collapsed to {0}");
  if (p.b == 0.0 && !p.dedupe && p.k_hi > p.k_lo) w.emplace_back("b = 0 without dedupe: every k repeats the same vectors");
  if (p.psi.values().cwiseAbs().maxCoeff() == 0.0) w.emplace_back("degenerate: psi = 0 gives an all-zero system");
  return w;
}

/// Matrix of W f = sum <f, f_l> e_l; its adjoint sends e_l to f_l.
inline Operator analysis_into_coordinates(const FrameSystem& f) { return analysis_matrix(f); }

struct RangeCriterion {
  RelativeHyponormality relative;  // (i): lambda Theta*Theta >= Xi Xi*
  bool range_included = false;     // (ii): R(Theta) in R(Xi)
  double xi_residual = 0.0;        // max_l ||Xi e_l - f_l||
  ThetaFrameReport report;
  bool agrees = false;

  bool conditions_hold() const { return relative.holds && range_included; }
};

inline RangeCriterion theorem_3_5_check(const FrameSystem& f, const Operator& theta, const Tolerance& tol = {}) {
  RangeCriterion out;
  const Operator xi = analysis_into_coordinates(f).adjoint();
  for (std::size_t l = 0; l < f.size(); ++l) {
    out.xi_residual = std::max(out.xi_residual, (xi.col(static_cast<Eigen::Index>(l)) - f[l]).norm());
  }
  out.relative = relative_hyponormality(theta, xi, tol);
  out.range_included = range_inclusion(theta, xi, tol);
  out.report = check_theta_frame(f, theta, tol);
  out.agrees = out.conditions_hold() == out.report.passes();
  return out;
}

/// Disjoint cells of (j,k,m) labels; coefficients default to 1.
struct PartitionCombination {
  std::vector<std::vector<Label>> cells;
  std::map<Label, Complex> coefficients;

  Complex alpha(const Label& l) const {
    const auto it = coefficients.find(l);
    return it == coefficients.end() ? Complex(1.0, 0.0) : it->second;
  }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> resolve_cells(const FrameSystem& f, const PartitionCombination& pc) {
  std::vector<std::vector<std::size_t>> cells;
  std::vector<bool> seen(f.size(), false);
  for (const auto& cell : pc.cells) {
    std::vector<std::size_t> idx;
    for (const auto& l : cell) {
      const auto i = f.index_of(l);
      if (!i) {
        throw Error(ErrorKind::InvalidInput,
                    "label (" + std::to_string(l[0]) + "," + std::to_string(l[1]) + "," + std::to_string(l[2]) +
                        ") is not in the system");
      }
      if (seen[*i]) throw Error(ErrorKind::PartitionNotDisjoint, "a label appears in more than one cell");
      seen[*i] = true;
      idx.push_back(*i);
    }
    cells.push_back(std::move(idx));
  }
  if (cells.empty() || std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorKind::PartitionNotExhaustive, "cells do not cover every label of the system");
  }
  return cells;
}

}  // namespace detail

/// Phi_r = sum_{l in cell r} alpha_l f_l, labelled (r, 0, 0).
inline FrameSystem partition_combination(const FrameSystem& f, const PartitionCombination& pc) {
  const auto cells = detail::resolve_cells(f, pc);
  std::vector<Vector> out;
  std::vector<Label> labels;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    Vector v = Vector::Zero(f.dimension());
    for (std::size_t i : cells[r]) v += pc.alpha(f.label(i)) * f[i];
    out.push_back(std::move(v));
    labels.push_back({static_cast<long long>(r), 0, 0});
  }
  return FrameSystem(f.dimension(), std::move(out), std::move(labels));
}

/// T with T {<f_l, f>}_l = {<Phi_r, f>}_r.
inline Operator aggregation_matrix(const FrameSystem& f, const PartitionCombination& pc) {
  const auto cells = detail::resolve_cells(f, pc);
  Operator t = Operator::Zero(static_cast<Eigen::Index>(cells.size()), static_cast<Eigen::Index>(f.size()));
  for (std::size_t r = 0; r < cells.size(); ++r)
    for (std::size_t i : cells[r]) t(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = pc.alpha(f.label(i));
  return t;
}

struct CombinationCheck {
  double lambda_opt = 0.0;  // greatest lambda with lambda S_F <= S_Phi
  bool lambda_vacuous = false;
  Vector lambda_witness;
  ThetaFrameReport base;      // F
  ThetaFrameReport combined;  // Phi
  HyponormalityReport theta_star;
  bool preconditions_hold = false;
  bool biconditional_holds = false;
  Verification estimates;  // proof bounds, checked when Phi passes
};

/// lambda_opt > psd_floor  <=>  Phi is a Theta-frame, given F is one and Theta* is hyponormal.
/// aggregation_norm, when known, enables the upper estimate beta(Phi) <= ||T||^2 beta(F).
inline CombinationCheck theorem_4_1_check(const FrameSystem& phi, const FrameSystem& f, const Operator& theta,
                                          const Tolerance& tol = {}, std::optional<double> aggregation_norm = std::nullopt,
                                          const Subspace& verdict_subspace = std::nullopt) {
  if (phi.dimension() != f.dimension()) throw Error(ErrorKind::DimensionMismatch, "Phi and F live in different spaces");
  CombinationCheck out;
  out.base = check_theta_frame(f, theta, tol);
  out.combined = check_theta_frame(phi, theta, tol);
  out.theta_star = hyponormality(theta.adjoint(), tol, verdict_subspace);
  const bool hypo = verdict_subspace ? out.theta_star.margin_verdict.value_or(false) : out.theta_star.global_verdict;
  out.preconditions_hold = out.base.passes() && hypo;

  const LowerConstant l = lower_constant(frame_operator(phi), frame_operator(f), tol);
  out.lambda_opt = l.constant;
  out.lambda_vacuous = l.vacuous;
  out.lambda_witness = l.witness;
  out.biconditional_holds = (out.lambda_opt > tol.psd_floor) == out.combined.passes();

  if (out.combined.passes() && out.base.passes()) {
    const double proof_lambda = out.combined.alpha_opt / out.base.beta_opt;
    out.estimates.add("lambda_opt >= A'/B", out.lambda_opt >= proof_lambda * (1.0 - tol.verdict_rel), out.lambda_opt,
                      proof_lambda);
    if (aggregation_norm) {
      const double bound = (*aggregation_norm) * (*aggregation_norm) * out.base.beta_opt;
      out.estimates.at_most("beta(Phi) <= ||T||^2 B", out.combined.beta_opt, bound * (1.0 + tol.verdict_rel));
    }
  }
  return out;
}

inline CombinationCheck theorem_4_1_check(const FrameSystem& f, const PartitionCombination& pc, const Operator& theta,
                                          const Tolerance& tol = {}, const Subspace& verdict_subspace = std::nullopt) {
  const FrameSystem phi = partition_combination(f, pc);
  return theorem_4_1_check(phi, f, theta, tol, op_norm(aggregation_matrix(f, pc)), verdict_subspace);
}

/// sum_s alpha_s D T E psi_s over a shared parameter set; every alpha_s nonzero.
struct FiniteSumSpec {
  std::vector<Complex> alphas;
  std::vector<Signal> psis;

  std::size_t p() const { return alphas.size(); }

  void validate() const {
    if (alphas.empty() || alphas.size() != psis.size()) {
      throw Error(ErrorKind::InvalidInput, "need p >= 1 scalars and p windows");
    }
    for (const auto& a : alphas)
      if (a == Complex(0.0, 0.0)) throw Error(ErrorKind::InvalidInput, "every alpha_s must be nonzero");
    for (const auto& s : psis)
      if (!(s.grid() == psis.front().grid())) throw Error(ErrorKind::DimensionMismatch, "windows on different grids");
  }
};

inline FrameSystem finite_sum_system(const FiniteSumSpec& spec, const WavePacketParams& params) {
  spec.validate();
  std::vector<detail::RawElement> sum = detail::raw_wave_packets(params, spec.psis[0]);
  for (auto& e : sum) e.coords *= spec.alphas[0];
  for (std::size_t s = 1; s < spec.p(); ++s) {
    const auto part = detail::raw_wave_packets(params, spec.psis[s]);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i].coords += spec.alphas[s] * part[i].coords;
  }
  return detail::assemble(params.grid, std::move(sum), params.dedupe);
}

struct FiniteSumCheck {
  std::vector<ThetaFrameReport> components;  // one per psi_s
  std::vector<double> mu_opt;                // mu_opt(xi) for xi = 1..p (stored 0-based)
  std::size_t best_xi = 0;
  ThetaFrameReport combined;
  HyponormalityReport theta_star;
  bool preconditions_hold = false;
  bool biconditional_holds = false;
  Verification estimates;
};

inline FiniteSumCheck theorem_4_2_check(const FiniteSumSpec& spec, const WavePacketParams& params,
                                        const Operator& theta, const Tolerance& tol = {},
                                        const Subspace& verdict_subspace = std::nullopt) {
  spec.validate();
  FiniteSumCheck out;
  const FrameSystem fp = finite_sum_system(spec, params);
  const Operator s_fp = frame_operator(fp);
  out.combined = check_theta_frame(fp, theta, tol);
  out.theta_star = hyponormality(theta.adjoint(), tol, verdict_subspace);
  bool components_ok = true;
  double sum_b = 0.0;
  double max_alpha2 = 0.0;
  bool exists = false;
  for (std::size_t s = 0; s < spec.p(); ++s) {
    WavePacketParams ps = params;
    ps.psi = spec.psis[s];
    const FrameSystem fs = generate_system(ps);
    out.components.push_back(check_theta_frame(fs, theta, tol));
    components_ok = components_ok && out.components.back().passes();
    sum_b += out.components.back().beta_opt;
    max_alpha2 = std::max(max_alpha2, std::norm(spec.alphas[s]));
    const LowerConstant mu = lower_constant(s_fp, frame_operator(fs), tol);
    out.mu_opt.push_back(mu.constant);
    if (mu.constant > out.mu_opt[out.best_xi]) out.best_xi = s;
    exists = exists || mu.constant > tol.psd_floor;
  }
  const bool hypo = verdict_subspace ? out.theta_star.margin_verdict.value_or(false) : out.theta_star.global_verdict;
  out.preconditions_hold = components_ok && hypo;
  out.biconditional_holds = exists == out.combined.passes();
  if (out.combined.passes()) {
    const double bound = static_cast<double>(spec.p()) * max_alpha2 * sum_b;
    out.estimates.at_most("beta(F_p) <= p max|alpha_s|^2 sum B_s", out.combined.beta_opt, bound * (1.0 + tol.verdict_rel));
  }
  return out;
}

}  // namespace framekit
