#pragma once

// JSON forms used by the command-line tool:
//   Operator     {"rows":n,"cols":m,"re":[...],"im":[...]}  (row-major)
//   Signal       {"q":..,"P":..,"re":[...],"im":[...]} or {"q":..,"P":..,"indicator":[s,t]}
//   FrameSystem  {"n":..,"vectors":[{"re":[...],"im":[...]},...],"labels":[[j,k,m],...]}
// Non-finite reals are written as the strings "inf" / "-inf" / "nan".

#include "framekit/wavepacket.hpp"

#include "json.hpp"

#include <cmath>
#include <string>

namespace framekit::io {

using json = nlohmann::json;

inline json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline double read_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::nan("");
    throw Error(ErrorKind::InvalidInput, "unrecognized number string '" + s + "'");
  }
  if (!j.is_number()) throw Error(ErrorKind::InvalidInput, "expected a number");
  return j.get<double>();
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline json vector_to_json(const Vector& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return {{"re", re}, {"im", im}};
}

inline Vector vector_from_json(const json& j, Eigen::Index expected = -1) {
  const json& re = field(j, "re");
  if (!re.is_array()) throw Error(ErrorKind::InvalidInput, "'re' must be an array");
  const Eigen::Index n = static_cast<Eigen::Index>(re.size());
  const bool has_im = j.contains("im");
  if (has_im && j.at("im").size() != re.size()) throw Error(ErrorKind::InvalidInput, "'re' and 'im' lengths differ");
  if (expected >= 0 && n != expected) {
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(expected) + " entries, got " + std::to_string(n));
  }
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    v(i) = Complex(read_number(re[k]), has_im ? read_number(j.at("im")[k]) : 0.0);
  }
  return v;
}

inline json operator_to_json(const Operator& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline Operator operator_from_json(const json& j) {
  const auto rows = field(j, "rows").get<Eigen::Index>();
  const auto cols = field(j, "cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw Error(ErrorKind::InvalidInput, "negative operator dimensions");
  const Vector flat = vector_from_json(j, rows * cols);
  Operator m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = flat(i * cols + k);
  return m;
}

inline Grid grid_from_json(const json& j) { return Grid(field(j, "q").get<int>(), field(j, "P").get<int>()); }

inline json signal_to_json(const Signal& s) {
  json out = vector_to_json(s.values());
  out["q"] = s.grid().q;
  out["P"] = s.grid().P;
  return out;
}

inline Signal signal_from_json(const json& j) {
  const Grid g = grid_from_json(j);
  if (j.contains("indicator")) {
    const json& iv = j.at("indicator");
    if (!iv.is_array() || iv.size() != 2) throw Error(ErrorKind::InvalidInput, "indicator needs [s, t]");
    return indicator(g, read_number(iv[0]), read_number(iv[1]));
  }
  return Signal(g, vector_from_json(j, g.n()));
}

inline json label_to_json(const Label& l) { return json::array({l[0], l[1], l[2]}); }

inline Label label_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::InvalidInput, "labels are [j,k,m] triples");
  return {j[0].get<long long>(), j[1].get<long long>(), j[2].get<long long>()};
}

inline json system_to_json(const FrameSystem& f) {
  json vecs = json::array();
  for (const auto& v : f.vectors()) vecs.push_back(vector_to_json(v));
  json out{{"n", f.dimension()}, {"vectors", vecs}};
  if (f.labelled()) {
    json labels = json::array();
    for (const auto& l : f.labels()) labels.push_back(label_to_json(l));
    out["labels"] = labels;
  }
  return out;
}

inline FrameSystem system_from_json(const json& j) {
  const auto n = field(j, "n").get<Eigen::Index>();
  std::vector<Vector> vecs;
  for (const auto& v : field(j, "vectors")) vecs.push_back(vector_from_json(v, n));
  std::vector<Label> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) labels.push_back(label_from_json(l));
  }
  return FrameSystem(n, std::move(vecs), std::move(labels));
}

inline Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {read_number(j[0]), read_number(j[1])};
  return {read_number(field(j, "re")), j.contains("im") ? read_number(j.at("im")) : 0.0};
}

inline json complex_to_json(Complex c) { return {{"re", c.real()}, {"im", c.imag()}}; }

/// {"q","P","psi":Signal,"a_list":[..],"b":..,"k_range":[lo,hi],"c_list":[..],"dedupe":bool}
inline WavePacketParams params_from_json(const json& j) {
  WavePacketParams p;
  p.grid = grid_from_json(j);
  if (j.contains("psi")) {
    json psi = j.at("psi");
    if (!psi.contains("q")) psi["q"] = p.grid.q;
    if (!psi.contains("P")) psi["P"] = p.grid.P;
    p.psi = signal_from_json(psi);
  } else {
    p.psi = Signal::zeros(p.grid);
  }
  if (j.contains("a_list")) p.a_list = j.at("a_list").get<std::vector<long long>>();
  if (j.contains("b")) p.b = read_number(j.at("b"));
  if (j.contains("k_range")) {
    const json& k = j.at("k_range");
    if (!k.is_array() || k.size() != 2) throw Error(ErrorKind::InvalidInput, "k_range needs [lo, hi]");
    p.k_lo = k[0].get<long long>();
    p.k_hi = k[1].get<long long>();
  }
  if (j.contains("c_list")) {
    p.c_list.clear();
    for (const auto& c : j.at("c_list")) p.c_list.push_back(read_number(c));
  }
  if (j.contains("dedupe")) p.dedupe = j.at("dedupe").get<bool>();
  p.validate();
  return p;
}

inline json params_to_json(const WavePacketParams& p) {
  json c = json::array();
  for (double x : p.c_list) c.push_back(number(x));
  return {{"q", p.grid.q},     {"P", p.grid.P},   {"psi", signal_to_json(p.psi)},
          {"a_list", p.a_list}, {"b", number(p.b)}, {"k_range", json::array({p.k_lo, p.k_hi})},
          {"c_list", c},        {"dedupe", p.dedupe}};
}

/// {"cells":[[[j,k,m],...],...],"coefficients":[{"label":[j,k,m],"re":..,"im":..},...]}
inline PartitionCombination partition_from_json(const json& j) {
  PartitionCombination pc;
  for (const auto& cell : field(j, "cells")) {
    std::vector<Label> c;
    for (const auto& l : cell) c.push_back(label_from_json(l));
    pc.cells.push_back(std::move(c));
  }
  if (j.contains("coefficients")) {
    for (const auto& e : j.at("coefficients")) pc.coefficients[label_from_json(field(e, "label"))] = complex_from_json(e);
  }
  return pc;
}

/// {"alphas":[..], "psis":[Signal,..]}; psis may omit q/P when a grid is supplied.
inline FiniteSumSpec finite_sum_from_json(const json& j, const Grid& grid) {
  FiniteSumSpec spec;
  for (const auto& a : field(j, "alphas")) spec.alphas.push_back(complex_from_json(a));
  for (json s : field(j, "psis")) {
    if (!s.contains("q")) s["q"] = grid.q;
    if (!s.contains("P")) s["P"] = grid.P;
    spec.psis.push_back(signal_from_json(s));
  }
  return spec;
}

inline Tolerance tolerance_from_json(const json& j, Tolerance base = {}) {
  if (j.contains("psd_floor")) base.psd_floor = read_number(j.at("psd_floor"));
  if (j.contains("rank_rel")) base.rank_rel = read_number(j.at("rank_rel"));
  if (j.contains("verdict_rel")) base.verdict_rel = read_number(j.at("verdict_rel"));
  base.validate();
  return base;
}

inline json tolerance_to_json(const Tolerance& t) {
  return {{"psd_floor", t.psd_floor}, {"rank_rel", t.rank_rel}, {"verdict_rel", t.verdict_rel}};
}

inline json verification_to_json(const Verification& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", number(c.value)}, {"bound", number(c.bound)}});
  }
  return {{"holds", v.holds()}, {"checks", checks}};
}

inline json optional_vector(const Vector& v) { return v.size() ? vector_to_json(v) : json(nullptr); }

inline json report_to_json(const ThetaFrameReport& r) {
  return {{"alpha_opt", number(r.alpha_opt)},
          {"alpha_vacuous", r.alpha_vacuous},
          {"beta_opt", number(r.beta_opt)},
          {"lower_ok", r.lower_ok},
          {"upper_ok", r.upper_ok},
          {"passes", r.passes()},
          {"witnesses",
           {{"lower", optional_vector(r.lower_witness)},
            {"upper", optional_vector(r.upper_witness)},
            {"kernel", r.kernel_obstruction ? vector_to_json(*r.kernel_obstruction) : json(nullptr)}}}};
}

inline json bounds_to_json(const FrameBounds& b) {
  return {{"delta0", number(b.lower)},
          {"gamma0", number(b.upper)},
          {"tight", b.tight},
          {"is_frame", b.is_frame},
          {"witnesses", {{"lower", optional_vector(b.lower_witness)}, {"upper", optional_vector(b.upper_witness)}}}};
}

inline json hyponormality_to_json(const HyponormalityReport& h) {
  json out{{"commutator_min_eig", number(h.commutator_min_eig)},
           {"commutator_norm", number(h.commutator_norm)},
           {"commutator_trace", number(h.commutator_trace)},
           {"global_verdict", h.global_verdict}};
  out["margin_verdict"] = h.margin_verdict ? json(*h.margin_verdict) : json(nullptr);
  out["margin_min_eig"] = h.margin_min_eig ? number(*h.margin_min_eig) : json(nullptr);
  return out;
}

inline json douglas_to_json(const DouglasReport& d) {
  return {{"range_included", d.range_included},
          {"lambda_min", number(d.lambda_min)},
          {"factor", d.factor ? operator_to_json(*d.factor) : json(nullptr)},
          {"factor_residual", number(d.factor_residual)},
          {"consistent", d.consistent}};
}

inline json combination_to_json(const CombinationCheck& c) {
  return {{"lambda_opt", number(c.lambda_opt)},
          {"lambda_vacuous", c.lambda_vacuous},
          {"lambda_witness", optional_vector(c.lambda_witness)},
          {"base", report_to_json(c.base)},
          {"combined", report_to_json(c.combined)},
          {"theta_star_hyponormality", hyponormality_to_json(c.theta_star)},
          {"preconditions_hold", c.preconditions_hold},
          {"biconditional_holds", c.biconditional_holds},
          {"estimates", verification_to_json(c.estimates)}};
}

inline json finite_sum_to_json(const FiniteSumCheck& c) {
  json comps = json::array();
  for (const auto& r : c.components) comps.push_back(report_to_json(r));
  json mus = json::array();
  for (double m : c.mu_opt) mus.push_back(number(m));
  return {{"mu_opt", mus},
          {"best_xi", c.best_xi + 1},
          {"components", comps},
          {"combined", report_to_json(c.combined)},
          {"theta_star_hyponormality", hyponormality_to_json(c.theta_star)},
          {"preconditions_hold", c.preconditions_hold},
          {"biconditional_holds", c.biconditional_holds},
          {"estimates", verification_to_json(c.estimates)}};
}

}  // namespace framekit::io
