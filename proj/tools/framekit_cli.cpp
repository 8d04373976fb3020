// framekit: command-line front end. Every run prints exactly one JSON
// report on stdout; diagnostics go to stderr.
//
// Exit codes: 0 pass, 1 assertion failure (negative verdict), 2 input error.

#include "framekit/json_io.hpp"
#include "framekit/properties.hpp"
#include "framekit/reference_models.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using framekit::io::json;
namespace fk = framekit;
namespace io = framekit::io;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Operator file: plain operator JSON, or a named model
///   {"kind":"identity"|"backward_shift"|"summing","n":..}
///   {"kind":"translate"|"modulate"|"dilate","q":..,"P":..,"param":..}
///   {"kind":"multiply","q":..,"P":..,"signal":{..}}
fk::Operator operator_from(const json& j) {
  if (!j.contains("kind")) return io::operator_from_json(j);
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "identity") {
    const auto n = io::field(j, "n").get<Eigen::Index>();
    return fk::Operator::Identity(n, n);
  }
  if (kind == "backward_shift" || kind == "forward_shift" || kind == "summing") {
    const fk::TruncatedSequenceSpace space(io::field(j, "n").get<Eigen::Index>(), 0);
    if (kind == "summing") return fk::summing_operator(space);
    const auto pair = fk::shift_operators(space);
    return kind == "backward_shift" ? pair.backward : pair.forward;
  }
  const fk::Grid g = io::grid_from_json(j);
  if (kind == "multiply") {
    json s = io::field(j, "signal");
    s["q"] = g.q;
    s["P"] = g.P;
    return fk::mult_operator(io::signal_from_json(s));
  }
  const double param = io::read_number(io::field(j, "param"));
  if (kind == "translate") return fk::operator_of(g, fk::GridOp::Translate, param);
  if (kind == "modulate") return fk::operator_of(g, fk::GridOp::Modulate, param);
  if (kind == "dilate") return fk::operator_of(g, fk::GridOp::Dilate, param);
  throw fk::Error(fk::ErrorKind::InvalidInput, "unknown operator kind '" + kind + "'");
}

struct Options {
  double tol_psd = fk::Tolerance{}.psd_floor;
  double tol_rank = fk::Tolerance{}.rank_rel;
  double tol_verdict = fk::Tolerance{}.verdict_rel;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;
  std::optional<std::uint64_t> replay_trial;
  std::string out;

  fk::Tolerance tolerance() const {
    fk::Tolerance t{tol_psd, tol_rank, tol_verdict};
    t.validate();
    return t;
  }
};

/// Collects the digest inputs and the verdict of one command.
struct Run {
  std::string command;
  std::vector<std::string> digest_parts;
  json verdicts = json::object();
  json output;  // optional payload written by --out
  bool passed = true;
  std::optional<std::uint64_t> seed;

  json input(const std::string& path) {
    json j = load_json(path);
    digest_parts.push_back(j.dump());
    return j;
  }
};

void run_gen(Run& r, const std::string& path) {
  const fk::WavePacketParams p = io::params_from_json(r.input(path));
  const fk::FrameSystem f = fk::generate_system(p);
  const auto warnings = fk::generation_warnings(p);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  r.output = io::system_to_json(f);
  r.verdicts = {{"vectors", f.size()}, {"dimension", f.dimension()}, {"warnings", warnings}, {"system", r.output}};
}

void run_check_frame(Run& r, const std::string& path, const fk::Tolerance& tol) {
  const fk::FrameSystem f = io::system_from_json(r.input(path));
  const fk::FrameBounds b = fk::optimal_bounds(f, tol);
  r.verdicts = io::bounds_to_json(b);
  r.passed = b.is_frame;
}

fk::Subspace subspace_from(Run& r, const std::string& path) {
  if (path.empty()) return std::nullopt;
  return operator_from(r.input(path));
}

void run_check_theta(Run& r, const std::string& sys, const std::string& theta, const std::string& sub,
                     const fk::Tolerance& tol) {
  const fk::FrameSystem f = io::system_from_json(r.input(sys));
  const fk::Operator t = operator_from(r.input(theta));
  const fk::ThetaFrameReport rep = fk::check_theta_frame(f, t, tol, subspace_from(r, sub));
  r.verdicts = io::report_to_json(rep);
  if (rep.passes()) {
    const fk::KBoundsFromTheta k = fk::theta_to_k_bounds(rep, t);
    r.verdicts["k_frame_bounds"] = {{"a", io::number(k.a)}, {"b", io::number(k.b)}};
  }
  r.passed = rep.passes();
}

void run_check_k(Run& r, const std::string& sys, const std::string& k, const std::string& sub,
                 const fk::Tolerance& tol) {
  const fk::FrameSystem f = io::system_from_json(r.input(sys));
  const fk::KFrameBounds b = fk::check_k_frame(f, operator_from(r.input(k)), tol, subspace_from(r, sub));
  r.verdicts = {{"a_opt", io::number(b.a_opt)},
                {"b_opt", io::number(b.b_opt)},
                {"degenerate", b.degenerate},
                {"lower_witness", io::optional_vector(b.lower_witness)}};
  r.passed = b.a_opt > tol.psd_floor;
}

void run_check_hypo(Run& r, const std::string& path, const std::string& sub, const fk::Tolerance& tol) {
  const fk::Operator t = operator_from(r.input(path));
  const fk::Subspace s = subspace_from(r, sub);
  const fk::HyponormalityReport h = fk::hyponormality(t, tol, s);
  r.verdicts = io::hyponormality_to_json(h);
  if (t.rows() == t.cols()) {
    const fk::DjordjevicVerdict d = fk::djordjevic_hyponormal(t, tol);
    r.verdicts["djordjevic"] = {{"verdict", d.verdict}, {"witness_min_eig", io::number(d.witness_min_eig)}};
  }
  r.passed = s ? h.margin_verdict.value_or(false) : h.global_verdict;
}

void run_douglas(Run& r, const std::string& a, const std::string& b, const fk::Tolerance& tol) {
  const fk::DouglasReport d = fk::douglas_check(operator_from(r.input(a)), operator_from(r.input(b)), tol);
  r.verdicts = io::douglas_to_json(d);
  r.passed = d.consistent;
}

void run_pinv(Run& r, const std::string& path, const fk::Tolerance& tol) {
  const fk::Operator m = operator_from(r.input(path));
  const fk::Operator p = fk::pinv(m, tol);
  const double scale = std::max({fk::op_norm(m), fk::op_norm(p), 1e-300});
  const fk::Operator mp = m * p, pm = p * m;
  const double res[4] = {fk::op_norm(m * p * m - m) / scale, fk::op_norm(p * m * p - p) / scale,
                         fk::op_norm(mp.adjoint() - mp), fk::op_norm(pm.adjoint() - pm)};
  r.output = io::operator_to_json(p);
  r.verdicts = {{"pinv", r.output},
                {"rank", fk::numerical_rank(m, tol)},
                {"penrose_residuals", {res[0], res[1], res[2], res[3]}}};
  for (double x : res) r.passed = r.passed && x <= 1e-8;
}

/// {"theta":Op, "system":FrameSystem, "partition":{...}} or
/// {"theta":Op, "params":WavePacketParams, "finite_sum":{...}}; optional "subspace".
void run_check_comb(Run& r, const std::string& path, const fk::Tolerance& tol) {
  const json spec = r.input(path);
  const fk::Operator theta = operator_from(io::field(spec, "theta"));
  const fk::Subspace sub =
      spec.contains("subspace") ? fk::Subspace(operator_from(spec.at("subspace"))) : std::nullopt;
  if (spec.contains("partition")) {
    const fk::FrameSystem f = io::system_from_json(io::field(spec, "system"));
    const fk::PartitionCombination pc = io::partition_from_json(spec.at("partition"));
    const fk::CombinationCheck c = fk::theorem_4_1_check(f, pc, theta, tol, sub);
    r.verdicts = io::combination_to_json(c);
    r.output = io::system_to_json(fk::partition_combination(f, pc));
    r.passed = c.biconditional_holds && c.estimates.holds();
    if (!c.preconditions_hold) std::cerr << "note: preconditions do not hold; biconditional is not guaranteed\n";
  } else if (spec.contains("finite_sum")) {
    const fk::WavePacketParams params = io::params_from_json(io::field(spec, "params"));
    const fk::FiniteSumSpec fs = io::finite_sum_from_json(spec.at("finite_sum"), params.grid);
    const fk::FiniteSumCheck c = fk::theorem_4_2_check(fs, params, theta, tol, sub);
    r.verdicts = io::finite_sum_to_json(c);
    r.output = io::system_to_json(fk::finite_sum_system(fs, params));
    r.passed = c.biconditional_holds && c.estimates.holds();
    if (!c.preconditions_hold) std::cerr << "note: preconditions do not hold; biconditional is not guaranteed\n";
  } else {
    throw InputError("combination spec needs a 'partition' or a 'finite_sum' entry");
  }
}

json example_json(const fk::ExampleRun& e) {
  json out{{"id", e.id}, {"title", e.title}};
  out.update(io::verification_to_json(e.checks));
  return out;
}

void run_verify_example(Run& r, const std::string& id, const fk::Tolerance& tol) {
  r.digest_parts.push_back(id);
  std::vector<std::string> ids;
  if (id == "all") {
    ids = fk::example_ids();
  } else {
    ids = {id};
  }
  json runs = json::array();
  for (const auto& one : ids) {
    const fk::ExampleRun e = fk::run_example(one, tol);
    runs.push_back(example_json(e));
    if (const fk::Check* c = e.checks.first_failure()) {
      std::cerr << "example " << one << ": assertion '" << c->name << "' failed (value " << c->value << ", bound "
                << c->bound << ")\n";
      r.passed = false;
    }
  }
  r.verdicts = id == "all" ? json{{"examples", runs}} : runs.front();
}

void run_prop(Run& r, const std::string& suite, const Options& o, const fk::Tolerance& tol) {
  r.digest_parts.push_back(suite);
  r.digest_parts.push_back(std::to_string(o.trials));
  r.seed = o.seed;
  const fk::SuiteResult s = fk::run_suite(suite, o.trials, o.seed, tol, o.replay_trial);
  json failures = json::array();
  for (const auto& f : s.failures) {
    failures.push_back({{"trial", f.trial}, {"sub_seed", f.sub_seed}, {"message", f.message}});
    std::cerr << "trial " << f.trial << " (sub-seed " << f.sub_seed << "): " << f.message << "\n";
  }
  json metrics = json::object();
  for (const auto& [k, v] : s.metrics) metrics[k] = io::number(v);
  r.verdicts = {{"suite", s.suite},        {"trials", s.trials},       {"passed", s.passed()},
                {"failures", failures},    {"failure_count", s.failures.size()},
                {"max_metrics", metrics},  {"counters", s.counters}};
  r.passed = s.passed();
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FRAMEKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable FRAMEKIT_SEED='" << env << "'\n";
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framekit: Theta-frame, hyponormality and wave-packet checks on finite models"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  opt.seed = default_seed();
  app.add_option("--tol-psd", opt.tol_psd, "PSD floor for verdicts");
  app.add_option("--tol-rank", opt.tol_rank, "relative rank cutoff");
  app.add_option("--tol-verdict", opt.tol_verdict, "relative slack for verdict comparisons");
  app.add_option("--seed", opt.seed, "seed for randomized suites (default $FRAMEKIT_SEED or 1)");
  app.add_option("--trials", opt.trials, "trial count for prop-run");
  app.add_option("--out", opt.out, "also write the primary output to this file");

  std::string a1, a2, sub, example_id, suite;
  auto* gen = app.add_subcommand("gen", "generate a wave-packet system from parameters");
  gen->add_option("params", a1, "WavePacketParams JSON")->required();
  auto* frame = app.add_subcommand("check-frame", "optimal classical frame bounds");
  frame->add_option("system", a1, "FrameSystem JSON")->required();
  auto* theta = app.add_subcommand("check-theta", "Theta-frame check");
  theta->add_option("system", a1, "FrameSystem JSON")->required();
  theta->add_option("theta", a2, "operator JSON")->required();
  theta->add_option("--subspace", sub, "orthonormal columns of a test subspace");
  auto* kf = app.add_subcommand("check-k", "K-frame check");
  kf->add_option("system", a1, "FrameSystem JSON")->required();
  kf->add_option("k", a2, "operator JSON")->required();
  kf->add_option("--subspace", sub, "orthonormal columns of a test subspace");
  auto* hypo = app.add_subcommand("check-hypo", "hyponormality of an operator");
  hypo->add_option("operator", a1, "operator JSON")->required();
  hypo->add_option("--subspace", sub, "orthonormal columns of a test subspace");
  auto* doug = app.add_subcommand("douglas", "range inclusion / majorization / factorization");
  doug->add_option("t1", a1, "operator JSON")->required();
  doug->add_option("t2", a2, "operator JSON")->required();
  auto* pv = app.add_subcommand("pinv", "Moore-Penrose pseudoinverse");
  pv->add_option("operator", a1, "operator JSON")->required();
  auto* comb = app.add_subcommand("check-comb", "partition or finite-sum combination check");
  comb->add_option("spec", a1, "combination spec JSON")->required();
  auto* ex = app.add_subcommand("verify-example", "run a pinned reference model");
  ex->add_option("id", example_id, "3.2, 3.3, 3.5, 3.8, 3.10, 3.12, 4.3 or all")->required();
  auto* prop = app.add_subcommand("prop-run", "run a seeded randomized invariant suite");
  prop->add_option("suite", suite, "suite name")->required();
  prop->add_option("--trial", opt.replay_trial, "replay a single trial index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cout << json{{"command", ""}, {"error", {{"kind", "Usage"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Run run;
  run.command = app.get_subcommands().front()->get_name();
  int code = kExitPass;
  json report;
  try {
    const fk::Tolerance tol = opt.tolerance();
    run.digest_parts.push_back(run.command);
    run.digest_parts.push_back(io::tolerance_to_json(tol).dump());
    if (gen->parsed()) run_gen(run, a1);
    else if (frame->parsed()) run_check_frame(run, a1, tol);
    else if (theta->parsed()) run_check_theta(run, a1, a2, sub, tol);
    else if (kf->parsed()) run_check_k(run, a1, a2, sub, tol);
    else if (hypo->parsed()) run_check_hypo(run, a1, sub, tol);
    else if (doug->parsed()) run_douglas(run, a1, a2, tol);
    else if (pv->parsed()) run_pinv(run, a1, tol);
    else if (comb->parsed()) run_check_comb(run, a1, tol);
    else if (ex->parsed()) run_verify_example(run, example_id, tol);
    else if (prop->parsed()) run_prop(run, suite, opt, tol);
    code = run.passed ? kExitPass : kExitFail;
    report["verdicts"] = run.verdicts;
    report["passed"] = run.passed;
  } catch (const fk::Error& e) {
    std::cerr << "error: " << fk::to_string(e.kind()) << ": " << e.what() << "\n";
    report["error"] = {{"kind", fk::to_string(e.kind())}, {"message", e.what()}};
    code = kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report["error"] = {{"kind", "InvalidInput"}, {"message", e.what()}};
    code = kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    report["error"] = {{"kind", "InvalidInput"}, {"message", e.what()}};
    code = kExitInput;
  }

  std::uint64_t digest = 0xcbf29ce484222325ull;
  for (const auto& part : run.digest_parts) digest = fnv1a(part + '\x1f', digest);
  report["command"] = run.command;
  report["inputs_digest"] = hex(digest);
  report["seed"] = run.seed ? json(*run.seed) : json(nullptr);
  report["exit_code"] = code;
  report["duration_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (!opt.out.empty() && code != kExitInput) {
    std::ofstream out(opt.out);
    if (!out) {
      std::cerr << "error: cannot write '" << opt.out << "'\n";
      code = kExitInput;
      report["exit_code"] = code;
    } else {
      out << (run.output.is_null() ? report : run.output).dump(2) << "\n";
    }
  }
  std::cout << report.dump(2) << std::endl;
  return code;
}
