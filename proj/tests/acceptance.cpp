// Acceptance run: one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails, unless every failing
// criterion was named with --known-failure N (a listed criterion that
// unexpectedly passes is also reported as nonzero).

#include "framekit/properties.hpp"
#include "framekit/reference_models.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <set>
#include <string>

using namespace framekit;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  bool passed = true;
  std::string detail;
};

void absorb_example(Criterion& c, const ExampleRun& r) {
  if (!r.passed()) {
    c.passed = false;
    const Check* f = r.checks.first_failure();
    c.detail += "example " + r.id + ": " + f->name + " (value " + std::to_string(f->value) + ") ";
  }
}

void absorb_suite(Criterion& c, const SuiteResult& s) {
  c.detail += s.suite + " " + std::to_string(s.trials - s.failures.size()) + "/" + std::to_string(s.trials) + " ";
  if (!s.passed()) {
    c.passed = false;
    const TrialFailure& f = s.failures.front();
    c.detail += "[first failure trial " + std::to_string(f.trial) + ", seed " + std::to_string(f.sub_seed) + ": " +
                f.message + "] ";
  }
}

template <class Body>
Criterion run(int id, std::string title, double budget_s, Body&& body) {
  Criterion c{id, std::move(title), budget_s, true, ""};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail += std::string("exception: ") + e.what() + " ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    c.passed = false;
    c.detail += "over budget ";
  }
  c.detail += "(" + std::to_string(secs).substr(0, 5) + " s of " + std::to_string(static_cast<int>(budget_s)) + " s)";
  std::printf("%s criterion %d: %s -- %s\n", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str(), c.detail.c_str());
  std::fflush(stdout);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) known.insert(std::atoi(argv[++i]));
  }
  const Tolerance tol;
  std::vector<Criterion> all;

  all.push_back(run(1, "backward shift: K-frame bounds 1 on the margin, Theta-frame fails at chi_1", 1.0,
                    [&](Criterion& c) { absorb_example(c, models::backward_shift(tol)); }));
  all.push_back(run(2, "indicator system: beta = inf, witness energy 1 + B and ||Theta h||^2 = 1", 1.0,
                    [&](Criterion& c) { absorb_example(c, models::indicator_system(tol)); }));
  all.push_back(run(3, "summing operator: lower bound with gamma in (0,1), delta_0 < 0.01", 1.0,
                    [&](Criterion& c) { absorb_example(c, models::summing_operator_frame(tol)); }));
  all.push_back(run(4, "range inclusion / majorization / factorization: 200 instances per branch", 10.0,
                    [&](Criterion& c) { absorb_suite(c, run_suite("douglas", 200, 42, tol)); }));
  all.push_back(run(5, "inverse-based hyponormality test vs commutator: 500 random + 50 normal", 10.0,
                    [&](Criterion& c) {
                      const SuiteResult s = run_suite("djordjevic", 500, 7, tol);
                      absorb_suite(c, s);
                      c.detail += "(normals every tenth trial: " + std::to_string(s.trials / 10) + ") ";
                    }));
  all.push_back(run(6, "Parseval frame through normal Theta is (Theta,1)-tight: 50 instances", 30.0, [&](Criterion& c) {
    absorb_suite(c, run_suite("tight-construction", 50, 38, tol));
    absorb_example(c, models::tight_construction(tol));
  }));
  all.push_back(run(7, "commuting transform: stated sandwich on 50 instances; translation model", 10.0,
                    [&](Criterion& c) {
                      absorb_suite(c, run_suite("transform-stated", 50, 310, tol));
                      absorb_example(c, models::noncommuting_transform(tol));
                      absorb_example(c, models::commuting_transform(tol));
                      const SuiteResult classical = run_suite("transform-classical", 50, 310, tol);
                      c.detail += "(classical bounds: " + std::string(classical.passed() ? "all hold" : "FAIL") + ") ";
                    }));
  all.push_back(run(8, "relative hyponormality + range inclusion <=> Theta-frame: 100 instances", 60.0,
                    [&](Criterion& c) { absorb_suite(c, run_suite("range-criterion", 100, 35, tol)); }));
  all.push_back(run(9, "partition and finite-sum biconditionals: 100 each; pinned repeated-window run", 30.0,
                    [&](Criterion& c) {
                      absorb_suite(c, run_suite("partition-combination", 100, 41, tol));
                      absorb_suite(c, run_suite("finite-sum", 100, 42, tol));
                      absorb_example(c, models::finite_sum(tol));
                    }));
  all.push_back(run(10, "pinv identities, eigen reconstruction, Gram positivity: 500 matrices", 10.0,
                    [&](Criterion& c) { absorb_suite(c, run_suite("numerics", 500, 10, tol)); }));

  int unexpected = 0;
  for (const auto& c : all) {
    const bool listed = known.count(c.id) > 0;
    if (!c.passed && !listed) ++unexpected;
    if (c.passed && listed) {
      std::printf("NOTE criterion %d was listed as a known failure but passed\n", c.id);
      ++unexpected;
    }
    if (!c.passed && listed) std::printf("NOTE criterion %d failed as documented\n", c.id);
  }
  std::printf("%d unexpected result(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
