// Acceptance suite: every criterion runs end to end at its stated tolerance
// and prints one pass/fail line. The process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "paraprob/engine.hpp"
#include "paraprob/fiducial.hpp"
#include "paraprob/harness.hpp"
#include "paraprob/prop_algebra.hpp"
#include "paraprob/quantum.hpp"
#include "paraprob/rational.hpp"
#include "test_support.hpp"

using namespace paraprob;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. The shared contradiction mass at n = d^2, S = d is exactly 1/(d+1).
Outcome contradiction_mass() {
  for (long long d = 2; d <= 10; ++d) {
    if (!(shared_contradiction_mass_exact(d * d, Rational(d)) == Rational(1, d + 1)))
      return {false, "mismatch at d = " + std::to_string(d)};
  }
  return {true, "exact 1/(d+1) for d = 2..10"};
}

// 2. Direct trace, quantum rule, and belief rule agree on random pairs.
Outcome quantum_equivalence(int d) {
  const CrossCheckReport rep = crosscheck(builtin_sic(d), 1000, 90210u + d, 1e-10);
  const int used = rep.trials - rep.skipped;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "max |direct - quantum| = %.2e, max |direct - pbpt| = %.2e, %d/%d identified",
                rep.max_dev_quantum, rep.max_dev_pbpt, used, rep.trials);
  return {rep.pass && used > 0, buf};
}

// 3. With zero contradiction mass the rule collapses to the classical one.
Outcome classical_reduction() {
  Rng rng(301);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int n = 2 + static_cast<int>(rng.raw() % 15);
    const Eigen::VectorXd p = testsup::random_unit_mass(rng, n);
    const Eigen::VectorXd b = testsup::random_uniform_vec(rng, n);
    const double via_frame =
        total_probability(BeliefFrame::classical(p), ConditionalTable::plain(b)).value;
    worst = std::max(worst, std::abs(via_frame - classical_total(p, b)));
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "max deviation = %.2e over 10^4 frames", worst);
  return {worst <= 1e-15, buf};
}

// 4. Closed form, frame route, and quantum-matched form agree.
Outcome rule_chain() {
  Rng rng(401);
  double worst_toy = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int n = 2 + static_cast<int>(rng.raw() % 15);
    const BeliefFrame f = testsup::random_shared_frame(rng, n);
    const Eigen::VectorXd b = testsup::random_uniform_vec(rng, n);
    worst_toy = std::max(worst_toy,
                         std::abs(toy_model_total(f.p(), b) -
                                  total_probability(f, ConditionalTable::plain(b)).value));
  }
  double worst_qm = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int d = 2 + static_cast<int>(rng.raw() % 3);
    const Eigen::VectorXd q = testsup::random_quantum_masses(rng, d);
    const Eigen::VectorXd t = testsup::random_uniform_vec(rng, d * d);
    worst_qm = std::max(worst_qm, std::abs(quantum_matched_total(d, q, t) -
                                           toy_model_total(q, t)));
  }
  char buf[100];
  std::snprintf(buf, sizeof(buf), "toy vs frame %.2e, quantum-matched vs toy %.2e", worst_toy,
                worst_qm);
  return {worst_toy <= 1e-12 && worst_qm <= 1e-12, buf};
}

// 5. Built-in fiducials validate; the search reaches d = 4 and 5.
Outcome sic_validity() {
  const double g2 = builtin_sic(2).gram_residual();
  const double g3 = builtin_sic(3).gram_residual();
  if (g2 > 1e-12 || g3 > 1e-12)
    return {false, "built-in Gram residuals exceed 1e-12"};

  std::string detail = "built-ins " + std::to_string(g2) + ", " + std::to_string(g3);
  for (int d : {4, 5}) {
    SearchConfig cfg;
    cfg.d = d;
    cfg.seed = 11;
    const auto t0 = std::chrono::steady_clock::now();
    const SearchResult r = optimize(cfg);
    const double elapsed = seconds_since(t0);
    const double fp_gap = std::abs(r.frame_potential - (d - 1.0) / (d + 1.0));
    char buf[120];
    std::snprintf(buf, sizeof(buf), "; d=%d residual %.2e, fp gap %.2e, %.2fs", d,
                  r.sic_residual, fp_gap, elapsed);
    detail += buf;
    if (!(r.converged && r.sic_residual <= 1e-8 && fp_gap <= 1e-8 && elapsed < 120.0))
      return {false, detail};
  }
  return {true, detail};
}

// 6. Reconstruction inverts the Born probabilities.
Outcome reconstruction_roundtrip() {
  Rng rng(601);
  double worst = 0.0;
  for (int d : {2, 3}) {
    const SicSet sic = builtin_sic(d);
    for (int i = 0; i < 1000; ++i) {
      const DensityOp rho = random_density(d, rng);
      worst = std::max(worst,
                       max_abs_diff(reconstruct(sic_probs(rho, sic), sic), rho.matrix()));
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "max |reconstructed - state| = %.2e", worst);
  return {worst <= 1e-10, buf};
}

// 7. The three conditional outputs close under the sum rule.
Outcome sum_rule_closure() {
  Rng rng(701);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const int n = 1 + static_cast<int>(rng.raw() % 16);
    const BeliefFrame f = testsup::random_frame(rng, n);
    const ConditionalTable t = testsup::random_coherent_triple(rng, n);
    worst = std::max(worst, std::abs(closure_check(f, t)));
  }
  char buf[80];
  std::snprintf(buf, sizeof(buf), "max residual = %.2e over 10^4 triples", worst);
  return {worst <= 1e-12, buf};
}

// 8. Admissible probability vectors can reconstruct to non-physical operators.
Outcome physicality_gap_check() {
  const GapWitness w = physicality_gap(builtin_sic(2), 1u, 1000);
  char buf[100];
  std::snprintf(buf, sizeof(buf), "witness after %d draws, min eigenvalue %.4f", w.attempts,
                w.min_eigenvalue);
  return {w.min_eigenvalue < -1e-6, buf};
}

// 9. The rewrite layer is idempotent and reproduces the absorption identities.
Outcome rewrite_layer() {
  Rng rng(901);
  for (int i = 0; i < 10000; ++i) {
    const PropExpr e = testsup::random_expr(rng, 6);
    const PropExpr n = simplify(e);
    if (!(simplify(n) == n)) return {false, "idempotence failed"};
  }
  for (int i = 0; i < 10000; ++i) {
    const PropExpr x = testsup::random_expr(rng, 4);
    const PropExpr k = simplify(contra(x));
    if (!(simplify(PropExpr::conjunction(contra(x), x)) == k))
      return {false, "affirmation absorption failed"};
    if (!(simplify(PropExpr::conjunction(contra(x), PropExpr::negation(x))) == k))
      return {false, "negation absorption failed"};
    if (!(simplify(PropExpr::conjunction(nc_part(x), contra(x))) == PropExpr::absurd()))
      return {false, "clash rule failed"};
  }
  return {true, "idempotence and the three identities over 10^4 expressions"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<Outcome()> run;
    double budget_s;
  };

  const std::vector<Criterion> criteria = {
      {"contradiction mass 1/(d+1), d = 2..10 (exact)", contradiction_mass, 1.0},
      {"quantum equivalence, d = 2, 1000 pairs <= 1e-10", [] { return quantum_equivalence(2); },
       10.0},
      {"quantum equivalence, d = 3, 1000 pairs <= 1e-10", [] { return quantum_equivalence(3); },
       10.0},
      {"classical reduction <= 1e-15", classical_reduction, 60.0},
      {"rule-chain consistency <= 1e-12", rule_chain, 60.0},
      {"SIC validity: built-ins <= 1e-12, search d = 4, 5 <= 1e-8", sic_validity, 300.0},
      {"reconstruction round trip <= 1e-10", reconstruction_roundtrip, 60.0},
      {"sum-rule closure <= 1e-12", sum_rule_closure, 60.0},
      {"physicality gap witness at d = 2", physicality_gap_check, 5.0},
      {"rewrite layer idempotent, identities on 10^4 expressions", rewrite_layer, 5.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = seconds_since(t0);
    const bool in_budget = elapsed < criteria[i].budget_s;
    const bool pass = out.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] %zu. %s (%.2f s)%s%s%s\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].label, elapsed, out.detail.empty() ? "" : " -- ",
                out.detail.c_str(), in_budget ? "" : " [over budget]");
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
