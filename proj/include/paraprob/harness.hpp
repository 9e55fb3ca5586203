#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <utility>

#include "paraprob/engine.hpp"
#include "paraprob/errors.hpp"
#include "paraprob/quantum.hpp"
#include "paraprob/rng.hpp"

namespace paraprob {

// Bridge between the two calculi: assign SIC outcome probabilities to the
// hypothesis masses of a shared-contradiction belief frame and transition
// probabilities to the conditional table, then compare predictions.

// Quantum-derived masses arrive with up to 1e-10 slack on their total, so the
// frame completeness check runs with this looser tolerance.
inline constexpr double kIdentifySlack = 1e-9;

// Builds the belief frame with n = d^2 hypotheses, p_k = q_k and shared
// contradiction mass (d-1)/(d^2-1) = 1/(d+1), plus the table b_k = t_k.
// States whose probability vector dips below the contradiction mass admit no
// such frame; that surfaces as FrameConflict, reported rather than repaired.
inline std::pair<BeliefFrame, ConditionalTable> identify(const SicProbVec& q,
                                                         const Eigen::VectorXd& t) {
  require(t.size() == q.q().size(), ErrorCode::DimensionMismatch, "t must have d^2 entries");
  BeliefFrame frame =
      BeliefFrame::shared(q.q(), static_cast<double>(q.dim()), kIdentifySlack);
  ConditionalTable table = ConditionalTable::plain(t);
  return {std::move(frame), std::move(table)};
}

struct CrossCheckReport {
  int d = 0;
  int trials = 0;
  int skipped = 0;  // trials where the identification admits no belief frame
  double max_dev_quantum = 0.0;  // |tr(sigma rho) - quantum rule|
  double max_dev_pbpt = 0.0;     // |tr(sigma rho) - belief-frame rule|
  double contradiction_mass = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  bool pass = false;
  bool no_data = false;
};

// Draws (state, rank-one effect) pairs and compares three routes to the same
// transition probability: the direct trace, the quantum total probability
// rule in SIC coordinates, and the paraconsistent total probability rule
// after identification. Per-trial randomness derives from (seed, trial), so
// the max-reduction is order independent.
inline CrossCheckReport crosscheck(const SicSet& sic, int trials, std::uint64_t seed,
                                   double tol = 1e-10) {
  require(trials >= 0, ErrorCode::InvalidConfig, "trials must be non-negative");
  require(tol > 0.0, ErrorCode::InvalidConfig, "tolerance must be positive");
  const int d = sic.dim();

  CrossCheckReport rep;
  rep.d = d;
  rep.trials = trials;
  rep.seed = seed;
  rep.tolerance = tol;
  rep.contradiction_mass = shared_contradiction_mass(d * d, static_cast<double>(d));

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
    // States span the full mixedness range so the identification boundary
    // (every q_k at least the contradiction mass) is exercised from both
    // sides; trials on the far side are the skipped ones.
    const double w = rng.uniform01();
    const DensityOp rho = DensityOp::validated(
        (1.0 - w) * random_density(d, rng).matrix() +
        (w / d) * CMat::Identity(d, d));
    const Projector sigma = Projector::from_state(random_state(d, rng));

    const double direct = born(rho, sigma);

    const SicProbVec q = sic_probs(rho, sic);
    Eigen::VectorXd t(sic.count());
    for (int k = 0; k < sic.count(); ++k) t[k] = born(sic.projector(k).as_density(), sigma);

    const double via_quantum = quantum_total(q, t);
    rep.max_dev_quantum = std::max(rep.max_dev_quantum, std::abs(direct - via_quantum));

    try {
      auto [frame, table] = identify(q, t);
      const double via_pbpt = total_probability(frame, table).value;
      rep.max_dev_pbpt = std::max(rep.max_dev_pbpt, std::abs(direct - via_pbpt));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::FrameConflict) throw;
      ++rep.skipped;
    }
  }

  rep.no_data = trials == 0;
  rep.pass = rep.max_dev_quantum <= tol && rep.max_dev_pbpt <= tol;
  return rep;
}

struct GapWitness {
  int d = 0;
  Eigen::VectorXd q;
  double min_eigenvalue = 0.0;
  int attempts = 0;  // draws consumed, including rejected ones
};

// Searches for probability vectors that are perfectly admissible belief
// assignments (entries in [0, 1], total mass d) yet reconstruct to operators
// with a negative eigenvalue. Candidates are uniform on that slice of the
// cube; positivity of the reconstruction is the extra principle the belief
// calculus does not supply, so witnesses are plentiful.
inline GapWitness physicality_gap(const SicSet& sic, std::uint64_t seed, int attempts = 1000,
                                  double threshold = -1e-6) {
  require(attempts >= 1, ErrorCode::InvalidConfig, "attempts must be >= 1");
  require(threshold < 0.0, ErrorCode::InvalidConfig, "threshold must be negative");
  const int d = sic.dim();
  const int n = sic.count();
  Rng rng(seed);

  for (int attempt = 1; attempt <= attempts; ++attempt) {
    // Dirichlet(1,...,1) scaled to mass d, rejecting entries above one.
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = -std::log(1.0 - rng.uniform01());
    x *= static_cast<double>(d) / ordered_sum(x);
    if (x.maxCoeff() > 1.0) continue;

    const SicProbVec q = SicProbVec::validated(d, x);
    const double lo = physicality(reconstruct(q, sic));
    if (lo < threshold) {
      GapWitness w;
      w.d = d;
      w.q = q.q();
      w.min_eigenvalue = lo;
      w.attempts = attempt;
      return w;
    }
  }
  throw Error(ErrorCode::NotFound, "no non-physical reconstruction found within the budget");
}

}  // namespace paraprob
