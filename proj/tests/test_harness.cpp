#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "paraprob/harness.hpp"
#include "test_support.hpp"

using namespace paraprob;
using testsup::trace_re;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InternalCheck;
}

}  // namespace

TEST_CASE("identification produces the shared-contradiction frame") {
  const SicSet sic = builtin_sic(2);

  // maximally mixed state
  const SicProbVec q = sic_probs(DensityOp::validated(0.5 * CMat::Identity(2, 2)), sic);
  Eigen::VectorXd t = Eigen::VectorXd::Constant(4, 0.4);
  auto [frame, table] = identify(q, t);
  CHECK(frame.shared_contradiction());
  CHECK(frame.size() == 4);
  CHECK(std::abs(frame.contradiction_mass() - 1.0 / 3.0) <= 1e-15);
  CHECK(frame.p() == q.q());
  CHECK(table.b() == t);

  // boundary: the first SIC element as state has min q = 1/3 = c
  const SicProbVec q0 = sic_probs(sic.projector(0).as_density(), sic);
  CHECK_NOTHROW(identify(q0, t));

  // below the boundary the identification admits no frame
  Eigen::VectorXd bad(4);
  bad << 0.2, 0.8, 0.8, 0.2;
  const SicProbVec qbad = SicProbVec::validated(2, bad);
  CHECK(code_of([&] { identify(qbad, t); }) == ErrorCode::FrameConflict);
}

TEST_CASE("identification reproduces the quantum-matched rule") {
  Rng rng(51);
  for (int i = 0; i < 2000; ++i) {
    const int d = 2 + static_cast<int>(rng.raw() % 2);
    const Eigen::VectorXd qv = testsup::random_quantum_masses(rng, d);
    const Eigen::VectorXd t = testsup::random_uniform_vec(rng, d * d);
    const SicProbVec q = SicProbVec::validated(d, qv);
    auto [frame, table] = identify(q, t);
    const double via_frame = total_probability(frame, table).value;
    const double via_formula = quantum_matched_total(d, qv, t);
    CHECK(std::abs(via_frame - via_formula) <= 1e-14);
  }
}

TEST_CASE("crosscheck: three routes to the transition probability agree") {
  for (int d : {2, 3}) {
    const CrossCheckReport rep = crosscheck(builtin_sic(d), 300, 2026u);
    CHECK(rep.pass);
    CHECK_FALSE(rep.no_data);
    CHECK(rep.max_dev_quantum <= 1e-10);
    CHECK(rep.max_dev_pbpt <= 1e-10);
    CHECK(rep.skipped < rep.trials);            // the belief route saw data
    CHECK(rep.skipped > 0);                     // and the boundary is real
    CHECK(std::abs(rep.contradiction_mass - 1.0 / (d + 1.0)) <= 1e-12);
  }
}

TEST_CASE("crosscheck is deterministic and handles zero trials") {
  const SicSet sic = builtin_sic(2);
  const CrossCheckReport a = crosscheck(sic, 64, 5u);
  const CrossCheckReport b = crosscheck(sic, 64, 5u);
  CHECK(a.max_dev_quantum == b.max_dev_quantum);
  CHECK(a.max_dev_pbpt == b.max_dev_pbpt);
  CHECK(a.skipped == b.skipped);

  const CrossCheckReport empty = crosscheck(sic, 0, 5u);
  CHECK(empty.no_data);
  CHECK(empty.pass);
  CHECK(empty.max_dev_quantum == 0.0);
  CHECK(empty.max_dev_pbpt == 0.0);
}

TEST_CASE("physicality gap: admissible probabilities, non-physical operator") {
  for (int d : {2, 3}) {
    const SicSet sic = builtin_sic(d);
    const GapWitness w = physicality_gap(sic, 1u, 2000);
    CHECK(w.min_eigenvalue < -1e-6);
    CHECK(w.q.size() == d * d);
    CHECK(std::abs(ordered_sum(w.q) - static_cast<double>(d)) <= 1e-10);
    CHECK(w.q.minCoeff() >= 0.0);
    CHECK(w.q.maxCoeff() <= 1.0);
    // the witness is reproducible
    const GapWitness w2 = physicality_gap(sic, 1u, 2000);
    CHECK(w.q == w2.q);
    CHECK(w.min_eigenvalue == w2.min_eigenvalue);
  }
}

TEST_CASE("probability vectors of actual states never witness the gap") {
  const SicSet sic = builtin_sic(2);
  Rng rng(52);
  for (int i = 0; i < 200; ++i) {
    const SicProbVec q = sic_probs(random_density(2, rng), sic);
    CHECK(physicality(reconstruct(q, sic)) >= -1e-10);
  }
}

TEST_CASE("gap search error paths") {
  const SicSet sic = builtin_sic(2);
  CHECK(code_of([&] { physicality_gap(sic, 1u, 0); }) == ErrorCode::InvalidConfig);
  // an impossible threshold exhausts the budget
  CHECK(code_of([&] { physicality_gap(sic, 1u, 5, -10.0); }) == ErrorCode::NotFound);
}
