#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "paraprob/io.hpp"
#include "test_support.hpp"

using namespace paraprob;

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

// serialize -> text -> parse, as files do
Json through_text(const Json& j) { return Json::parse(j.dump()); }

}  // namespace

TEST_CASE("belief frames round-trip bit-exactly") {
  Rng rng(61);
  for (int i = 0; i < 500; ++i) {
    const int n = 1 + static_cast<int>(rng.raw() % 16);
    const BeliefFrame f = testsup::random_frame(rng, n, 0.0);
    const BeliefFrame g = frame_from_json(through_text(frame_to_json(f)));
    CHECK(f.p() == g.p());
    CHECK(f.c() == g.c());
    CHECK(f.shared_contradiction() == g.shared_contradiction());
    CHECK(f.complete() == g.complete());
  }
  for (int i = 0; i < 500; ++i) {
    const int n = 2 + static_cast<int>(rng.raw() % 15);
    const BeliefFrame f = testsup::random_shared_frame(rng, n);
    const BeliefFrame g = frame_from_json(through_text(frame_to_json(f)));
    CHECK(f.p() == g.p());
    CHECK(f.c() == g.c());
    CHECK(g.shared_contradiction());
    CHECK(f.declared_mass() == g.declared_mass());
  }
}

TEST_CASE("frame JSON forms") {
  const Json shared = Json::parse(
      R"({"n": 4, "p": [0.5, 0.5, 0.5, 0.5], "c": {"shared": true, "s": 2.0}, "complete": true})");
  const BeliefFrame f = frame_from_json(shared);
  CHECK(f.shared_contradiction());
  CHECK(std::abs(f.contradiction_mass() - 1.0 / 3.0) <= 1e-15);

  const Json arr = Json::parse(
      R"({"n": 2, "p": [0.5, 0.5], "c": [0.0, 0.0], "complete": true})");
  CHECK_FALSE(frame_from_json(arr).shared_contradiction());

  CHECK(code_of([] { frame_from_json(Json::parse(R"({"n": 2, "p": [0.5, 0.5]})")); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([] {
          frame_from_json(Json::parse(R"({"n": 3, "p": [0.5, 0.5], "c": [0, 0]})"));
        }) == ErrorCode::InvalidInput);
  CHECK(code_of([] {
          frame_from_json(
              Json::parse(R"({"n": 2, "p": [0.5, 0.5], "c": {"shared": false, "s": 1}})"));
        }) == ErrorCode::InvalidInput);
}

TEST_CASE("conditional tables round-trip") {
  Rng rng(62);
  for (int i = 0; i < 300; ++i) {
    const int n = 1 + static_cast<int>(rng.raw() % 16);
    const ConditionalTable t = testsup::random_coherent_triple(rng, n);
    const ConditionalTable u = table_from_json(through_text(table_to_json(t)));
    CHECK(t.b() == u.b());
    CHECK(t.b_neg() == u.b_neg());
    CHECK(t.b_contra() == u.b_contra());
  }
  const ConditionalTable plain = ConditionalTable::plain(Eigen::VectorXd::Constant(3, 0.25));
  CHECK_FALSE(table_from_json(through_text(table_to_json(plain))).has_companions());
  CHECK(code_of([] { table_from_json(Json::parse(R"({"b": [0.5], "b_neg": [0.5]})")); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("complex matrices round-trip bit-exactly") {
  Rng rng(63);
  for (int i = 0; i < 200; ++i) {
    const int d = 2 + static_cast<int>(rng.raw() % 5);
    const CMat m = testsup::random_hermitian(rng, d);
    CHECK(cmat_from_json(through_text(cmat_to_json(m))) == m);
  }
  CHECK(code_of([] { cmat_from_json(Json::parse(R"({"d": 2, "re_im": [[[1, 0]]]})")); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("density operators load with validation") {
  Rng rng(64);
  const DensityOp rho = random_density(3, rng);
  const DensityOp back = density_from_json(through_text(cmat_to_json(rho.matrix())));
  CHECK(back.matrix() == rho.matrix());

  CMat notherm(2, 2);
  notherm << 1, 1, 0, 0;
  CHECK(code_of([&] { density_from_json(cmat_to_json(notherm)); }) ==
        ErrorCode::NotHermitian);
}

TEST_CASE("SIC set files re-validate on load") {
  const SicSet sic = builtin_sic(2);
  const SicSet back = sic_from_json(through_text(sic_to_json(sic)));
  CHECK(back.dim() == 2);
  CHECK(back.fiducial() == sic.fiducial());
  CHECK(back.gram_residual() <= 1e-12);

  // tampering with a relative phase keeps the norm but breaks the Gram
  // condition, which the load-time re-validation must catch
  Json tampered = sic_to_json(sic);
  const Complex twisted = std::polar(1.0, 0.3) * sic.fiducial()[1];
  tampered["fiducial"][1] = Json::array({twisted.real(), twisted.imag()});
  CHECK(code_of([&] { sic_from_json(tampered); }) == ErrorCode::NotSic);

  Json badtol = sic_to_json(sic);
  badtol["tolerance"] = -1.0;
  CHECK(code_of([&] { sic_from_json(badtol); }) == ErrorCode::InvalidInput);
}

TEST_CASE("probability vectors round-trip") {
  const SicSet sic = builtin_sic(2);
  Rng rng(65);
  const SicProbVec q = sic_probs(random_density(2, rng), sic);
  const SicProbVec back = probvec_from_json(through_text(probvec_to_json(q)));
  CHECK(back.q() == q.q());
  CHECK(back.dim() == 2);
}

TEST_CASE("results serialize with the documented field names") {
  const CrossCheckReport rep = crosscheck(builtin_sic(2), 16, 3u);
  const Json j = report_to_json(rep);
  CHECK(j.contains("max_abs_discrepancy_direct_vs_quantum_rule"));
  CHECK(j.contains("max_abs_discrepancy_direct_vs_pbpt_rule"));
  CHECK(j.contains("contradiction_mass"));
  CHECK(j["pass"].is_boolean());

  QueryResult qr;
  qr.value = 0.5;
  qr.rule = "pbpt-total-probability";
  const Json jq = query_to_json(qr);
  CHECK(jq["value"] == 0.5);
  CHECK(jq["rule"] == "pbpt-total-probability");
}

TEST_CASE("file helpers reject missing and malformed files") {
  CHECK(code_of([] { load_json_file("/nonexistent/path.json"); }) == ErrorCode::InvalidInput);
}
