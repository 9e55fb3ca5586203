// Command-line front end: belief-frame inference, quantum predictions in SIC
// coordinates, fiducial search, and the cross-check harness tying the two
// calculi together. All results print as JSON on stdout.
//
// Exit codes: 0 pass, 1 numerical failure, 2 invalid input, 3 no convergence.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "paraprob/engine.hpp"
#include "paraprob/fiducial.hpp"
#include "paraprob/harness.hpp"
#include "paraprob/io.hpp"
#include "paraprob/prop_algebra.hpp"
#include "paraprob/quantum.hpp"

namespace {

using paraprob::Json;

struct NumericalFailure {};
struct NoConvergence {};

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

// Effect operators may be rank-one projectors or general states.
paraprob::CMat load_effect(const std::string& path) {
  const paraprob::CMat m = paraprob::cmat_from_json(paraprob::load_json_file(path));
  try {
    return paraprob::Projector::validated(m).matrix();
  } catch (const paraprob::Error&) {
  }
  try {
    return paraprob::DensityOp::validated(m).matrix();
  } catch (const paraprob::Error&) {
    throw paraprob::Error(paraprob::ErrorCode::InvalidInput,
                          "effect is neither a rank-one projector nor a density operator");
  }
}

paraprob::SicSet load_sic(int d, const std::string& path) {
  if (!path.empty()) {
    paraprob::SicSet sic = paraprob::sic_from_json(paraprob::load_json_file(path));
    paraprob::require(d == 0 || sic.dim() == d, paraprob::ErrorCode::DimensionMismatch,
                      "--d disagrees with the SIC file");
    return sic;
  }
  paraprob::require(paraprob::has_builtin_fiducial(d), paraprob::ErrorCode::InvalidInput,
                    "no built-in fiducial for d = " + std::to_string(d) +
                        "; supply a SIC file");
  return paraprob::builtin_sic(d);
}

void run_infer(const std::string& frame_path, const std::string& table_path) {
  const paraprob::BeliefFrame frame =
      paraprob::frame_from_json(paraprob::load_json_file(frame_path));
  const paraprob::ConditionalTable table =
      paraprob::table_from_json(paraprob::load_json_file(table_path));
  const paraprob::QueryResult q = paraprob::total_probability(frame, table);
  Json out = paraprob::query_to_json(q);
  if (table.has_companions()) {
    out["value_neg"] = paraprob::detail::total_probability_on(frame, table.b_neg()).value;
    out["value_contra"] =
        paraprob::detail::total_probability_on(frame, table.b_contra()).value;
    out["closure_residual"] = paraprob::closure_check(frame, table);
  }
  print(out);
}

void run_toy(int n, double s, const std::string& table_path, const std::string& frame_path) {
  const paraprob::ConditionalTable table =
      paraprob::table_from_json(paraprob::load_json_file(table_path));
  Eigen::VectorXd p;
  if (!frame_path.empty()) {
    const paraprob::BeliefFrame f =
        paraprob::frame_from_json(paraprob::load_json_file(frame_path));
    p = f.p();
  } else {
    p = Eigen::VectorXd::Constant(n, s / static_cast<double>(n));
  }
  paraprob::require(static_cast<int>(p.size()) == n, paraprob::ErrorCode::InvalidInput,
                    "frame size differs from --n");
  paraprob::require(std::abs(paraprob::ordered_sum(p) - s) <= 1e-9,
                    paraprob::ErrorCode::InvalidInput,
                    "--s disagrees with the total mass of the frame");
  const double toy = paraprob::toy_model_total(p, table.b());
  const paraprob::BeliefFrame shared =
      paraprob::BeliefFrame::shared(p, paraprob::ordered_sum(p));
  const double via_frame = paraprob::total_probability(shared, table).value;
  print(Json{{"n", n},
             {"s", s},
             {"toy_value", toy},
             {"pbpt_value", via_frame},
             {"abs_difference", std::abs(toy - via_frame)},
             {"contradiction_mass", shared.contradiction_mass()}});
}

void run_predict(const std::string& state_path, const std::string& sic_path,
                 const std::string& effect_path) {
  const paraprob::DensityOp rho =
      paraprob::density_from_json(paraprob::load_json_file(state_path));
  const paraprob::SicSet sic = paraprob::sic_from_json(paraprob::load_json_file(sic_path));
  const paraprob::CMat effect = load_effect(effect_path);

  const paraprob::SicProbVec q = paraprob::sic_probs(rho, sic);
  Eigen::VectorXd t(sic.count());
  for (int k = 0; k < sic.count(); ++k)
    t[k] = paraprob::detail::born_value(effect, sic.projector(k).matrix());
  const double rule = paraprob::quantum_total(q, t);
  const double direct = paraprob::detail::born_value(effect, rho.matrix());
  print(Json{{"d", sic.dim()},
             {"direct", direct},
             {"quantum_rule", rule},
             {"abs_difference", std::abs(direct - rule)},
             {"q", paraprob::vector_to_json(q.q())},
             {"t", paraprob::vector_to_json(t)}});
}

void run_reconstruct(const std::string& q_path, const std::string& sic_path) {
  const paraprob::SicSet sic = paraprob::sic_from_json(paraprob::load_json_file(sic_path));
  const paraprob::SicProbVec q =
      paraprob::probvec_from_json(paraprob::load_json_file(q_path));
  const paraprob::CMat m = paraprob::reconstruct(q, sic);
  const double lo = paraprob::physicality(m);
  print(Json{{"matrix", paraprob::cmat_to_json(m)},
             {"hermiticity_defect", paraprob::hermiticity_defect(m)},
             {"trace_re", m.trace().real()},
             {"min_eigenvalue", lo},
             {"psd", lo >= -1e-10}});
}

void run_sic_verify(const std::string& path) {
  const Json j = paraprob::load_json_file(path);
  const int d = paraprob::detail::as_int(paraprob::detail::member(j, "d"), "d");
  const paraprob::CVec phi =
      paraprob::cvec_from_json(paraprob::detail::member(j, "fiducial"), "fiducial");
  const double tol =
      paraprob::detail::as_number(paraprob::detail::member(j, "tolerance"), "tolerance");
  paraprob::require(static_cast<int>(phi.size()) == d,
                    paraprob::ErrorCode::DimensionMismatch,
                    "fiducial length differs from d");
  const double residual = paraprob::sic_residual(phi, d);
  const bool valid = residual <= tol;
  print(Json{{"d", d}, {"gram_residual", residual}, {"tolerance", tol}, {"valid", valid}});
  if (!valid) throw NumericalFailure{};
}

void run_sic_find(const paraprob::SearchConfig& config, const std::string& out_path) {
  const paraprob::SearchResult r = paraprob::optimize(config);
  print(paraprob::search_to_json(config, r));
  if (!out_path.empty() && r.converged) {
    const paraprob::SicSet sic = paraprob::sic_from_fiducial(
        r.fiducial, config.d, std::max(10.0 * r.sic_residual, 1e-12));
    paraprob::save_json_file(out_path, paraprob::sic_to_json(sic));
  }
  if (!r.converged) throw NoConvergence{};
}

void run_crosscheck(int d, int trials, std::uint64_t seed, double tol,
                    const std::string& sic_path) {
  const paraprob::SicSet sic = load_sic(d, sic_path);
  const paraprob::CrossCheckReport rep = paraprob::crosscheck(sic, trials, seed, tol);
  print(paraprob::report_to_json(rep));
  if (!rep.pass) throw NumericalFailure{};
}

void run_gap(int d, std::uint64_t seed, int attempts, const std::string& sic_path) {
  const paraprob::SicSet sic = load_sic(d, sic_path);
  const paraprob::GapWitness w = paraprob::physicality_gap(sic, seed, attempts);
  print(paraprob::witness_to_json(w));
}

void run_prop_simplify(const std::string& text) {
  const paraprob::PropExpr e = paraprob::parse_sexpr(text);
  paraprob::SimplifyStats stats;
  const paraprob::PropExpr n = paraprob::simplify(e, stats);
  static const char* names[] = {"double_negation",        "negate_constant",
                                "conj_unit",              "disj_unit",
                                "arruda",                 "arruda_dual",
                                "contra_absorbs_affirm",  "contra_absorbs_negation",
                                "nc_part_contra_clash"};
  Json fired = Json::object();
  for (int i = 0; i < paraprob::SimplifyStats::kRuleCount; ++i)
    if (stats.fired[static_cast<std::size_t>(i)] > 0)
      fired[names[i]] = stats.fired[static_cast<std::size_t>(i)];
  print(Json{{"input", text},
             {"normal_form", paraprob::to_sexpr(n)},
             {"steps", stats.steps},
             {"fired", fired}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paraconsistent probability rules with a SIC-POVM quantum cross-check"};
  app.require_subcommand(1);

  // pbpt
  auto* pbpt = app.add_subcommand("pbpt", "belief-frame probability rules");
  pbpt->require_subcommand(1);

  std::string infer_frame, infer_table;
  auto* infer = pbpt->add_subcommand("infer", "total probability for a frame and table");
  infer->add_option("frame", infer_frame, "belief frame JSON")->required();
  infer->add_option("table", infer_table, "conditional table JSON")->required();
  infer->callback([&] { run_infer(infer_frame, infer_table); });

  int toy_n = 0;
  double toy_s = 0.0;
  std::string toy_table, toy_frame;
  auto* toy = pbpt->add_subcommand("toy", "shared-contradiction model with mass S over N");
  toy->add_option("--n", toy_n, "number of hypotheses")->required();
  toy->add_option("--s", toy_s, "total hypothesis mass S")->required();
  toy->add_option("--table", toy_table, "conditional table JSON")->required();
  toy->add_option("--frame", toy_frame, "optional frame JSON (default: uniform p = S/N)");
  toy->callback([&] { run_toy(toy_n, toy_s, toy_table, toy_frame); });

  // quantum
  auto* quantum = app.add_subcommand("quantum", "SIC-coordinate quantum predictions");
  quantum->require_subcommand(1);

  std::string pr_state, pr_sic, pr_effect;
  auto* predict = quantum->add_subcommand("predict", "transition probability two ways");
  predict->add_option("state", pr_state, "density operator JSON")->required();
  predict->add_option("sic", pr_sic, "SIC set JSON")->required();
  predict->add_option("effect", pr_effect, "effect operator JSON")->required();
  predict->callback([&] { run_predict(pr_state, pr_sic, pr_effect); });

  std::string rc_q, rc_sic;
  auto* recon = quantum->add_subcommand("reconstruct", "operator from SIC probabilities");
  recon->add_option("q", rc_q, "probability vector JSON")->required();
  recon->add_option("sic", rc_sic, "SIC set JSON")->required();
  recon->callback([&] { run_reconstruct(rc_q, rc_sic); });

  // sic
  auto* sic = app.add_subcommand("sic", "SIC fiducial construction and checks");
  sic->require_subcommand(1);

  std::string verify_path;
  auto* verify = sic->add_subcommand("verify", "re-validate a SIC set file");
  verify->add_option("file", verify_path, "SIC set JSON")->required();
  verify->callback([&] { run_sic_verify(verify_path); });

  paraprob::SearchConfig config;
  std::string find_out;
  auto* find = sic->add_subcommand("find", "search for a fiducial vector");
  find->add_option("--d", config.d, "dimension (2..8)")->required();
  find->add_option("--seed", config.seed, "random seed");
  find->add_option("--restarts", config.restarts, "independent restarts");
  find->add_option("--max-iters", config.max_iters, "iteration cap per restart");
  find->add_option("--target", config.target_residual, "residual declaring convergence");
  find->add_option("--out", find_out, "write the SIC set file here on convergence");
  find->callback([&] { run_sic_find(config, find_out); });

  // crosscheck
  int cc_d = 2, cc_trials = 1000;
  std::uint64_t cc_seed = 1;
  double cc_tol = 1e-10;
  std::string cc_sic;
  auto* cc = app.add_subcommand("crosscheck", "direct trace vs both total probability rules");
  cc->add_option("--d", cc_d, "dimension (2 or 3 built-in)");
  cc->add_option("--trials", cc_trials, "number of random (state, effect) pairs");
  cc->add_option("--seed", cc_seed, "random seed");
  cc->add_option("--tol", cc_tol, "equivalence tolerance");
  cc->add_option("--sic", cc_sic, "SIC set JSON for other dimensions");
  cc->callback([&] { run_crosscheck(cc_d, cc_trials, cc_seed, cc_tol, cc_sic); });

  // gap
  int gap_d = 2, gap_attempts = 1000;
  std::uint64_t gap_seed = 1;
  std::string gap_sic;
  auto* gap = app.add_subcommand("gap", "belief-valid probabilities with non-physical state");
  gap->add_option("--d", gap_d, "dimension (2 or 3 built-in)");
  gap->add_option("--seed", gap_seed, "random seed");
  gap->add_option("--attempts", gap_attempts, "sampling budget");
  gap->add_option("--sic", gap_sic, "SIC set JSON for other dimensions");
  gap->callback([&] { run_gap(gap_d, gap_seed, gap_attempts, gap_sic); });

  // prop
  auto* prop = app.add_subcommand("prop", "proposition algebra debugging");
  prop->require_subcommand(1);
  std::string prop_text;
  auto* simp = prop->add_subcommand("simplify", "normal form of an s-expression");
  simp->add_option("expr", prop_text, "expression, e.g. \"(and A (not A))\"")->required();
  simp->callback([&] { run_prop_simplify(prop_text); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const NumericalFailure&) {
    return 1;
  } catch (const NoConvergence&) {
    return 3;
  } catch (const paraprob::Error& e) {
    std::cerr << Json{{"error", paraprob::error_code_name(e.code())}, {"message", e.what()}}
                     .dump(2)
              << '\n';
    return e.code() == paraprob::ErrorCode::NotFound ? 1 : 2;
  }
  return 0;
}
