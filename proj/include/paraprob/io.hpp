#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "paraprob/engine.hpp"
#include "paraprob/errors.hpp"
#include "paraprob/fiducial.hpp"
#include "paraprob/harness.hpp"
#include "paraprob/quantum.hpp"

// JSON document formats. Numbers are serialized at full double precision and
// round-trip bit-exactly.
//
//   belief frame   {"n": int, "p": [real], "c": [real] | {"shared": true, "s": real},
//                   "complete": bool}
//   table          {"b": [real], "b_neg": [real]?, "b_contra": [real]?}
//   matrix         {"d": int, "re_im": [[[re, im], ...], ...]}   (row-major)
//   SIC set        {"d": int, "fiducial": [[re, im], ...], "tolerance": real}
//   probabilities  {"d": int, "q": [real]}

namespace paraprob {

using Json = nlohmann::json;

namespace detail {

inline const Json& member(const Json& j, const char* key) {
  require(j.is_object(), ErrorCode::InvalidInput, "expected a JSON object");
  const auto it = j.find(key);
  require(it != j.end(), ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  return *it;
}

inline double as_number(const Json& j, const char* what) {
  require(j.is_number(), ErrorCode::InvalidInput, std::string(what) + " must be a number");
  const double v = j.get<double>();
  require(std::isfinite(v), ErrorCode::InvalidInput, std::string(what) + " must be finite");
  return v;
}

inline int as_int(const Json& j, const char* what) {
  require(j.is_number_integer(), ErrorCode::InvalidInput,
          std::string(what) + " must be an integer");
  return j.get<int>();
}

}  // namespace detail

// ---- real vectors ----

inline Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Eigen::VectorXd vector_from_json(const Json& j, const char* what) {
  require(j.is_array(), ErrorCode::InvalidInput, std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const Json& x : j) v[i++] = detail::as_number(x, what);
  return v;
}

// ---- complex vectors and matrices ----

inline Json cvec_to_json(const CVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    a.push_back(Json::array({v[i].real(), v[i].imag()}));
  return a;
}

inline CVec cvec_from_json(const Json& j, const char* what) {
  require(j.is_array(), ErrorCode::InvalidInput, std::string(what) + " must be an array");
  CVec v(static_cast<Eigen::Index>(j.size()));
  Eigen::Index i = 0;
  for (const Json& x : j) {
    require(x.is_array() && x.size() == 2, ErrorCode::InvalidInput,
            std::string(what) + " entries must be [re, im] pairs");
    v[i++] = Complex(detail::as_number(x[0], what), detail::as_number(x[1], what));
  }
  return v;
}

inline Json cmat_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return Json{{"d", m.rows()}, {"re_im", std::move(rows)}};
}

inline CMat cmat_from_json(const Json& j) {
  const int d = detail::as_int(detail::member(j, "d"), "d");
  require(d >= 1, ErrorCode::InvalidInput, "matrix dimension must be positive");
  const Json& rows = detail::member(j, "re_im");
  require(rows.is_array() && static_cast<int>(rows.size()) == d, ErrorCode::InvalidInput,
          "re_im must have d rows");
  CMat m(d, d);
  for (int i = 0; i < d; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    require(row.is_array() && static_cast<int>(row.size()) == d, ErrorCode::InvalidInput,
            "re_im rows must have d entries");
    for (int k = 0; k < d; ++k) {
      const Json& cell = row[static_cast<std::size_t>(k)];
      require(cell.is_array() && cell.size() == 2, ErrorCode::InvalidInput,
              "matrix entries must be [re, im] pairs");
      m(i, k) = Complex(detail::as_number(cell[0], "re"), detail::as_number(cell[1], "im"));
    }
  }
  return m;
}

// ---- belief frames and tables ----

inline Json frame_to_json(const BeliefFrame& f) {
  Json j;
  j["n"] = f.size();
  j["p"] = vector_to_json(f.p());
  if (f.shared_contradiction())
    j["c"] = Json{{"shared", true}, {"s", f.declared_mass()}};
  else
    j["c"] = vector_to_json(f.c());
  j["complete"] = f.complete();
  return j;
}

inline BeliefFrame frame_from_json(const Json& j, double tol = kIdentifySlack) {
  const int n = detail::as_int(detail::member(j, "n"), "n");
  Eigen::VectorXd p = vector_from_json(detail::member(j, "p"), "p");
  require(static_cast<int>(p.size()) == n, ErrorCode::InvalidInput,
          "p length differs from n");
  bool complete = false;
  if (j.contains("complete")) {
    require(j["complete"].is_boolean(), ErrorCode::InvalidInput, "complete must be a boolean");
    complete = j["complete"].get<bool>();
  }
  const Json& c = detail::member(j, "c");
  if (c.is_object()) {
    require(c.contains("shared") && c["shared"].is_boolean() && c["shared"].get<bool>(),
            ErrorCode::InvalidInput, "c object form requires \"shared\": true");
    const double s = detail::as_number(detail::member(c, "s"), "s");
    return BeliefFrame::shared(std::move(p), s, tol);
  }
  Eigen::VectorXd cv = vector_from_json(c, "c");
  require(cv.size() == p.size(), ErrorCode::InvalidInput, "c length differs from n");
  return BeliefFrame::general(std::move(p), std::move(cv), complete, tol);
}

inline Json table_to_json(const ConditionalTable& t) {
  Json j;
  j["b"] = vector_to_json(t.b());
  if (t.has_companions()) {
    j["b_neg"] = vector_to_json(t.b_neg());
    j["b_contra"] = vector_to_json(t.b_contra());
  }
  return j;
}

inline ConditionalTable table_from_json(const Json& j) {
  Eigen::VectorXd b = vector_from_json(detail::member(j, "b"), "b");
  const bool has_neg = j.contains("b_neg");
  const bool has_contra = j.contains("b_contra");
  require(has_neg == has_contra, ErrorCode::InvalidInput,
          "b_neg and b_contra must be given together");
  if (!has_neg) return ConditionalTable::plain(std::move(b));
  return ConditionalTable::with_companions(std::move(b),
                                           vector_from_json(j["b_neg"], "b_neg"),
                                           vector_from_json(j["b_contra"], "b_contra"));
}

// ---- quantum objects ----

inline DensityOp density_from_json(const Json& j) {
  return DensityOp::validated(cmat_from_json(j));
}

inline Json sic_to_json(const SicSet& s) {
  return Json{{"d", s.dim()}, {"fiducial", cvec_to_json(s.fiducial())},
              {"tolerance", s.tolerance()}};
}

// Re-validates: rebuilding from the fiducial runs the full Gram check.
inline SicSet sic_from_json(const Json& j) {
  const int d = detail::as_int(detail::member(j, "d"), "d");
  const CVec phi = cvec_from_json(detail::member(j, "fiducial"), "fiducial");
  const double tol = detail::as_number(detail::member(j, "tolerance"), "tolerance");
  require(tol > 0.0, ErrorCode::InvalidInput, "tolerance must be positive");
  return sic_from_fiducial(phi, d, tol);
}

inline Json probvec_to_json(const SicProbVec& q) {
  return Json{{"d", q.dim()}, {"q", vector_to_json(q.q())}};
}

inline SicProbVec probvec_from_json(const Json& j) {
  const int d = detail::as_int(detail::member(j, "d"), "d");
  return SicProbVec::validated(d, vector_from_json(detail::member(j, "q"), "q"));
}

// ---- results ----

inline Json query_to_json(const QueryResult& q) {
  return Json{{"value", q.value},
              {"rule", q.rule},
              {"denominator", q.denominator},
              {"numerator_pb", q.numerator_pb},
              {"numerator_cb", q.numerator_cb}};
}

inline Json report_to_json(const CrossCheckReport& r) {
  return Json{{"d", r.d},
              {"trials", r.trials},
              {"skipped", r.skipped},
              {"max_abs_discrepancy_direct_vs_quantum_rule", r.max_dev_quantum},
              {"max_abs_discrepancy_direct_vs_pbpt_rule", r.max_dev_pbpt},
              {"contradiction_mass", r.contradiction_mass},
              {"tolerance", r.tolerance},
              {"seed", r.seed},
              {"pass", r.pass},
              {"no_data", r.no_data}};
}

inline Json witness_to_json(const GapWitness& w) {
  return Json{{"d", w.d},
              {"q", vector_to_json(w.q)},
              {"min_eigenvalue", w.min_eigenvalue},
              {"attempts", w.attempts}};
}

inline Json search_to_json(const SearchConfig& c, const SearchResult& r) {
  return Json{{"d", c.d},
              {"seed", c.seed},
              {"restarts", c.restarts},
              {"max_iters", c.max_iters},
              {"target_residual", c.target_residual},
              {"fiducial", cvec_to_json(r.fiducial)},
              {"sic_residual", r.sic_residual},
              {"frame_potential", r.frame_potential},
              {"restart_index", r.restart_index},
              {"iterations", r.iterations},
              {"converged", r.converged}};
}

// ---- files ----

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidInput, "cannot open '" + path + "'");
  Json j = Json::parse(in, nullptr, /*allow_exceptions=*/false);
  require(!j.is_discarded(), ErrorCode::InvalidInput, "malformed JSON in '" + path + "'");
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace paraprob
