#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

#include "paraprob/errors.hpp"
#include "paraprob/numeric.hpp"
#include "paraprob/rational.hpp"

namespace paraprob {

// Numerical core of the paraconsistent probability calculus. A belief
// assignment carries, for each hypothesis A_k, the probability p_k of A_k and
// the probability c_k of its contradictoriness; the non-contradictory part
// carries mass p_k - c_k. All rule evaluations are pure; frames and tables
// are immutable once validated.

// -----------------------------------------------------------------------
// belief frames
// -----------------------------------------------------------------------

// Mass of the single shared contradiction proposition when all hypotheses are
// simultaneously contradictory or not: c = (s - 1) / (n - 1), where s is the
// total mass assigned to the n hypotheses.
inline double shared_contradiction_mass(int n, double s) {
  require(n >= 2, ErrorCode::InvalidMass, "shared contradiction needs n >= 2");
  require(s >= 1.0 - kValidationSlack && s <= static_cast<double>(n) + kValidationSlack,
          ErrorCode::InvalidMass, "total mass must lie in [1, n]");
  return (s - 1.0) / (static_cast<double>(n) - 1.0);
}

// Same quantity in exact arithmetic.
inline Rational shared_contradiction_mass_exact(long long n, const Rational& s) {
  require(n >= 2, ErrorCode::InvalidMass, "shared contradiction needs n >= 2");
  require(Rational(1) <= s && s <= Rational(n), ErrorCode::InvalidMass,
          "total mass must lie in [1, n]");
  return (s - Rational(1)) / Rational(n - 1);
}

class BeliefFrame {
 public:
  // Heterogeneous contradiction masses. When `complete` is set and every c_k
  // is exactly zero the hypothesis masses must sum to one; for nonzero c_k no
  // joint completeness condition is enforced (only the shared-contradiction
  // model has a closed form for it).
  static BeliefFrame general(Eigen::VectorXd p, Eigen::VectorXd c, bool complete = false,
                             double tol = kValidationSlack) {
    require(p.size() >= 1, ErrorCode::InvalidFrame, "frame needs at least one hypothesis");
    require(p.size() == c.size(), ErrorCode::InvalidFrame, "p and c sizes differ");
    check_entries(p, c, tol);
    bool zero_c = true;
    for (Eigen::Index k = 0; k < c.size(); ++k) zero_c = zero_c && c[k] == 0.0;
    if (complete && zero_c)
      require(std::abs(ordered_sum(p) - 1.0) <= tol, ErrorCode::InvalidFrame,
              "complete classical frame must have unit total mass");
    return BeliefFrame(std::move(p), std::move(c), false, complete,
                       std::numeric_limits<double>::quiet_NaN());
  }

  // Single shared contradiction proposition: c_k = (s - 1)/(n - 1) for all k,
  // and the non-contradictory masses together with c exhaust the unit
  // (equivalently, sum(p) = s).
  static BeliefFrame shared(Eigen::VectorXd p, double s, double tol = kValidationSlack) {
    const Eigen::Index n = p.size();
    require(n >= 2, ErrorCode::InvalidFrame, "shared-contradiction frame needs n >= 2");
    const double c = shared_contradiction_mass(static_cast<int>(n), s);
    Eigen::VectorXd cv = Eigen::VectorXd::Constant(n, c);
    check_entries(p, cv, tol, /*conflict_on_excess=*/true);
    require(std::abs(ordered_sum(p) - s) <= tol, ErrorCode::InvalidFrame,
            "shared-contradiction frame must satisfy sum(p) = s (completeness)");
    return BeliefFrame(std::move(p), std::move(cv), true, true, s);
  }

  static BeliefFrame classical(Eigen::VectorXd p, bool complete = true,
                               double tol = kValidationSlack) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(p.size());
    return general(std::move(p), std::move(c), complete, tol);
  }

  Eigen::Index size() const { return p_.size(); }
  const Eigen::VectorXd& p() const { return p_; }
  const Eigen::VectorXd& c() const { return c_; }
  bool shared_contradiction() const { return shared_; }
  bool complete() const { return complete_; }

  // Declared total mass S; shared frames only.
  double declared_mass() const {
    require(shared_, ErrorCode::InvalidFrame, "declared_mass() on non-shared frame");
    return s_;
  }
  // The shared contradiction mass c; shared frames only.
  double contradiction_mass() const {
    require(shared_, ErrorCode::InvalidFrame, "contradiction_mass() on non-shared frame");
    return c_[0];
  }

 private:
  BeliefFrame(Eigen::VectorXd p, Eigen::VectorXd c, bool shared, bool complete, double s)
      : p_(std::move(p)), c_(std::move(c)), shared_(shared), complete_(complete), s_(s) {}

  static void check_entries(const Eigen::VectorXd& p, const Eigen::VectorXd& c, double tol,
                            bool conflict_on_excess = false) {
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      require(in_unit_interval(p[k], tol), ErrorCode::InvalidFrame,
              "p[" + std::to_string(k) + "] outside [0, 1]");
      require(std::isfinite(c[k]) && c[k] >= -tol, ErrorCode::InvalidFrame,
              "c[" + std::to_string(k) + "] negative");
      require(c[k] <= p[k] + tol,
              conflict_on_excess ? ErrorCode::FrameConflict : ErrorCode::InvalidFrame,
              "c[" + std::to_string(k) + "] exceeds p[" + std::to_string(k) +
                  "] (contradictoriness is a conjunct of the hypothesis)");
    }
  }

  Eigen::VectorXd p_, c_;
  bool shared_ = false;
  bool complete_ = false;
  double s_ = 0.0;
};

// -----------------------------------------------------------------------
// conditional tables
// -----------------------------------------------------------------------

// Per-hypothesis conditionals b_k for some proposition B given the
// non-contradictory part of A_k. Optional companion columns carry the
// conditionals of not-B and of the contradictoriness of B; per hypothesis
// they must close under the sum rule, b + b_neg - b_contra = 1.
class ConditionalTable {
 public:
  static ConditionalTable plain(Eigen::VectorXd b, double tol = kValidationSlack) {
    check_range(b, "b", tol);
    return ConditionalTable(std::move(b), {}, {}, false);
  }

  static ConditionalTable with_companions(Eigen::VectorXd b, Eigen::VectorXd b_neg,
                                          Eigen::VectorXd b_contra,
                                          double tol = kValidationSlack) {
    require(b.size() == b_neg.size() && b.size() == b_contra.size(), ErrorCode::InvalidTable,
            "companion column sizes differ");
    check_range(b, "b", tol);
    check_range(b_neg, "b_neg", tol);
    check_range(b_contra, "b_contra", tol);
    for (Eigen::Index k = 0; k < b.size(); ++k)
      require(std::abs(b[k] + b_neg[k] - b_contra[k] - 1.0) <= tol, ErrorCode::InvalidTable,
              "row " + std::to_string(k) + " violates the per-hypothesis sum rule");
    return ConditionalTable(std::move(b), std::move(b_neg), std::move(b_contra), true);
  }

  Eigen::Index size() const { return b_.size(); }
  const Eigen::VectorXd& b() const { return b_; }
  bool has_companions() const { return companions_; }
  const Eigen::VectorXd& b_neg() const {
    require(companions_, ErrorCode::InvalidTable, "table has no companion columns");
    return b_neg_;
  }
  const Eigen::VectorXd& b_contra() const {
    require(companions_, ErrorCode::InvalidTable, "table has no companion columns");
    return b_contra_;
  }

 private:
  ConditionalTable(Eigen::VectorXd b, Eigen::VectorXd b_neg, Eigen::VectorXd b_contra,
                   bool companions)
      : b_(std::move(b)), b_neg_(std::move(b_neg)), b_contra_(std::move(b_contra)),
        companions_(companions) {}

  static void check_range(const Eigen::VectorXd& v, const char* name, double tol) {
    require(v.size() >= 1, ErrorCode::InvalidTable, "table needs at least one row");
    for (Eigen::Index k = 0; k < v.size(); ++k)
      require(in_unit_interval(v[k], tol), ErrorCode::InvalidTable,
              std::string(name) + "[" + std::to_string(k) + "] outside [0, 1]");
  }

  Eigen::VectorXd b_, b_neg_, b_contra_;
  bool companions_ = false;
};

struct QueryResult {
  double value = 0.0;
  double denominator = 0.0;    // sum_k (p_k - c_k)
  double numerator_pb = 0.0;   // sum_k p_k b_k
  double numerator_cb = 0.0;   // sum_k c_k b_k
  std::string rule;
};

// -----------------------------------------------------------------------
// elementary rules
// -----------------------------------------------------------------------

inline double product_rule(double p_a, double p_b_given_a) {
  require(in_unit_interval(p_a), ErrorCode::OutOfRange, "p_a outside [0, 1]");
  require(in_unit_interval(p_b_given_a), ErrorCode::OutOfRange, "p_b_given_a outside [0, 1]");
  return p_a * p_b_given_a;
}

inline double bayes(double prior, double likelihood, double evidence) {
  require(in_unit_interval(prior), ErrorCode::OutOfRange, "prior outside [0, 1]");
  require(in_unit_interval(likelihood), ErrorCode::OutOfRange, "likelihood outside [0, 1]");
  require(in_unit_interval(evidence), ErrorCode::OutOfRange, "evidence outside [0, 1]");
  require(evidence > kValidationSlack, ErrorCode::ZeroEvidence,
          "conditioning on an event of zero probability");
  const double posterior = prior * likelihood / evidence;
  require(posterior <= 1.0 + kValidationSlack, ErrorCode::Incoherent,
          "posterior exceeds one: prior * likelihood > evidence");
  return clamp01(posterior);
}

// Residual of the sum rule p(A) + p(not A) - p(contra A) = 1; zero signals a
// coherent assignment. Total on its inputs.
inline double sum_rule_residual(double p_a, double p_not_a, double p_contra_a) {
  return p_a + p_not_a - p_contra_a - 1.0;
}

inline double extended_sum(double p_a, double p_b, double p_ab) {
  require(in_unit_interval(p_a), ErrorCode::OutOfRange, "p_a outside [0, 1]");
  require(in_unit_interval(p_b), ErrorCode::OutOfRange, "p_b outside [0, 1]");
  require(in_unit_interval(p_ab), ErrorCode::OutOfRange, "p_ab outside [0, 1]");
  require(p_ab <= std::min(p_a, p_b) + kValidationSlack, ErrorCode::Incoherent,
          "p(A,B) exceeds a marginal");
  const double v = p_a + p_b - p_ab;
  require(v >= -kValidationSlack && v <= 1.0 + kValidationSlack, ErrorCode::Incoherent,
          "p(A+B) outside [0, 1]");
  return clamp01(v);
}

// -----------------------------------------------------------------------
// frame-level rules
// -----------------------------------------------------------------------

// Masses of the non-contradictory parts, p_k - c_k. Validation admits c_k up
// to slack above p_k, so slack-level negatives are pinned to zero.
inline Eigen::VectorXd nc_part_mass(const BeliefFrame& f) {
  Eigen::VectorXd pt(f.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) pt[k] = std::max(f.p()[k] - f.c()[k], 0.0);
  return pt;
}

// Probability of the disjunction of the non-contradictory parts, assuming the
// caller declared them mutually exclusive: sum_k p_k - sum_k c_k.
inline double disjunction_nc(const BeliefFrame& f) {
  const double v = ordered_sum(nc_part_mass(f));
  require(v >= -kValidationSlack && v <= 1.0 + kValidationSlack, ErrorCode::Incoherent,
          "mass of the non-contradictory disjunction outside [0, 1]");
  return v;
}

namespace detail {

inline QueryResult total_probability_on(const BeliefFrame& f, const Eigen::VectorXd& b) {
  const Eigen::Index n = f.size();
  Eigen::VectorXd pt(n);
  double clamp_amount = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double d = f.p()[k] - f.c()[k];
    pt[k] = std::max(d, 0.0);
    clamp_amount += std::max(-d, 0.0);
  }
  const double denom = ordered_sum(pt);
  require(denom > 0.0, ErrorCode::DegenerateFrame,
          "all hypothesis mass is contradictory; conditioning is undefined");

  const double num_convex = ordered_dot(pt, b);
  const double num_pb = ordered_dot(f.p(), b);
  const double num_cb = ordered_dot(f.c(), b);

  const double v_convex = num_convex / denom;
  const double v_direct = (num_pb - num_cb) / denom;

  // The two routes are algebraically identical; they may differ only by
  // rounding, amplified when the numerator cancels against its terms, plus
  // any slack-level clamping above.
  const double scale = std::max(1.0, (std::abs(num_pb) + std::abs(num_cb)) / denom);
  require(std::abs(v_direct - v_convex) <= 1e-14 * scale + clamp_amount / denom,
          ErrorCode::InternalCheck, "total-probability routes disagree");

  QueryResult out;
  out.value = clamp01(v_convex);
  out.denominator = denom;
  out.numerator_pb = num_pb;
  out.numerator_cb = num_cb;
  out.rule = "pbpt-total-probability";
  return out;
}

}  // namespace detail

// Total probability of B conditional on the disjunction of the
// non-contradictory parts:
//   [sum_k p_k b_k - sum_k c_k b_k] / sum_k (p_k - c_k),
// equal to the convex combination of the b_k with weights p_k - c_k.
inline QueryResult total_probability(const BeliefFrame& f, const ConditionalTable& t) {
  require(f.size() == t.size(), ErrorCode::InvalidTable, "frame and table sizes differ");
  return detail::total_probability_on(f, t.b());
}

// Classical total probability over a complete set of exclusive hypotheses.
inline double classical_total(const Eigen::VectorXd& p, const Eigen::VectorXd& b) {
  require(p.size() == b.size(), ErrorCode::BadDimension, "p and b sizes differ");
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    require(in_unit_interval(p[k]), ErrorCode::OutOfRange, "p entry outside [0, 1]");
    require(in_unit_interval(b[k]), ErrorCode::OutOfRange, "b entry outside [0, 1]");
  }
  require(std::abs(ordered_sum(p) - 1.0) <= kValidationSlack, ErrorCode::NotNormalized,
          "hypothesis masses must sum to one");
  return ordered_dot(p, b);
}

// Total probability over n hypotheses carrying a single shared contradiction
// with total hypothesis mass S = sum_k p_k:
//   [(n-1)/(n-S)] sum_k p_k b_k - [(S-1)/(n-S)] sum_k b_k.
// Cross-checked internally against the frame route.
inline double toy_model_total(const Eigen::VectorXd& p, const Eigen::VectorXd& b) {
  require(p.size() == b.size(), ErrorCode::BadDimension, "p and b sizes differ");
  const double n = static_cast<double>(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    require(in_unit_interval(p[k]), ErrorCode::OutOfRange, "p entry outside [0, 1]");
    require(in_unit_interval(b[k]), ErrorCode::OutOfRange, "b entry outside [0, 1]");
  }
  const double s = ordered_sum(p);
  require(s >= 1.0 - kValidationSlack, ErrorCode::InvalidMass,
          "total mass below one gives a negative contradiction mass");
  require(n - s > kValidationSlack, ErrorCode::DegenerateModel,
          "total mass equals the hypothesis count; no non-contradictory mass left");
  const double pb = ordered_dot(p, b);
  const double sb = ordered_sum(b);
  const double v = ((n - 1.0) / (n - s)) * pb - ((s - 1.0) / (n - s)) * sb;

  // Same prediction through the explicit shared-contradiction frame. A mass
  // vector admitting no such frame (some p_k below c) surfaces FrameConflict.
  const QueryResult q =
      detail::total_probability_on(BeliefFrame::shared(p, s), b);
  require(std::abs(v - q.value) <= 1e-12, ErrorCode::InternalCheck,
          "closed form disagrees with the frame route");
  return v;
}

// The same rule at the quantum-matched point n = d^2, S = d:
//   [(d+1)/d] sum_k q_k t_k - (1/d) sum_k t_k.
inline double quantum_matched_total(int d, const Eigen::VectorXd& q,
                                    const Eigen::VectorXd& t) {
  require(d >= 2, ErrorCode::BadDimension, "dimension must be at least 2");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  require(q.size() == n && t.size() == n, ErrorCode::BadDimension,
          "q and t must have d^2 entries");
  for (Eigen::Index k = 0; k < n; ++k) {
    require(in_unit_interval(q[k]), ErrorCode::OutOfRange, "q entry outside [0, 1]");
    require(in_unit_interval(t[k]), ErrorCode::OutOfRange, "t entry outside [0, 1]");
  }
  require(std::abs(ordered_sum(q) - static_cast<double>(d)) <= 1e-10, ErrorCode::MassMismatch,
          "q must carry total mass d");
  const double dd = static_cast<double>(d);
  return ((dd + 1.0) / dd) * ordered_dot(q, t) - ordered_sum(t) / dd;
}

// Residual of the sum rule across the three conditional outputs
// (B, not-B, contradictoriness-of-B); zero by linearity of the rule.
inline double closure_check(const BeliefFrame& f, const ConditionalTable& t) {
  require(t.has_companions(), ErrorCode::InvalidTable,
          "closure check needs the companion columns");
  require(f.size() == t.size(), ErrorCode::InvalidTable, "frame and table sizes differ");
  const double vb = detail::total_probability_on(f, t.b()).value;
  const double vn = detail::total_probability_on(f, t.b_neg()).value;
  const double vc = detail::total_probability_on(f, t.b_contra()).value;
  return vb + vn - vc - 1.0;
}

}  // namespace paraprob
