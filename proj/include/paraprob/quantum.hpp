#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "paraprob/errors.hpp"
#include "paraprob/numeric.hpp"
#include "paraprob/rng.hpp"

namespace paraprob {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Desk scale; everything here is dense.
inline constexpr int kMaxDim = 64;

// Trace computations on nearly-PSD operators may dip this far below zero.
inline constexpr double kBornSlack = 1e-10;

// ---- expression-friendly helpers ----

// tr(a b) without forming the product.
template <typename DerivedA, typename DerivedB>
Complex trace_product(const Eigen::MatrixBase<DerivedA>& a,
                      const Eigen::MatrixBase<DerivedB>& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a,
                    const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

namespace detail {

inline void check_dim(int d) {
  require(d >= 2 && d <= kMaxDim, ErrorCode::BadDimension,
          "dimension must lie in [2, " + std::to_string(kMaxDim) + "]");
}

inline double born_value(const CMat& effect, const CMat& state) {
  const Complex tr = trace_product(effect, state);
  require(std::abs(tr.imag()) <= kValidationSlack, ErrorCode::InternalCheck,
          "trace of effect * state has a non-negligible imaginary part");
  const double v = tr.real();
  require(v >= -kBornSlack && v <= 1.0 + kBornSlack, ErrorCode::InternalCheck,
          "outcome probability outside [0, 1] beyond tolerance");
  return clamp01(v);
}

}  // namespace detail

// ---- domain types ----

// Unit-trace positive-semidefinite operator (state).
class DensityOp {
 public:
  static DensityOp validated(CMat m, double herm_tol = 1e-12, double trace_tol = 1e-12,
                             double psd_tol = 1e-10) {
    require(m.rows() == m.cols(), ErrorCode::BadDimension, "state matrix must be square");
    detail::check_dim(static_cast<int>(m.rows()));
    require(hermiticity_defect(m) <= herm_tol, ErrorCode::NotHermitian,
            "state is not Hermitian within tolerance");
    require(std::abs(m.trace().real() - 1.0) <= trace_tol &&
                std::abs(m.trace().imag()) <= trace_tol,
            ErrorCode::NotNormalized, "state trace differs from one");
    Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
    require(es.eigenvalues()(0) >= -psd_tol, ErrorCode::OutOfRange,
            "state has an eigenvalue below -" + std::to_string(psd_tol));
    return DensityOp(std::move(m));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const { return m_; }

 private:
  explicit DensityOp(CMat m) : m_(std::move(m)) {}
  CMat m_;
};

// Rank-one orthogonal projector.
class Projector {
 public:
  static Projector validated(CMat m, double herm_tol = 1e-12, double idem_tol = 1e-10,
                             double trace_tol = 1e-12) {
    require(m.rows() == m.cols(), ErrorCode::BadDimension, "projector matrix must be square");
    detail::check_dim(static_cast<int>(m.rows()));
    require(hermiticity_defect(m) <= herm_tol, ErrorCode::NotHermitian,
            "projector is not Hermitian within tolerance");
    require(max_abs_diff(m * m, m) <= idem_tol, ErrorCode::InvalidInput,
            "operator is not idempotent within tolerance");
    require(std::abs(m.trace().real() - 1.0) <= trace_tol, ErrorCode::NotNormalized,
            "projector trace differs from one (rank one required)");
    return Projector(std::move(m));
  }

  // |v><v| for a unit vector v.
  static Projector from_state(const CVec& v, double norm_tol = kValidationSlack) {
    detail::check_dim(static_cast<int>(v.size()));
    const double nrm = v.norm();
    require(std::abs(nrm - 1.0) <= norm_tol, ErrorCode::NotNormalized,
            "state vector is not unit length");
    const CVec u = v / nrm;
    return Projector(u * u.adjoint());
  }

  DensityOp as_density() const { return DensityOp::validated(m_); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const { return m_; }

 private:
  explicit Projector(CMat m) : m_(std::move(m)) {}
  CMat m_;
};

// ---- Weyl-Heisenberg displacements ----

// D_{jk} = tau^{jk} X^j Z^k with tau = -exp(i pi / d), X the cyclic shift and
// Z = diag(omega^m), omega = exp(2 pi i / d). Entries: D[(m+j) mod d, m] =
// tau^{jk} omega^{mk}.
inline CMat wh_displacement(int d, int j, int k) {
  detail::check_dim(d);
  require(j >= 0 && j < d && k >= 0 && k < d, ErrorCode::BadIndex,
          "displacement indices must lie in [0, d)");
  // tau = exp(i pi (d+1)/d) has order 2d
  const long long e = (static_cast<long long>(j) * k) % (2LL * d);
  const Complex tau_jk =
      std::polar(1.0, std::numbers::pi * static_cast<double>((d + 1) * e) / d);
  CMat m = CMat::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const Complex omega_mk =
        std::polar(1.0, 2.0 * std::numbers::pi *
                            static_cast<double>((static_cast<long long>(col) * k) % d) / d);
    m((col + j) % d, col) = tau_jk * omega_mk;
  }
  return m;
}

// ---- SIC sets ----

inline bool has_builtin_fiducial(int d) { return d == 2 || d == 3; }

// Closed-form fiducial vectors, phase-fixed so the first nonzero component is
// real and positive. Validated by the Gram check in every construction that
// uses them.
inline CVec builtin_fiducial(int d) {
  CVec phi;
  switch (d) {
    case 2: {
      const double s3 = std::sqrt(3.0);
      phi.resize(2);
      phi[0] = Complex(std::sqrt((1.0 + 1.0 / s3) / 2.0), 0.0);
      phi[1] = std::polar(std::sqrt((1.0 - 1.0 / s3) / 2.0), std::numbers::pi / 4.0);
      return phi;
    }
    case 3: {
      const double r = 1.0 / std::sqrt(2.0);
      phi.resize(3);
      phi[0] = Complex(0.0, 0.0);
      phi[1] = Complex(r, 0.0);
      phi[2] = Complex(-r, 0.0);
      return phi;
    }
    default:
      throw Error(ErrorCode::NotFound, "no built-in fiducial for d = " + std::to_string(d));
  }
}

// d^2 rank-one projectors with uniform pairwise overlap 1/(d+1); together
// they resolve the identity as sum_k Pi_k = d I.
class SicSet {
 public:
  // Orbit of the fiducial under the displacements, indexed k-major within j:
  // Pi_{j d + k} = D_{jk} |phi><phi| D_{jk}^dag, so Pi_0 = |phi><phi|.
  static SicSet from_fiducial(const CVec& phi, double tol = 1e-12) {
    const int d = static_cast<int>(phi.size());
    detail::check_dim(d);
    require(std::abs(phi.norm() - 1.0) <= kValidationSlack, ErrorCode::NotNormalized,
            "fiducial is not unit length");

    std::vector<CVec> states;
    states.reserve(static_cast<std::size_t>(d) * d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) states.push_back(wh_displacement(d, j, k) * phi);

    const double target = 1.0 / (d + 1.0);
    double residual = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a)
      for (std::size_t b = a; b < states.size(); ++b) {
        const double overlap = std::norm(states[a].dot(states[b]));
        const double want = (a == b) ? 1.0 : target;
        residual = std::max(residual, std::abs(overlap - want));
      }
    require(residual <= tol, ErrorCode::NotSic,
            "Gram residual " + std::to_string(residual) + " exceeds tolerance");

    std::vector<Projector> projectors;
    projectors.reserve(states.size());
    CMat total = CMat::Zero(d, d);
    for (const CVec& s : states) {
      projectors.push_back(Projector::from_state(s));
      total += projectors.back().matrix();
    }
    require(max_abs_diff(total, static_cast<double>(d) * CMat::Identity(d, d)) <= tol,
            ErrorCode::NotSic, "projectors do not resolve the identity within tolerance");

    return SicSet(d, phi, std::move(projectors), tol, residual);
  }

  int dim() const { return d_; }
  int count() const { return d_ * d_; }
  const Projector& projector(int k) const {
    require(k >= 0 && k < count(), ErrorCode::BadIndex, "projector index out of range");
    return projectors_[static_cast<std::size_t>(k)];
  }
  const std::vector<Projector>& projectors() const { return projectors_; }
  const CVec& fiducial() const { return fiducial_; }
  double tolerance() const { return tol_; }
  double gram_residual() const { return residual_; }

 private:
  SicSet(int d, CVec fiducial, std::vector<Projector> projectors, double tol, double residual)
      : d_(d), fiducial_(std::move(fiducial)), projectors_(std::move(projectors)), tol_(tol),
        residual_(residual) {}

  int d_;
  CVec fiducial_;
  std::vector<Projector> projectors_;
  double tol_;
  double residual_;
};

inline SicSet sic_from_fiducial(const CVec& phi, int d, double tol = 1e-12) {
  require(static_cast<int>(phi.size()) == d, ErrorCode::DimensionMismatch,
          "fiducial length differs from d");
  return SicSet::from_fiducial(phi, tol);
}

inline SicSet builtin_sic(int d) { return SicSet::from_fiducial(builtin_fiducial(d), 1e-12); }

// Vector of SIC outcome probabilities; entries in [0, 1] with total mass d.
class SicProbVec {
 public:
  static SicProbVec validated(int d, Eigen::VectorXd q, double mass_tol = 1e-10,
                              double range_tol = kValidationSlack) {
    detail::check_dim(d);
    require(q.size() == static_cast<Eigen::Index>(d) * d, ErrorCode::BadDimension,
            "probability vector must have d^2 entries");
    for (Eigen::Index k = 0; k < q.size(); ++k)
      require(in_unit_interval(q[k], range_tol), ErrorCode::OutOfRange,
              "q[" + std::to_string(k) + "] outside [0, 1]");
    require(std::abs(ordered_sum(q) - static_cast<double>(d)) <= mass_tol,
            ErrorCode::MassMismatch, "probabilities must sum to d");
    return SicProbVec(d, std::move(q));
  }

  int dim() const { return d_; }
  const Eigen::VectorXd& q() const { return q_; }

 private:
  SicProbVec(int d, Eigen::VectorXd q) : d_(d), q_(std::move(q)) {}
  int d_;
  Eigen::VectorXd q_;
};

// ---- operations ----

// Outcome probability tr(Pi rho).
inline double born(const DensityOp& rho, const Projector& pi) {
  require(rho.dim() == pi.dim(), ErrorCode::DimensionMismatch,
          "state and effect dimensions differ");
  return detail::born_value(pi.matrix(), rho.matrix());
}

// Transition functional tr(sigma rho) for a general (possibly mixed) effect.
inline double born(const DensityOp& rho, const DensityOp& sigma) {
  require(rho.dim() == sigma.dim(), ErrorCode::DimensionMismatch,
          "state and effect dimensions differ");
  return detail::born_value(sigma.matrix(), rho.matrix());
}

inline SicProbVec sic_probs(const DensityOp& rho, const SicSet& sic) {
  require(rho.dim() == sic.dim(), ErrorCode::DimensionMismatch,
          "state and SIC dimensions differ");
  Eigen::VectorXd q(sic.count());
  for (int k = 0; k < sic.count(); ++k) q[k] = born(rho, sic.projector(k));
  return SicProbVec::validated(sic.dim(), std::move(q));
}

// State reconstruction [(d+1)/d] sum_k q_k Pi_k - (1/d) sum_k Pi_k. The
// result is Hermitian with unit trace but need not be positive semidefinite;
// promotion to DensityOp is a separate validation step.
inline CMat reconstruct(const SicProbVec& q, const SicSet& sic) {
  require(q.dim() == sic.dim(), ErrorCode::DimensionMismatch,
          "probability vector and SIC dimensions differ");
  const int d = sic.dim();
  CMat weighted = CMat::Zero(d, d);
  CMat plain = CMat::Zero(d, d);
  for (int k = 0; k < sic.count(); ++k) {
    weighted += q.q()[k] * sic.projector(k).matrix();
    plain += sic.projector(k).matrix();
  }
  const double dd = static_cast<double>(d);
  CMat m = ((dd + 1.0) / dd) * weighted - plain / dd;

  require(hermiticity_defect(m) <= 1e-10, ErrorCode::InternalCheck,
          "reconstruction lost hermiticity");
  const double mass_gap = std::abs(ordered_sum(q.q()) - dd);
  require(std::abs(m.trace().real() - 1.0) <= 1e-12 + 2.0 * mass_gap * (dd + 1.0) / dd,
          ErrorCode::InternalCheck, "reconstruction lost the unit trace");
  return m;
}

// Quantum total probability rule: [(d+1)/d] sum_k q_k t_k - (1/d) sum_k t_k,
// with t_k = tr(sigma Pi_k) the transition probabilities to the effect.
inline double quantum_total(const SicProbVec& q, const Eigen::VectorXd& t) {
  require(t.size() == q.q().size(), ErrorCode::DimensionMismatch,
          "t must have d^2 entries");
  for (Eigen::Index k = 0; k < t.size(); ++k)
    require(in_unit_interval(t[k]), ErrorCode::OutOfRange,
            "t[" + std::to_string(k) + "] outside [0, 1]");
  const double d = static_cast<double>(q.dim());
  return ((d + 1.0) / d) * ordered_dot(q.q(), t) - ordered_sum(t) / d;
}

// Minimum eigenvalue of a Hermitian operator; negative values witness
// non-physical reconstructions.
inline double physicality(const CMat& m, double herm_tol = 1e-10) {
  require(m.rows() == m.cols(), ErrorCode::BadDimension, "matrix must be square");
  require(hermiticity_defect(m) <= herm_tol, ErrorCode::NotHermitian,
          "matrix is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Ginibre state: G G^dag normalized to unit trace, entries drawn row-major.
inline DensityOp random_density(int d, Rng& rng) {
  detail::check_dim(d);
  CMat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.cnormal();
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOp::validated(rho);
}

inline DensityOp random_density(int d, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(d, rng);
}

// Haar-like random unit vector (normalized complex Gaussian).
inline CVec random_state(int d, Rng& rng) {
  detail::check_dim(d);
  CVec v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.cnormal();
  v /= v.norm();
  return v;
}

}  // namespace paraprob
