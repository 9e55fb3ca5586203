#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "paraprob/errors.hpp"
#include "paraprob/numeric.hpp"
#include "paraprob/quantum.hpp"
#include "paraprob/rng.hpp"

namespace paraprob {

// Search for fiducial vectors whose displacement orbit forms a SIC set. The
// objective is the frame potential sum_{D != I} |<phi|D phi>|^4, smooth on the
// sphere and minimized exactly at (d-1)/(d+1) by fiducials; convergence is
// judged on the max Gram deviation, which is the operationally meaningful
// quantity.

struct SearchConfig {
  int d = 2;
  std::uint64_t seed = 1;
  int restarts = 24;
  int max_iters = 2000;
  double target_residual = 1e-9;
};

struct SearchResult {
  CVec fiducial;
  double sic_residual = std::numeric_limits<double>::infinity();
  double frame_potential = std::numeric_limits<double>::infinity();
  int restart_index = -1;
  int iterations = 0;
  bool converged = false;
  // Frame-potential values of the accepted iterates of the winning restart;
  // non-increasing by construction.
  std::vector<double> objective_history;
};

namespace detail {

inline std::vector<CMat> nontrivial_displacements(int d) {
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(d) * d - 1);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j == 0 && k == 0) continue;
      out.push_back(wh_displacement(d, j, k));
    }
  return out;
}

// Residuals r_D = |<phi|D phi>|^2 - 1/(d+1) at unit phi, and optionally the
// Jacobian with respect to the 2d real coordinates (Re phi, Im phi). With
// m = <phi|D phi> the ambient derivative of |<psi/|psi||D psi/|psi|>|^2 at
// |psi| = 1 is 2 Re/Im of  w = conj(m) D phi + m D^dag phi - 2 |m|^2 phi.
inline void residual_system(const std::vector<CMat>& ds, const CVec& phi, Eigen::VectorXd& r,
                            Eigen::MatrixXd* jac) {
  const int d = static_cast<int>(phi.size());
  const int n = static_cast<int>(ds.size());
  const double target = 1.0 / (d + 1.0);
  r.resize(n);
  if (jac) jac->resize(n, 2 * d);
  for (int i = 0; i < n; ++i) {
    const CVec dphi = ds[static_cast<std::size_t>(i)] * phi;
    const Complex m = phi.dot(dphi);
    r[i] = std::norm(m) - target;
    if (jac) {
      const CVec dtphi = ds[static_cast<std::size_t>(i)].adjoint() * phi;
      const CVec w = std::conj(m) * dphi + m * dtphi - 2.0 * std::norm(m) * phi;
      jac->row(i).head(d) = 2.0 * w.real().transpose();
      jac->row(i).tail(d) = 2.0 * w.imag().transpose();
    }
  }
}

// Multiplies by a global phase so the first component with non-negligible
// magnitude is real and positive.
inline CVec fix_global_phase(CVec phi) {
  const double ref = phi.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < phi.size(); ++i) {
    if (std::abs(phi[i]) > 1e-9 * ref) {
      phi *= std::conj(phi[i]) / std::abs(phi[i]);
      phi[i] = Complex(std::abs(phi[i]), 0.0);
      break;
    }
  }
  return phi;
}

struct RestartOutcome {
  CVec phi;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;
};

// Levenberg-Marquardt descent on the residual system, with the candidate
// renormalized after every step. On the unit sphere sum r_D^2 equals the
// frame potential minus its lower bound, so accepting only strict decreases
// keeps the recorded frame-potential trace monotone.
inline RestartOutcome run_restart(const std::vector<CMat>& ds, int d, Rng& rng, int max_iters,
                                  double target) {
  const double fp_floor = (d - 1.0) / (d + 1.0);
  CVec phi = random_state(d, rng);

  Eigen::VectorXd r;
  residual_system(ds, phi, r, nullptr);
  double obj = r.squaredNorm();

  RestartOutcome out;
  out.history.push_back(obj + fp_floor);

  double lambda = 1e-3;
  Eigen::MatrixXd jac;
  int it = 0;
  for (; it < max_iters; ++it) {
    if (r.cwiseAbs().maxCoeff() <= target) {
      out.converged = true;
      break;
    }
    residual_system(ds, phi, r, &jac);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd g = jac.transpose() * r;

    bool accepted = false;
    for (int attempt = 0; attempt < 60; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      CVec cand = phi;
      cand.real() += step.head(d);
      cand.imag() += step.tail(d);
      cand /= cand.norm();

      Eigen::VectorXd rc;
      residual_system(ds, cand, rc, nullptr);
      const double oc = rc.squaredNorm();
      if (oc < obj) {
        phi = cand;
        r = rc;
        obj = oc;
        out.history.push_back(obj + fp_floor);
        lambda = std::max(lambda / 3.0, 1e-14);
        accepted = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e14) break;
    }
    if (!accepted) break;  // stalled in a local basin
  }
  out.iterations = it;
  out.phi = fix_global_phase(phi);
  residual_system(ds, out.phi, r, nullptr);
  out.residual = r.cwiseAbs().maxCoeff();
  out.converged = out.residual <= target;
  return out;
}

}  // namespace detail

// Frame potential sum over nontrivial displacements of |<phi|D phi>|^4.
// Bounded below by (d-1)/(d+1) with equality exactly at fiducials.
inline double frame_potential(const CVec& phi, int d) {
  require(static_cast<int>(phi.size()) == d, ErrorCode::DimensionMismatch,
          "vector length differs from d");
  detail::check_dim(d);
  require(std::abs(phi.norm() - 1.0) <= kValidationSlack, ErrorCode::NotNormalized,
          "frame potential is defined on unit vectors");
  double total = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j == 0 && k == 0) continue;
      const double x = std::norm(phi.dot(wh_displacement(d, j, k) * phi));
      total += x * x;
    }
  return total;
}

// Maximum deviation of the squared overlaps |<phi|D phi>|^2 from 1/(d+1).
inline double sic_residual(const CVec& phi, int d) {
  require(static_cast<int>(phi.size()) == d, ErrorCode::DimensionMismatch,
          "vector length differs from d");
  detail::check_dim(d);
  require(std::abs(phi.norm() - 1.0) <= kValidationSlack, ErrorCode::NotNormalized,
          "SIC residual is defined on unit vectors");
  const double target = 1.0 / (d + 1.0);
  double worst = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j == 0 && k == 0) continue;
      const double x = std::norm(phi.dot(wh_displacement(d, j, k) * phi));
      worst = std::max(worst, std::abs(x - target));
    }
  return worst;
}

// Independent seeded local descents; returns the restart with the smallest
// residual (ties to the lowest restart index). Deterministic in the config:
// every restart derives its stream from (seed, restart index), and the
// reduction scans restarts in order. A result with converged = false is the
// no-convergence outcome; the caller decides what to do with the best point.
inline SearchResult optimize(const SearchConfig& config) {
  require(config.d >= 2 && config.d <= 8, ErrorCode::InvalidConfig,
          "supported dimensions are 2..8");
  require(config.restarts >= 1, ErrorCode::InvalidConfig, "restarts must be >= 1");
  require(config.max_iters >= 1, ErrorCode::InvalidConfig, "max_iters must be >= 1");
  require(config.target_residual > 0.0, ErrorCode::InvalidConfig,
          "target residual must be positive");

  const std::vector<CMat> ds = detail::nontrivial_displacements(config.d);

  SearchResult best;
  for (int rst = 0; rst < config.restarts; ++rst) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(rst)));
    detail::RestartOutcome out =
        detail::run_restart(ds, config.d, rng, config.max_iters, config.target_residual);
    if (out.residual < best.sic_residual) {
      best.fiducial = out.phi;
      best.sic_residual = out.residual;
      best.restart_index = rst;
      best.iterations = out.iterations;
      best.converged = out.converged;
      best.objective_history = std::move(out.history);
    }
  }
  best.frame_potential = frame_potential(best.fiducial, config.d);
  return best;
}

}  // namespace paraprob
