#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "scenabs/errors.hpp"
#include "scenabs/rng.hpp"

namespace scenabs {

/// Jump linear stochastic system: linear SDE  dx = A x dt + F x dB  between
/// the jump times of a Poisson process of rate nu, linear reset
/// x <- (I + R) x at each jump, output y = C x. `init_map` maps the reference
/// system's initial state into this model's initial state (identity for the
/// reference system itself).
struct JlssModel {
  Eigen::MatrixXd A;         // n x n drift
  Eigen::MatrixXd F;         // n x n diffusion
  Eigen::MatrixXd R;         // n x n reset
  Eigen::MatrixXd C;         // p x n output
  double nu = 0.0;           // jump rate
  Eigen::MatrixXd init_map;  // n x n_ref

  Eigen::Index state_dim() const { return A.rows(); }
  Eigen::Index output_dim() const { return C.rows(); }

  void check() const {
    const auto n = A.rows();
    if (A.cols() != n || F.rows() != n || F.cols() != n || R.rows() != n || R.cols() != n)
      throw invalid_input("JlssModel: A, F, R must be square of equal size");
    if (C.cols() != n) throw invalid_input("JlssModel: C column count must match state dim");
    if (nu < 0.0) throw invalid_input("JlssModel: nu must be >= 0");
    if (init_map.rows() != n) throw invalid_input("JlssModel: init_map row count must match state dim");
  }
};

struct Truncate {
  int k = 0;
};
struct NoDiffusion {};
struct NoJump {};
using ReductionKind = std::variant<Truncate, NoDiffusion, NoJump>;

/// Reduced model per the named rule. truncate(k) keeps the leading k state
/// variables; no_diffusion zeroes F; no_jump zeroes R. The Poisson rate is
/// inherited unchanged.
inline JlssModel build_reduced_model(const JlssModel& system, const ReductionKind& kind) {
  system.check();
  const auto n = system.state_dim();
  JlssModel m = system;
  if (const auto* t = std::get_if<Truncate>(&kind)) {
    if (t->k < 1 || t->k > n) throw invalid_input("build_reduced_model: truncate k out of range");
    const int k = t->k;
    m.A = system.A.topLeftCorner(k, k);
    m.F = system.F.topLeftCorner(k, k);
    m.R = system.R.topLeftCorner(k, k);
    m.C = system.C.leftCols(k);
    m.init_map = Eigen::MatrixXd::Identity(k, n) * system.init_map;
  } else if (std::holds_alternative<NoDiffusion>(kind)) {
    m.F.setZero();
  } else {
    m.R.setZero();
  }
  return m;
}

/// Initial-state distribution: Gaussian or a deterministic point.
struct GaussianX0 {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
struct PointX0 {
  Eigen::VectorXd x;
};

class X0Distribution {
 public:
  X0Distribution(GaussianX0 g) : dist_(std::move(g)) { prepare(); }
  X0Distribution(PointX0 p) : dist_(std::move(p)) {}

  static X0Distribution gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov) {
    return X0Distribution(GaussianX0{std::move(mean), std::move(cov)});
  }
  static X0Distribution point(Eigen::VectorXd x) { return X0Distribution(PointX0{std::move(x)}); }

  Eigen::Index dim() const {
    if (const auto* g = std::get_if<GaussianX0>(&dist_)) return g->mean.size();
    return std::get<PointX0>(dist_).x.size();
  }

  bool is_point() const { return std::holds_alternative<PointX0>(dist_); }

  Eigen::VectorXd sample(RngStream& rng) const {
    if (const auto* p = std::get_if<PointX0>(&dist_)) return p->x;
    const auto& g = std::get<GaussianX0>(dist_);
    Eigen::VectorXd z(g.mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    return g.mean + sqrt_cov_ * z;
  }

  /// E[x0 x0'].
  Eigen::MatrixXd second_moment() const {
    if (const auto* p = std::get_if<PointX0>(&dist_)) return p->x * p->x.transpose();
    const auto& g = std::get<GaussianX0>(dist_);
    return g.cov + g.mean * g.mean.transpose();
  }

  /// E[[x0; 1][x0; 1]'], the (n+1)x(n+1) moment matrix of the lifted vector.
  Eigen::MatrixXd lifted_moment() const {
    const auto n = dim();
    Eigen::MatrixXd m(n + 1, n + 1);
    m.topLeftCorner(n, n) = second_moment();
    Eigen::VectorXd mean =
        is_point() ? std::get<PointX0>(dist_).x : std::get<GaussianX0>(dist_).mean;
    m.topRightCorner(n, 1) = mean;
    m.bottomLeftCorner(1, n) = mean.transpose();
    m(n, n) = 1.0;
    return m;
  }

 private:
  void prepare() {
    auto& g = std::get<GaussianX0>(dist_);
    if (g.cov.rows() != g.mean.size() || g.cov.cols() != g.mean.size())
      throw invalid_input("X0Distribution: covariance dimensions mismatch");
    if (!g.cov.isApprox(g.cov.transpose(), 1e-12))
      throw invalid_input("X0Distribution: covariance must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.cov);
    const double floor = -1e-10 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < floor)
      throw invalid_input("X0Distribution: covariance not positive semidefinite");
    sqrt_cov_ = es.eigenvectors() *
                es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
                es.eigenvectors().transpose();
  }

  std::variant<GaussianX0, PointX0> dist_;
  Eigen::MatrixXd sqrt_cov_;
};

/// One realization of the randomness driving a simulation: initial state,
/// jump-refined time grid, Brownian increments per grid step, and the jump
/// times themselves (each exactly a grid point).
struct Scenario {
  Eigen::VectorXd x0;
  std::vector<double> grid;            // 0 = t_0 < ... < t_K = T
  std::vector<double> brownian;        // K increments, one per step
  std::vector<double> jump_times;      // strictly increasing, in (0, T]
  std::vector<std::size_t> jump_steps; // k such that grid[k] is a jump time
  std::uint64_t seed = 0;
};

/// Output path on a scenario grid. `values` holds one p-column per grid
/// point; `mode` is the optional discrete label used by the hybrid metric.
struct Trajectory {
  std::vector<double> grid;
  Eigen::MatrixXd values;  // p x (K+1)
  std::optional<std::vector<int>> mode;
};

/// State transition matrices Xi_t: column i is the state at t started from
/// the i-th canonical unit vector, under a fixed scenario.
struct BasisTrajectories {
  std::vector<double> grid;
  std::vector<Eigen::MatrixXd> xi;  // one n x n matrix per grid point
};

/// Draw one scenario: x0 from the given distribution, Poisson jump times of
/// rate nu truncated to (0, T], uniform grid of step <= max_step refined to
/// contain every jump time, and one Brownian increment per refined step.
/// Identical seeds reproduce the scenario bit-for-bit.
inline Scenario sample_scenario(const X0Distribution& x0_dist, double horizon, double nu,
                                double max_step, std::uint64_t seed) {
  if (!(horizon > 0.0)) throw invalid_input("sample_scenario: horizon must be > 0");
  if (!(max_step > 0.0)) throw invalid_input("sample_scenario: max_step must be > 0");
  if (nu < 0.0) throw invalid_input("sample_scenario: nu must be >= 0");

  RngStream rng(seed);
  Scenario sc;
  sc.seed = seed;
  sc.x0 = x0_dist.sample(rng);

  if (nu > 0.0) {
    double t = rng.exponential(nu);
    while (t <= horizon) {
      sc.jump_times.push_back(t);
      t += rng.exponential(nu);
    }
  }

  const auto steps = static_cast<std::size_t>(std::ceil(horizon / max_step - 1e-12));
  const double dt = horizon / static_cast<double>(steps);
  std::vector<double> grid;
  grid.reserve(steps + 1 + sc.jump_times.size());
  for (std::size_t k = 0; k <= steps; ++k) grid.push_back(std::min(horizon, k * dt));
  grid.back() = horizon;
  grid.insert(grid.end(), sc.jump_times.begin(), sc.jump_times.end());
  std::sort(grid.begin(), grid.end());
  // drop near-duplicates, preferring the exact jump-time value
  const double tol = 1e-12 * std::max(1.0, horizon);
  sc.grid.clear();
  sc.grid.reserve(grid.size());
  for (double t : grid) {
    if (!sc.grid.empty() && t - sc.grid.back() <= tol) continue;
    sc.grid.push_back(t);
  }
  for (double tj : sc.jump_times) {
    auto it = std::lower_bound(sc.grid.begin(), sc.grid.end(), tj - tol);
    *it = tj;  // snap the surviving grid point to the exact jump time
    sc.jump_steps.push_back(static_cast<std::size_t>(it - sc.grid.begin()));
  }

  sc.brownian.resize(sc.grid.size() - 1);
  for (std::size_t k = 0; k + 1 < sc.grid.size(); ++k) {
    const double delta = sc.grid[k + 1] - sc.grid[k];
    sc.brownian[k] = std::sqrt(delta) * rng.normal();
  }
  return sc;
}

namespace detail {

// Euler-Maruyama sweep shared by simulate and simulate_basis: the state block
// X (n x m) advances column-wise; resets apply after the diffusion step that
// lands on a jump time.
template <typename Visitor>
void integrate(const JlssModel& model, const Scenario& sc, Eigen::MatrixXd X, Visitor&& visit) {
  const Eigen::MatrixXd IR =
      Eigen::MatrixXd::Identity(model.state_dim(), model.state_dim()) + model.R;
  std::size_t next_jump = 0;
  // a jump exactly at t=0 cannot occur (jump times are in (0,T])
  visit(0, X);
  for (std::size_t k = 0; k + 1 < sc.grid.size(); ++k) {
    const double delta = sc.grid[k + 1] - sc.grid[k];
    X = X + (model.A * X) * delta + (model.F * X) * sc.brownian[k];
    while (next_jump < sc.jump_steps.size() && sc.jump_steps[next_jump] == k + 1) {
      X = IR * X;
      ++next_jump;
    }
    visit(k + 1, X);
  }
}

}  // namespace detail

/// Integrate the model under the scenario's randomness. The state starts at
/// init_map * x0 and every model driven by the same scenario consumes the
/// identical Brownian increments and jump times.
inline Trajectory simulate(const JlssModel& model, const Scenario& sc) {
  model.check();
  if (model.init_map.cols() != sc.x0.size())
    throw invalid_input("simulate: init_map columns must match scenario x0 dimension");
  Trajectory out;
  out.grid = sc.grid;
  out.values.resize(model.output_dim(), static_cast<Eigen::Index>(sc.grid.size()));
  detail::integrate(model, sc, model.init_map * sc.x0,
                    [&](std::size_t k, const Eigen::MatrixXd& X) {
                      out.values.col(static_cast<Eigen::Index>(k)).noalias() = model.C * X.col(0);
                    });
  return out;
}

/// Integrate the n unit-vector initial states simultaneously. For any L and
/// x0, C * Xi_t * L * x0 reproduces simulate() on a model with init_map = L.
inline BasisTrajectories simulate_basis(const JlssModel& model, const Scenario& sc) {
  model.check();
  BasisTrajectories out;
  out.grid = sc.grid;
  out.xi.resize(sc.grid.size());
  const auto n = model.state_dim();
  detail::integrate(model, sc, Eigen::MatrixXd::Identity(n, n),
                    [&](std::size_t k, const Eigen::MatrixXd& X) { out.xi[k] = X; });
  return out;
}

}  // namespace scenabs
