#include "saddlebench/spd1vr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace saddlebench {

VrSteps vr_step_sizes(double mu, double gamma, double max_row_norm, double max_col_norm, std::size_t n,
                      std::size_t d, double multiplier) {
  if (!(mu > 0.0) || !(gamma > 0.0) || !(max_row_norm > 0.0) || !(max_col_norm > 0.0)) {
    throw std::invalid_argument("vr_step_sizes needs positive mu, gamma and matrix norms");
  }
  if (n == 0 || d == 0 || !(multiplier > 0.0)) {
    throw std::invalid_argument("vr_step_sizes needs n, d >= 1 and a positive multiplier");
  }
  const double r2 = max_row_norm * max_row_norm;
  const double c2 = max_col_norm * max_col_norm;
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  const double row_condition = r2 / (mu * gamma);
  const double col_condition = dd * c2 / (nn * mu * gamma);
  const double balance = dd * row_condition / (nn * col_condition);
  VrSteps s;
  s.eta = multiplier * gamma / (128.0 * r2) * std::min(balance, 1.0);
  s.tau = multiplier * nn * mu / (128.0 * c2) * std::min(1.0 / balance, 1.0);
  return s;
}

VrConfig VrConfig::theory(const LabeledDataset& data, std::span<const Loss> losses, const Regularizer& reg,
                          std::uint64_t outer_loops, double multiplier, std::uint64_t inner_iters) {
  const std::size_t n = data.matrix.rows();
  const std::size_t d = data.matrix.cols();
  double gamma = kInf;
  for (const auto& l : losses) gamma = std::min(gamma, l.gamma());
  const double mu = reg.strong_convexity();
  if (!(mu > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("theory step sizes need mu > 0 and gamma > 0");
  }
  const double r = data.matrix.max_row_norm();
  const double c = data.matrix.max_col_norm();
  const VrSteps steps = vr_step_sizes(mu, gamma, r, c, n, d, multiplier);
  VrConfig cfg;
  cfg.eta = steps.eta;
  cfg.tau = steps.tau;
  cfg.inner_iters = inner_iters;
  cfg.outer_loops = outer_loops;
  cfg.row_condition = r * r / (mu * gamma);
  cfg.col_condition = static_cast<double>(d) * c * c / (static_cast<double>(n) * mu * gamma);
  return cfg;
}

VrConfig VrConfig::explicit_steps(double eta, double tau, std::uint64_t outer_loops,
                                  std::uint64_t inner_iters) {
  if (!(eta > 0.0) || !(tau > 0.0)) throw std::invalid_argument("steps must be positive");
  VrConfig cfg;
  cfg.eta = eta;
  cfg.tau = tau;
  cfg.inner_iters = inner_iters;
  cfg.outer_loops = outer_loops;
  return cfg;
}

Spd1VrSolver::Spd1VrSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg,
                           VrConfig config, std::uint64_t seed)
    : data_(data),
      losses_(std::move(losses)),
      reg_(reg),
      config_(config),
      rng_(seed) {
  const std::size_t n = data_.matrix.rows();
  const std::size_t d = data_.matrix.cols();
  if (n == 0 || d == 0) throw std::invalid_argument("solver needs a nonempty matrix");
  if (losses_.size() != n) throw std::invalid_argument("loss count must match the sample count");
  if (!(config_.eta > 0.0) || !(config_.tau > 0.0)) {
    throw std::invalid_argument("solver needs positive step sizes");
  }
  if (config_.inner_iters == 0) config_.inner_iters = static_cast<std::uint64_t>(n) * d;

  x_ = reg_.argmin(d);
  y_.resize(n);
  for (std::size_t i = 0; i < n; ++i) y_[i] = losses_[i].conjugate_argmin();
  x_snap_ = x_;
  y_snap_ = y_;
  grad_x_.assign(d, 0.0);
  grad_y_.assign(n, 0.0);
  take_snapshot();
  entry_accesses_ = 0;  // construction cost is not part of a run
}

void Spd1VrSolver::take_snapshot() {
  x_snap_ = x_;
  y_snap_ = y_;
  // one fused sweep: each stored entry is read once and feeds both products
  std::fill(grad_x_.begin(), grad_x_.end(), 0.0);
  std::fill(grad_y_.begin(), grad_y_.end(), 0.0);
  for (std::size_t i = 0; i < data_.matrix.rows(); ++i) {
    const double yi = y_snap_[i];
    double acc = 0.0;
    data_.matrix.for_each_in_row(i, [&](std::size_t j, double a) {
      grad_x_[j] += a * yi;
      acc += a * x_snap_[j];
    });
    grad_y_[i] = acc;
  }
  const double inv_n = 1.0 / static_cast<double>(data_.matrix.rows());
  for (double& v : grad_x_) v *= inv_n;
  const double inv_d = 1.0 / static_cast<double>(data_.matrix.cols());
  for (double& v : grad_y_) v *= inv_d;
  entry_accesses_ += static_cast<std::uint64_t>(data_.matrix.nnz());
}

double Spd1VrSolver::x_gradient_estimate(std::size_t j, std::size_t i_sample) const {
  const double a = data_.matrix.entry(i_sample, j);
  return a * (y_[i_sample] - y_snap_[i_sample]) + grad_x_[j];
}

double Spd1VrSolver::y_gradient_estimate(std::size_t i, std::size_t j_sample) const {
  const double a = data_.matrix.entry(i, j_sample);
  return a * (x_[j_sample] - x_snap_[j_sample]) + grad_y_[i];
}

void Spd1VrSolver::set_iterates(std::span<const double> x, std::span<const double> y) {
  if (x.size() != x_.size() || y.size() != y_.size()) {
    throw std::invalid_argument("set_iterates dimension mismatch");
  }
  for (std::size_t j = 0; j < x.size(); ++j) x_[j] = reg_.project(x[j]);
  for (std::size_t i = 0; i < y.size(); ++i) y_[i] = losses_[i].dual_interval().clamp(y[i]);
}

void Spd1VrSolver::inner_step() {
  const std::size_t n = data_.matrix.rows();
  const std::size_t d = data_.matrix.cols();
  // Two independent pairs; the draw order is part of the replay contract.
  const std::size_t i = rng_.uniform_index(n);
  const std::size_t i2 = rng_.uniform_index(n);
  const std::size_t j = rng_.uniform_index(d);
  const std::size_t j2 = rng_.uniform_index(d);

  const double eta = config_.eta;
  const double tau = config_.tau;
  const double dual_weight = tau / static_cast<double>(d);

  const double a_i2j = data_.matrix.entry_unchecked(i2, j);
  const double a_ij2 = data_.matrix.entry_unchecked(i, j2);
  const double a_ij = data_.matrix.entry_unchecked(i, j);
  entry_accesses_ += 3;

  const double xj = x_[j];
  const double yi = y_[i];

  // Midpoint pair from the first-draw estimates.
  const double grad_x_mid = a_i2j * (y_[i2] - y_snap_[i2]) + grad_x_[j];
  const double x_mid = reg_.prox(xj - eta * grad_x_mid, eta);
  const double grad_y_mid = a_ij2 * (x_[j2] - x_snap_[j2]) + grad_y_[i];
  const double y_mid = losses_[i].conjugate_prox(yi + tau * grad_y_mid, dual_weight);

  // Final pair restarts from (x^t, y^t) with the midpoint gradients.
  const double grad_x_final = a_ij * (y_mid - y_snap_[i]) + grad_x_[j];
  const double x_next = reg_.prox(xj - eta * grad_x_final, eta);
  const double grad_y_final = a_ij * (x_mid - x_snap_[j]) + grad_y_[i];
  const double y_next = losses_[i].conjugate_prox(yi + tau * grad_y_final, dual_weight);

  x_[j] = x_next;
  y_[i] = y_next;
  last_i_ = i;
  last_i2_ = i2;
  last_j_ = j;
  last_j2_ = j2;
  ++inner_;
}

void Spd1VrSolver::run_outer_loop() {
  take_snapshot();
  inner_ = 0;
  for (std::uint64_t t = 0; t < config_.inner_iters; ++t) inner_step();
  ++outer_;
}

double Spd1VrSolver::data_passes() const noexcept {
  const double cells = static_cast<double>(data_.matrix.rows()) * static_cast<double>(data_.matrix.cols());
  return static_cast<double>(entry_accesses_) / cells;
}

VrResult run_spd1vr(const LabeledDataset& data, std::span<const Loss> losses, const Regularizer& reg,
                    const VrConfig& config, std::uint64_t trace_every_inner, std::uint64_t seed,
                    const SampleFn& on_sample) {
  Spd1VrSolver solver(data, std::vector<Loss>(losses.begin(), losses.end()), reg, config, seed);

  const auto start = std::chrono::steady_clock::now();
  auto probe = [&] {
    if (!on_sample) return;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    on_sample(SolverSample{solver.data_passes(), elapsed, solver.x(), solver.y()});
  };

  probe();
  for (std::uint64_t k = 0; k < config.outer_loops; ++k) {
    solver.take_snapshot();
    for (std::uint64_t t = 1; t <= solver.config().inner_iters; ++t) {
      solver.inner_step();
      if (trace_every_inner != 0 && t % trace_every_inner == 0) probe();
    }
    probe();  // the point the next snapshot will be taken at
  }

  return {std::vector<double>(solver.x().begin(), solver.x().end()),
          std::vector<double>(solver.y().begin(), solver.y().end())};
}

}  // namespace saddlebench
