#include "saddlebench/baselines.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace saddlebench {

namespace {

void check_problem(const LabeledDataset& data, std::span<const Loss> losses) {
  if (data.matrix.rows() == 0 || data.matrix.cols() == 0) {
    throw std::invalid_argument("solver needs a nonempty matrix");
  }
  if (losses.size() != data.matrix.rows()) {
    throw std::invalid_argument("loss count must match the sample count");
  }
}

}  // namespace

PsgdSolver::PsgdSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg,
                       PsgdStep mode, double step_constant, std::uint64_t seed)
    : data_(data),
      losses_(std::move(losses)),
      reg_(reg),
      mode_(mode),
      step_constant_(step_constant),
      rng_(seed) {
  check_problem(data_, losses_);
  if (!(step_constant > 0.0)) throw std::invalid_argument("step constant must be positive");
  if (mode_ == PsgdStep::strongly_convex_decay && !(reg_.strong_convexity() > 0.0)) {
    throw std::invalid_argument("strongly_convex_decay needs mu > 0");
  }
  x_ = reg_.argmin(data_.matrix.cols());
  x_avg_ = x_;
}

double PsgdSolver::step_size() const {
  switch (mode_) {
    case PsgdStep::sqrt_decay:
      return step_constant_ / std::sqrt(static_cast<double>(t_) + 1.0);
    case PsgdStep::strongly_convex_decay:
      return step_constant_ / (reg_.strong_convexity() * (static_cast<double>(t_) + 1.0));
    case PsgdStep::fixed:
      return step_constant_;
  }
  return step_constant_;
}

void PsgdSolver::step() {
  const std::size_t i = rng_.uniform_index(data_.matrix.rows());
  const double eta = step_size();

  if (mode_ == PsgdStep::sqrt_decay) {
    const double w = 1.0 / (static_cast<double>(t_) + 1.0);
    for (std::size_t j = 0; j < x_.size(); ++j) x_avg_[j] += (x_[j] - x_avg_[j]) * w;
  }

  const double margin = data_.matrix.row_dot(i, x_);
  const double slope = losses_[i].derivative(margin);
  if (slope != 0.0) data_.matrix.row_axpy(i, -eta * slope, x_);
  for (double& w : x_) w = reg_.prox(w, eta);

  ++sample_accesses_;
  ++t_;
}

void PsgdSolver::run(std::uint64_t iterations) {
  for (std::uint64_t k = 0; k < iterations; ++k) step();
}

std::vector<double> PsgdSolver::output() const {
  // x_avg_ is folded at the start of each step, so after t steps it is the
  // mean of x^0 .. x^{t-1}.
  if (mode_ != PsgdStep::sqrt_decay) return x_;
  return x_avg_;
}

double PsgdSolver::data_passes() const noexcept {
  return static_cast<double>(sample_accesses_) / static_cast<double>(data_.matrix.rows());
}

SvrgSolver::SvrgSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg, double step,
                       std::uint64_t inner_iters, std::uint64_t seed)
    : data_(data),
      losses_(std::move(losses)),
      reg_(reg),
      step_(step),
      inner_iters_(inner_iters == 0 ? data.matrix.rows() : inner_iters),
      rng_(seed) {
  check_problem(data_, losses_);
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  x_ = reg_.argmin(data_.matrix.cols());
  x_snap_ = x_;
  full_grad_.assign(data_.matrix.cols(), 0.0);
  snap_deriv_.assign(data_.matrix.rows(), 0.0);
  take_snapshot();
  sample_accesses_ = 0;  // construction cost is not part of a run
}

void SvrgSolver::take_snapshot() {
  const std::size_t n = data_.matrix.rows();
  x_snap_ = x_;
  std::fill(full_grad_.begin(), full_grad_.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double margin = data_.matrix.row_dot(i, x_snap_);
    snap_deriv_[i] = losses_[i].derivative(margin);
    if (snap_deriv_[i] != 0.0) data_.matrix.row_axpy(i, snap_deriv_[i], full_grad_);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (double& g : full_grad_) g *= inv_n;
  sample_accesses_ += n;
}

std::vector<double> SvrgSolver::gradient_estimate(std::size_t i) const {
  const double margin = data_.matrix.row_dot(i, x_);
  const double correction = losses_[i].derivative(margin) - snap_deriv_[i];
  std::vector<double> g = full_grad_;
  if (correction != 0.0) data_.matrix.row_axpy(i, correction, g);
  return g;
}

void SvrgSolver::set_start(std::span<const double> x0) {
  if (x0.size() != x_.size()) throw std::invalid_argument("set_start dimension mismatch");
  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] = reg_.project(x0[j]);
}

void SvrgSolver::inner_step() {
  const std::size_t i = rng_.uniform_index(data_.matrix.rows());
  const double margin = data_.matrix.row_dot(i, x_);
  const double correction = losses_[i].derivative(margin) - snap_deriv_[i];

  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] -= step_ * full_grad_[j];
  if (correction != 0.0) data_.matrix.row_axpy(i, -step_ * correction, x_);
  for (double& w : x_) w = reg_.prox(w, step_);

  ++sample_accesses_;
}

void SvrgSolver::run_epoch() {
  take_snapshot();
  for (std::uint64_t t = 0; t < inner_iters_; ++t) inner_step();
}

double SvrgSolver::data_passes() const noexcept {
  return static_cast<double>(sample_accesses_) / static_cast<double>(data_.matrix.rows());
}

SagaSolver::SagaSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg, double step,
                       std::uint64_t seed)
    : data_(data), losses_(std::move(losses)), reg_(reg), step_(step), rng_(seed) {
  check_problem(data_, losses_);
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const std::size_t n = data_.matrix.rows();
  x_ = reg_.argmin(data_.matrix.cols());
  table_.resize(n);
  grad_avg_.assign(data_.matrix.cols(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double margin = data_.matrix.row_dot(i, x_);
    table_[i] = losses_[i].derivative(margin);
    if (table_[i] != 0.0) data_.matrix.row_axpy(i, table_[i] * inv_n, grad_avg_);
  }
  sample_accesses_ = n;  // the table fill reads every sample once
}

void SagaSolver::step() {
  const std::size_t n = data_.matrix.rows();
  const std::size_t i = rng_.uniform_index(n);
  const double margin = data_.matrix.row_dot(i, x_);
  const double fresh = losses_[i].derivative(margin);
  const double stale = table_[i];

  for (std::size_t j = 0; j < x_.size(); ++j) x_[j] -= step_ * grad_avg_[j];
  if (fresh != stale) data_.matrix.row_axpy(i, -step_ * (fresh - stale), x_);
  for (double& w : x_) w = reg_.prox(w, step_);

  table_[i] = fresh;
  if (fresh != stale) data_.matrix.row_axpy(i, (fresh - stale) / static_cast<double>(n), grad_avg_);

  ++sample_accesses_;
  ++t_;
}

void SagaSolver::run(std::uint64_t iterations) {
  for (std::uint64_t k = 0; k < iterations; ++k) step();
}

double SagaSolver::data_passes() const noexcept {
  return static_cast<double>(sample_accesses_) / static_cast<double>(data_.matrix.rows());
}

namespace {

double elapsed_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<double> run_psgd(const LabeledDataset& data, std::span<const Loss> losses,
                             const Regularizer& reg, PsgdStep mode, double step_constant,
                             std::uint64_t total_iters, std::uint64_t trace_every, std::uint64_t seed,
                             const SampleFn& on_sample) {
  PsgdSolver solver(data, std::vector<Loss>(losses.begin(), losses.end()), reg, mode, step_constant, seed);
  const auto start = std::chrono::steady_clock::now();
  auto probe = [&] {
    if (!on_sample) return;
    const auto out = solver.output();
    on_sample(SolverSample{solver.data_passes(), elapsed_since(start), out, {}});
  };
  probe();
  for (std::uint64_t t = 1; t <= total_iters; ++t) {
    solver.step();
    if (trace_every != 0 && t % trace_every == 0) probe();
  }
  return solver.output();
}

std::vector<double> run_svrg(const LabeledDataset& data, std::span<const Loss> losses,
                             const Regularizer& reg, double step, std::uint64_t inner_iters,
                             std::uint64_t outer_loops, std::uint64_t trace_every_inner,
                             std::uint64_t seed, const SampleFn& on_sample) {
  SvrgSolver solver(data, std::vector<Loss>(losses.begin(), losses.end()), reg, step, inner_iters, seed);
  const auto start = std::chrono::steady_clock::now();
  auto probe = [&] {
    if (!on_sample) return;
    on_sample(SolverSample{solver.data_passes(), elapsed_since(start), solver.x(), {}});
  };
  probe();
  for (std::uint64_t k = 0; k < outer_loops; ++k) {
    solver.take_snapshot();
    for (std::uint64_t t = 1; t <= solver.inner_iters(); ++t) {
      solver.inner_step();
      if (trace_every_inner != 0 && t % trace_every_inner == 0) probe();
    }
    probe();
  }
  return std::vector<double>(solver.x().begin(), solver.x().end());
}

std::vector<double> run_saga(const LabeledDataset& data, std::span<const Loss> losses,
                             const Regularizer& reg, double step, std::uint64_t total_iters,
                             std::uint64_t trace_every, std::uint64_t seed, const SampleFn& on_sample) {
  SagaSolver solver(data, std::vector<Loss>(losses.begin(), losses.end()), reg, step, seed);
  const auto start = std::chrono::steady_clock::now();
  auto probe = [&] {
    if (!on_sample) return;
    on_sample(SolverSample{solver.data_passes(), elapsed_since(start), solver.x(), {}});
  };
  probe();
  for (std::uint64_t t = 1; t <= total_iters; ++t) {
    solver.step();
    if (trace_every != 0 && t % trace_every == 0) probe();
  }
  return std::vector<double>(solver.x().begin(), solver.x().end());
}

}  // namespace saddlebench
