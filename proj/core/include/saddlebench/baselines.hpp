#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "saddlebench/datamat.hpp"
#include "saddlebench/losses.hpp"
#include "saddlebench/rng.hpp"
#include "saddlebench/trace.hpp"

namespace saddlebench {

enum class PsgdStep {
  sqrt_decay,             // c / sqrt(t+1), averaged output
  strongly_convex_decay,  // c / (mu * (t+1)), last iterate
  fixed                   // c, last iterate
};

// Proximal stochastic gradient descent on the primal problem: one sample
// per iteration, full-vector prox.
class PsgdSolver {
 public:
  PsgdSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg, PsgdStep mode,
             double step_constant, std::uint64_t seed);

  void step();
  void run(std::uint64_t iterations);

  std::span<const double> x() const noexcept { return x_; }
  // Averaged iterate under sqrt_decay, the last iterate otherwise.
  std::vector<double> output() const;

  std::uint64_t iteration() const noexcept { return t_; }
  std::uint64_t sample_accesses() const noexcept { return sample_accesses_; }
  double data_passes() const noexcept;

 private:
  double step_size() const;

  const LabeledDataset& data_;
  std::vector<Loss> losses_;
  Regularizer reg_;
  PsgdStep mode_;
  double step_constant_;
  Rng rng_;

  std::vector<double> x_;
  std::vector<double> x_avg_;
  std::uint64_t t_ = 0;
  std::uint64_t sample_accesses_ = 0;
};

// Proximal SVRG: outer snapshot with an exact full gradient, inner steps
// correct the per-sample gradient with the snapshot one. Snapshot margins
// are cached so an inner step touches one sample.
class SvrgSolver {
 public:
  SvrgSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg, double step,
             std::uint64_t inner_iters /*0 means n*/, std::uint64_t seed);

  void take_snapshot();
  void inner_step();
  // snapshot + inner_iters steps; the next snapshot is the last inner iterate
  void run_epoch();

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> snapshot_x() const noexcept { return x_snap_; }
  std::span<const double> full_gradient() const noexcept { return full_grad_; }
  std::uint64_t inner_iters() const noexcept { return inner_iters_; }

  // Variance-reduced gradient vector for sample i at the current iterate.
  std::vector<double> gradient_estimate(std::size_t i) const;

  // Warm start; the next snapshot picks it up.
  void set_start(std::span<const double> x0);

  std::uint64_t sample_accesses() const noexcept { return sample_accesses_; }
  double data_passes() const noexcept;

 private:
  const LabeledDataset& data_;
  std::vector<Loss> losses_;
  Regularizer reg_;
  double step_;
  std::uint64_t inner_iters_;
  Rng rng_;

  std::vector<double> x_;
  std::vector<double> x_snap_;
  std::vector<double> full_grad_;
  std::vector<double> snap_deriv_;  // loss derivative at the snapshot margin, per sample
  std::uint64_t sample_accesses_ = 0;
};

// SAGA with a scalar table: linear predictors make the stored per-sample
// gradient a single loss derivative, so memory is O(n) instead of O(n d).
class SagaSolver {
 public:
  SagaSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg, double step,
             std::uint64_t seed);

  void step();
  void run(std::uint64_t iterations);

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> stored_derivatives() const noexcept { return table_; }
  std::span<const double> gradient_average() const noexcept { return grad_avg_; }

  std::uint64_t sample_accesses() const noexcept { return sample_accesses_; }
  double data_passes() const noexcept;

 private:
  const LabeledDataset& data_;
  std::vector<Loss> losses_;
  Regularizer reg_;
  double step_;
  Rng rng_;

  std::vector<double> x_;
  std::vector<double> table_;     // phi_i' at the sample's last-seen iterate
  std::vector<double> grad_avg_;  // (1/n) sum_i table_[i] * a_i
  std::uint64_t t_ = 0;
  std::uint64_t sample_accesses_ = 0;
};

std::vector<double> run_psgd(const LabeledDataset& data, std::span<const Loss> losses,
                             const Regularizer& reg, PsgdStep mode, double step_constant,
                             std::uint64_t total_iters, std::uint64_t trace_every, std::uint64_t seed,
                             const SampleFn& on_sample = {});

std::vector<double> run_svrg(const LabeledDataset& data, std::span<const Loss> losses,
                             const Regularizer& reg, double step, std::uint64_t inner_iters,
                             std::uint64_t outer_loops, std::uint64_t trace_every_inner,
                             std::uint64_t seed, const SampleFn& on_sample = {});

std::vector<double> run_saga(const LabeledDataset& data, std::span<const Loss> losses,
                             const Regularizer& reg, double step, std::uint64_t total_iters,
                             std::uint64_t trace_every, std::uint64_t seed,
                             const SampleFn& on_sample = {});

}  // namespace saddlebench
