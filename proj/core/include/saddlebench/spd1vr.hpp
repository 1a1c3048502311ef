#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "saddlebench/datamat.hpp"
#include "saddlebench/losses.hpp"
#include "saddlebench/rng.hpp"
#include "saddlebench/trace.hpp"

namespace saddlebench {

struct VrSteps {
  double eta;
  double tau;
};

// Fixed step sizes eta = gamma/(128 R^2) * min{d*kr/(n*kc), 1} and
// tau = n*mu/(128 R'^2) * min{n*kc/(d*kr), 1}, where kr = R^2/(mu*gamma)
// and kc = d R'^2/(n mu gamma) are the row- and column-side condition
// numbers. The multiplier scales both.
VrSteps vr_step_sizes(double mu, double gamma, double max_row_norm, double max_col_norm, std::size_t n,
                      std::size_t d, double multiplier = 1.0);

struct VrConfig {
  double eta = 0.0;
  double tau = 0.0;
  std::uint64_t inner_iters = 0;  // 0 means n*d
  std::uint64_t outer_loops = 1;
  double row_condition = 0.0;  // informational
  double col_condition = 0.0;

  // Theory steps from the instance constants; inner_iters = 0 keeps the
  // n*d default.
  static VrConfig theory(const LabeledDataset& data, std::span<const Loss> losses, const Regularizer& reg,
                         std::uint64_t outer_loops, double multiplier = 1.0, std::uint64_t inner_iters = 0);
  static VrConfig explicit_steps(double eta, double tau, std::uint64_t outer_loops,
                                 std::uint64_t inner_iters = 0);
};

// Variance-reduced variant. Each outer loop snapshots (x, y) and the exact
// scaled products g_x = (1/n) A^T y_snap, g_y = (1/d) A x_snap; every inner
// iteration draws two independent index pairs, forms a corrected gradient
// estimate whose variance vanishes at the snapshot, and applies an
// extragradient update: a midpoint prox step followed by a second prox step
// that restarts from the pre-midpoint iterate but uses the midpoint
// gradient. Inner work stays O(1) per iteration.
class Spd1VrSolver {
 public:
  Spd1VrSolver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg, VrConfig config,
               std::uint64_t seed);

  void take_snapshot();
  void inner_step();
  // snapshot + inner_iters inner steps
  void run_outer_loop();

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> x_snapshot() const noexcept { return x_snap_; }
  std::span<const double> y_snapshot() const noexcept { return y_snap_; }
  std::span<const double> snapshot_grad_x() const noexcept { return grad_x_; }
  std::span<const double> snapshot_grad_y() const noexcept { return grad_y_; }

  // Corrected single-entry estimates; exposed so their exact means can be
  // checked by enumeration.
  double x_gradient_estimate(std::size_t j, std::size_t i_sample) const;
  double y_gradient_estimate(std::size_t i, std::size_t j_sample) const;

  // Overrides the current iterates (feasibility is enforced).
  void set_iterates(std::span<const double> x, std::span<const double> y);

  const VrConfig& config() const noexcept { return config_; }
  std::uint64_t outer_index() const noexcept { return outer_; }
  std::uint64_t inner_index() const noexcept { return inner_; }
  std::array<std::size_t, 4> last_indices() const noexcept { return {last_i_, last_i2_, last_j_, last_j2_}; }
  std::uint64_t entry_accesses() const noexcept { return entry_accesses_; }
  double data_passes() const noexcept;

 private:
  const LabeledDataset& data_;
  std::vector<Loss> losses_;
  Regularizer reg_;
  VrConfig config_;
  Rng rng_;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> x_snap_;
  std::vector<double> y_snap_;
  std::vector<double> grad_x_;  // (1/n) A^T y_snap
  std::vector<double> grad_y_;  // (1/d) A x_snap

  std::uint64_t outer_ = 0;
  std::uint64_t inner_ = 0;
  std::uint64_t entry_accesses_ = 0;
  std::size_t last_i_ = 0, last_i2_ = 0, last_j_ = 0, last_j2_ = 0;
};

struct VrResult {
  std::vector<double> x;
  std::vector<double> y;
};

// Runs outer_loops outer loops. Probes fire at the start, after every outer
// loop (the new snapshot point), and every `trace_every_inner` inner steps
// when nonzero.
VrResult run_spd1vr(const LabeledDataset& data, std::span<const Loss> losses, const Regularizer& reg,
                    const VrConfig& config, std::uint64_t trace_every_inner, std::uint64_t seed,
                    const SampleFn& on_sample = {});

}  // namespace saddlebench
