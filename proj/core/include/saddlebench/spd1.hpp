#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "saddlebench/datamat.hpp"
#include "saddlebench/losses.hpp"
#include "saddlebench/rng.hpp"
#include "saddlebench/trace.hpp"

namespace saddlebench {

enum class ScheduleMode { lipschitz_decay, strongly_convex_decay, fixed };

// Primal/dual step-size pair (eta_t, tau_t) as a function of the iteration
// counter. The two decaying modes carry the constants their formulas need;
// the global multiplier scales both outputs.
class StepSchedule {
 public:
  // eta_t = sqrt(2d) * D / (L * R * sqrt(t+1)),
  // tau_t = sqrt(2d) * L * n / (D * R' * sqrt(t+1)).
  static StepSchedule lipschitz_decay(double diameter, double lipschitz, double max_row_norm,
                                      double max_col_norm, std::size_t n, std::size_t d,
                                      double multiplier = 1.0);
  // eta_t = 2 / (mu * (t+4)),  tau_t = 2nd / (gamma * (t+4)).
  static StepSchedule strongly_convex_decay(double mu, double gamma, std::size_t n, std::size_t d,
                                            double multiplier = 1.0);
  static StepSchedule fixed_steps(double eta, double tau, double multiplier = 1.0);

  std::pair<double, double> eval(std::uint64_t t) const;

  ScheduleMode mode() const noexcept { return mode_; }
  double multiplier() const noexcept { return multiplier_; }

 private:
  StepSchedule() = default;

  ScheduleMode mode_ = ScheduleMode::fixed;
  double multiplier_ = 1.0;
  // lipschitz_decay constants
  double diameter_ = 0.0;
  double lipschitz_ = 0.0;
  double max_row_norm_ = 0.0;
  double max_col_norm_ = 0.0;
  // strongly_convex_decay constants
  double mu_ = 0.0;
  double gamma_ = 0.0;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  // fixed steps
  double eta_ = 0.0;
  double tau_ = 0.0;
};

// Builds the decaying schedules from a problem instance. The Lipschitz
// schedule needs a bounded box (for D) and finite loss Lipschitz constants;
// the strongly convex one needs mu > 0 and gamma > 0.
StepSchedule make_lipschitz_schedule(const LabeledDataset& data, std::span<const Loss> losses,
                                     const Regularizer& reg, double multiplier = 1.0);
StepSchedule make_strongly_convex_schedule(const LabeledDataset& data, std::span<const Loss> losses,
                                           const Regularizer& reg, double multiplier = 1.0);

// Entry-sampling primal-dual solver. Each iteration draws one (i, j) cell
// uniformly from the full n x d grid, reads that single matrix entry, and
// updates coordinate j of x and coordinate i of y through their prox maps.
// Running averages of both iterates are maintained in O(1) per step by
// settling each coordinate's contribution lazily when it is next touched.
class Spd1Solver {
 public:
  Spd1Solver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg,
             StepSchedule schedule, std::uint64_t seed);

  void step();
  void run(std::uint64_t iterations);

  std::uint64_t iteration() const noexcept { return t_; }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }

  // Mean of the iterates x^0 .. x^{t-1} (the current point when t = 0).
  std::vector<double> x_average() const;
  std::vector<double> y_average() const;

  std::pair<std::size_t, std::size_t> last_indices() const noexcept { return {last_i_, last_j_}; }
  std::uint64_t entry_accesses() const noexcept { return entry_accesses_; }
  double data_passes() const noexcept;

 private:
  const LabeledDataset& data_;
  std::vector<Loss> losses_;
  Regularizer reg_;
  StepSchedule schedule_;
  Rng rng_;

  std::vector<double> x_;
  std::vector<double> y_;
  // Prefix sums of settled iterate history plus the index each coordinate
  // was settled through; the exact average is reconstructed on read.
  std::vector<double> x_hist_sum_;
  std::vector<double> y_hist_sum_;
  std::vector<std::uint64_t> x_settled_;
  std::vector<std::uint64_t> y_settled_;

  std::uint64_t t_ = 0;
  std::uint64_t entry_accesses_ = 0;
  std::size_t last_i_ = 0;
  std::size_t last_j_ = 0;
};

struct Spd1Result {
  std::vector<double> x_avg;
  std::vector<double> y_avg;
};

// Runs for `total_iters` iterations; probes the averaged iterates at t = 0
// and every `trace_every` iterations (0 disables periodic probes).
Spd1Result run_spd1(const LabeledDataset& data, std::span<const Loss> losses, const Regularizer& reg,
                    const StepSchedule& schedule, std::uint64_t total_iters, std::uint64_t trace_every,
                    std::uint64_t seed, const SampleFn& on_sample = {});

}  // namespace saddlebench
