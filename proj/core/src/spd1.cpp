#include "saddlebench/spd1.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace saddlebench {

StepSchedule StepSchedule::lipschitz_decay(double diameter, double lipschitz, double max_row_norm,
                                           double max_col_norm, std::size_t n, std::size_t d,
                                           double multiplier) {
  if (!(diameter > 0.0) || !(lipschitz > 0.0) || lipschitz == kInf) {
    throw std::invalid_argument("lipschitz_decay schedule needs finite positive D and L");
  }
  if (!(max_row_norm > 0.0) || !(max_col_norm > 0.0)) {
    throw std::invalid_argument("lipschitz_decay schedule needs positive matrix norms");
  }
  if (n == 0 || d == 0 || !(multiplier > 0.0)) {
    throw std::invalid_argument("lipschitz_decay schedule needs n, d >= 1 and a positive multiplier");
  }
  StepSchedule s;
  s.mode_ = ScheduleMode::lipschitz_decay;
  s.multiplier_ = multiplier;
  s.diameter_ = diameter;
  s.lipschitz_ = lipschitz;
  s.max_row_norm_ = max_row_norm;
  s.max_col_norm_ = max_col_norm;
  s.n_ = n;
  s.d_ = d;
  return s;
}

StepSchedule StepSchedule::strongly_convex_decay(double mu, double gamma, std::size_t n, std::size_t d,
                                                 double multiplier) {
  if (!(mu > 0.0) || !(gamma > 0.0)) {
    throw std::invalid_argument("strongly_convex_decay schedule needs mu > 0 and gamma > 0");
  }
  if (n == 0 || d == 0 || !(multiplier > 0.0)) {
    throw std::invalid_argument("strongly_convex_decay schedule needs n, d >= 1 and a positive multiplier");
  }
  StepSchedule s;
  s.mode_ = ScheduleMode::strongly_convex_decay;
  s.multiplier_ = multiplier;
  s.mu_ = mu;
  s.gamma_ = gamma;
  s.n_ = n;
  s.d_ = d;
  return s;
}

StepSchedule StepSchedule::fixed_steps(double eta, double tau, double multiplier) {
  if (!(eta > 0.0) || !(tau > 0.0) || !(multiplier > 0.0)) {
    throw std::invalid_argument("fixed schedule needs positive steps");
  }
  StepSchedule s;
  s.mode_ = ScheduleMode::fixed;
  s.multiplier_ = multiplier;
  s.eta_ = eta;
  s.tau_ = tau;
  return s;
}

std::pair<double, double> StepSchedule::eval(std::uint64_t t) const {
  switch (mode_) {
    case ScheduleMode::lipschitz_decay: {
      const double root = std::sqrt(static_cast<double>(t) + 1.0);
      const double common = std::sqrt(2.0 * static_cast<double>(d_));
      const double eta = common * diameter_ / (lipschitz_ * max_row_norm_ * root);
      const double tau =
          common * lipschitz_ * static_cast<double>(n_) / (diameter_ * max_col_norm_ * root);
      return {multiplier_ * eta, multiplier_ * tau};
    }
    case ScheduleMode::strongly_convex_decay: {
      const double denom = static_cast<double>(t) + 4.0;
      const double eta = 2.0 / (mu_ * denom);
      const double tau = 2.0 * static_cast<double>(n_) * static_cast<double>(d_) / (gamma_ * denom);
      return {multiplier_ * eta, multiplier_ * tau};
    }
    case ScheduleMode::fixed:
      return {multiplier_ * eta_, multiplier_ * tau_};
  }
  return {0.0, 0.0};
}

namespace {

double min_loss_gamma(std::span<const Loss> losses) {
  double g = kInf;
  for (const auto& l : losses) g = std::min(g, l.gamma());
  return g;
}

double max_loss_lipschitz(std::span<const Loss> losses) {
  double lip = 0.0;
  for (const auto& l : losses) lip = std::max(lip, l.lipschitz());
  return lip;
}

}  // namespace

StepSchedule make_lipschitz_schedule(const LabeledDataset& data, std::span<const Loss> losses,
                                     const Regularizer& reg, double multiplier) {
  const std::size_t n = data.matrix.rows();
  const std::size_t d = data.matrix.cols();
  return StepSchedule::lipschitz_decay(reg.diameter(d), max_loss_lipschitz(losses),
                                       data.matrix.max_row_norm(), data.matrix.max_col_norm(), n, d,
                                       multiplier);
}

StepSchedule make_strongly_convex_schedule(const LabeledDataset& data, std::span<const Loss> losses,
                                           const Regularizer& reg, double multiplier) {
  return StepSchedule::strongly_convex_decay(reg.strong_convexity(), min_loss_gamma(losses),
                                             data.matrix.rows(), data.matrix.cols(), multiplier);
}

Spd1Solver::Spd1Solver(const LabeledDataset& data, std::vector<Loss> losses, Regularizer reg,
                       StepSchedule schedule, std::uint64_t seed)
    : data_(data),
      losses_(std::move(losses)),
      reg_(reg),
      schedule_(schedule),
      rng_(seed) {
  const std::size_t n = data_.matrix.rows();
  const std::size_t d = data_.matrix.cols();
  if (n == 0 || d == 0) throw std::invalid_argument("solver needs a nonempty matrix");
  if (losses_.size() != n || data_.labels.size() != n) {
    throw std::invalid_argument("loss count must match the sample count");
  }

  x_ = reg_.argmin(d);
  y_.resize(n);
  for (std::size_t i = 0; i < n; ++i) y_[i] = losses_[i].conjugate_argmin();

  x_hist_sum_.assign(d, 0.0);
  y_hist_sum_.assign(n, 0.0);
  x_settled_.assign(d, 0);
  y_settled_.assign(n, 0);
}

void Spd1Solver::step() {
  const std::size_t n = data_.matrix.rows();
  const std::size_t d = data_.matrix.cols();
  const std::size_t i = rng_.uniform_index(n);
  const std::size_t j = rng_.uniform_index(d);

  const auto [eta, tau] = schedule_.eval(t_);
  const double a = data_.matrix.entry_unchecked(i, j);
  ++entry_accesses_;

  // Both updates read the pre-update pair (x^t, y^t).
  const double xj = x_[j];
  const double yi = y_[i];
  const double x_next = reg_.prox(xj - eta * a * yi, eta);
  const double y_next = losses_[i].conjugate_prox(yi + tau * a * xj, tau / static_cast<double>(d));

  x_hist_sum_[j] += xj * static_cast<double>(t_ + 1 - x_settled_[j]);
  x_settled_[j] = t_ + 1;
  x_[j] = x_next;

  y_hist_sum_[i] += yi * static_cast<double>(t_ + 1 - y_settled_[i]);
  y_settled_[i] = t_ + 1;
  y_[i] = y_next;

  last_i_ = i;
  last_j_ = j;
  ++t_;
}

void Spd1Solver::run(std::uint64_t iterations) {
  for (std::uint64_t k = 0; k < iterations; ++k) step();
}

std::vector<double> Spd1Solver::x_average() const {
  if (t_ == 0) return x_;
  std::vector<double> avg(x_.size());
  for (std::size_t j = 0; j < x_.size(); ++j) {
    const double sum = x_hist_sum_[j] + x_[j] * static_cast<double>(t_ - x_settled_[j]);
    avg[j] = sum / static_cast<double>(t_);
  }
  return avg;
}

std::vector<double> Spd1Solver::y_average() const {
  if (t_ == 0) return y_;
  std::vector<double> avg(y_.size());
  for (std::size_t i = 0; i < y_.size(); ++i) {
    const double sum = y_hist_sum_[i] + y_[i] * static_cast<double>(t_ - y_settled_[i]);
    avg[i] = sum / static_cast<double>(t_);
  }
  return avg;
}

double Spd1Solver::data_passes() const noexcept {
  const double cells = static_cast<double>(data_.matrix.rows()) * static_cast<double>(data_.matrix.cols());
  return static_cast<double>(entry_accesses_) / cells;
}

Spd1Result run_spd1(const LabeledDataset& data, std::span<const Loss> losses, const Regularizer& reg,
                    const StepSchedule& schedule, std::uint64_t total_iters, std::uint64_t trace_every,
                    std::uint64_t seed, const SampleFn& on_sample) {
  Spd1Solver solver(data, std::vector<Loss>(losses.begin(), losses.end()), reg, schedule, seed);

  const auto start = std::chrono::steady_clock::now();
  auto probe = [&] {
    if (!on_sample) return;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto x_avg = solver.x_average();
    const auto y_avg = solver.y_average();
    on_sample(SolverSample{solver.data_passes(), elapsed, x_avg, y_avg});
  };

  probe();
  for (std::uint64_t t = 1; t <= total_iters; ++t) {
    solver.step();
    if (trace_every != 0 && t % trace_every == 0) probe();
  }

  return {solver.x_average(), solver.y_average()};
}

}  // namespace saddlebench
