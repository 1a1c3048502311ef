#include "saddlebench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "saddlebench/baselines.hpp"

namespace saddlebench {

namespace {

void check_dims(std::span<const double> x, std::span<const double> y, const LabeledDataset& data,
                std::span<const Loss> losses) {
  if (!x.empty() && x.size() != data.matrix.cols()) throw std::invalid_argument("x dimension mismatch");
  if (!y.empty() && y.size() != data.matrix.rows()) throw std::invalid_argument("y dimension mismatch");
  if (losses.size() != data.matrix.rows()) throw std::invalid_argument("loss count mismatch");
}

// min over the box of v*w + g_j(w) for one coordinate; -inf when unbounded.
double coordinate_min(double v, const Regularizer& reg) {
  const double c1 = reg.l1_weight();
  const double c2 = reg.l2_weight();
  if (!reg.has_box()) {
    const double slack = std::max(std::abs(v) - c1, 0.0);
    if (slack == 0.0) return 0.0;
    if (c2 == 0.0) return -kInf;
    return -slack * slack / (2.0 * c2);
  }
  const Interval b = reg.box();
  auto objective = [&](double w) { return v * w + c1 * std::abs(w) + 0.5 * c2 * w * w; };
  if (c2 > 0.0) {
    // convex and smooth away from 0: clamp the unconstrained minimizer
    const double slack = std::max(std::abs(v) - c1, 0.0);
    const double unconstrained = slack == 0.0 ? 0.0 : -std::copysign(slack, v) / c2;
    return objective(b.clamp(unconstrained));
  }
  // piecewise linear: the minimum sits at an end point or at 0
  return std::min({objective(b.lo), objective(0.0), objective(b.hi)});
}

}  // namespace

double primal_objective(std::span<const double> x, const LabeledDataset& data,
                        std::span<const Loss> losses, const Regularizer& reg) {
  check_dims(x, {}, data, losses);
  const std::size_t n = data.matrix.rows();
  double loss_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    loss_sum += losses[i].value(data.matrix.row_dot(i, x));
  }
  return loss_sum / static_cast<double>(n) + reg.value(x);
}

double saddle_value(std::span<const double> x, std::span<const double> y, const LabeledDataset& data,
                    std::span<const Loss> losses, const Regularizer& reg) {
  check_dims(x, y, data, losses);
  const double reg_value = reg.value(x);
  if (reg_value == kInf) return kInf;

  const std::size_t n = data.matrix.rows();
  double conj_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = losses[i].conjugate(y[i]);
    if (c == kInf) return -kInf;
    conj_sum += c;
  }

  const std::vector<double> ax = data.matrix.mat_vec(x);
  double bilinear = 0.0;
  for (std::size_t i = 0; i < n; ++i) bilinear += y[i] * ax[i];

  return (bilinear - conj_sum) / static_cast<double>(n) + reg_value;
}

double dual_objective(std::span<const double> y, const LabeledDataset& data, std::span<const Loss> losses,
                      const Regularizer& reg) {
  check_dims({}, y, data, losses);
  const std::size_t n = data.matrix.rows();

  double conj_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double c = losses[i].conjugate(y[i]);
    if (c == kInf) return -kInf;
    conj_sum += c;
  }

  const std::vector<double> aty = data.matrix.mat_t_vec(y);
  double inf_term = 0.0;
  for (std::size_t j = 0; j < aty.size(); ++j) {
    const double m = coordinate_min(aty[j] / static_cast<double>(n), reg);
    if (m == -kInf) return -kInf;
    inf_term += m;
  }

  return -conj_sum / static_cast<double>(n) + inf_term;
}

double primal_dual_gap(std::span<const double> x, std::span<const double> y, const LabeledDataset& data,
                       std::span<const Loss> losses, const Regularizer& reg) {
  return primal_objective(x, data, losses, reg) - dual_objective(y, data, losses, reg);
}

std::vector<double> recover_dual(std::span<const double> x, const LabeledDataset& data,
                                 std::span<const Loss> losses) {
  check_dims(x, {}, data, losses);
  std::vector<double> y(data.matrix.rows());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = losses[i].derivative(data.matrix.row_dot(i, x));
  }
  return y;
}

double potential_delta(std::span<const double> x, std::span<const double> y, const ReferenceSolution& ref,
                       double eta, double tau) {
  if (!(eta > 0.0) || !(tau > 0.0)) throw std::invalid_argument("potential needs positive weights");
  if (x.size() != ref.x.size() || y.size() != ref.y.size()) {
    throw std::invalid_argument("potential dimension mismatch");
  }
  double dx = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double diff = x[j] - ref.x[j];
    dx += diff * diff;
  }
  double dy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double diff = y[i] - ref.y[i];
    dy += diff * diff;
  }
  return dx / eta + dy / tau;
}

ReferenceSolution compute_reference(const LabeledDataset& data, std::span<const Loss> losses,
                                    const Regularizer& reg, double tol, std::uint64_t max_epochs,
                                    std::uint64_t seed) {
  if (!(tol > 0.0)) throw std::invalid_argument("reference tolerance must be positive");
  const std::size_t n = data.matrix.rows();
  if (n == 0 || data.matrix.cols() == 0) throw std::invalid_argument("reference needs a nonempty matrix");

  // Per-sample gradient curvature is smoothness * R^2; nonsmooth losses get
  // a norm-based guess and rely on the halving safeguard below.
  double smooth = 0.0;
  for (const auto& l : losses) smooth = std::max(smooth, l.smoothness());
  const double r2 = data.matrix.max_row_norm() * data.matrix.max_row_norm();
  double curvature = (smooth == kInf ? 1.0 : smooth) * r2 + reg.strong_convexity();
  if (!(curvature > 0.0)) curvature = 1.0;
  double step = 0.25 / curvature;

  std::optional<SvrgSolver> solver;
  solver.emplace(data, std::vector<Loss>(losses.begin(), losses.end()), reg, step, 0, seed);

  ReferenceSolution best;
  best.method = "svrg";
  best.achieved_gap = kInf;
  best.p_star = kInf;

  // best point by gap, ties (e.g. both infinite) broken by objective
  auto absorb = [&](std::span<const double> xs) {
    const std::vector<double> x(xs.begin(), xs.end());
    const double obj = primal_objective(x, data, losses, reg);
    std::vector<double> y = recover_dual(x, data, losses);
    const double gap = obj - dual_objective(y, data, losses, reg);
    if (best.x.empty() || gap < best.achieved_gap ||
        (!(gap > best.achieved_gap) && obj < best.p_star)) {
      best.x = x;
      best.y = std::move(y);
      best.p_star = obj;
      best.achieved_gap = gap;
    }
    return obj;
  };

  double prev_obj = kInf;
  for (std::uint64_t epoch = 0; epoch < max_epochs; ++epoch) {
    const double obj = absorb(solver->x());
    if (best.achieved_gap <= tol) {
      best.converged = true;
      return best;
    }
    if (obj > prev_obj) {
      // regressed: restart from the best point with a smaller step
      step *= 0.5;
      solver.emplace(data, std::vector<Loss>(losses.begin(), losses.end()), reg, step, 0, seed + epoch);
      solver->set_start(best.x);
    }
    prev_obj = obj;
    solver->run_epoch();
  }

  absorb(solver->x());
  best.converged = best.achieved_gap <= tol;
  return best;
}

}  // namespace saddlebench
