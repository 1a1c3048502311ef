#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "saddlebench/datamat.hpp"
#include "saddlebench/losses.hpp"

namespace saddlebench {

// P(x) = (1/n) sum_i loss_i(a_i . x) + g(x)
double primal_objective(std::span<const double> x, const LabeledDataset& data,
                        std::span<const Loss> losses, const Regularizer& reg);

// F(x, y) = (1/n) y^T A x - (1/n) sum_i conj_i(y_i) + g(x). Extended-real:
// an infeasible x gives +inf, an infinite conjugate gives -inf.
double saddle_value(std::span<const double> x, std::span<const double> y, const LabeledDataset& data,
                    std::span<const Loss> losses, const Regularizer& reg);

// inf_x F(x, y), separable per coordinate; -inf is a legitimate value when
// the linear term beats an unbounded coordinate.
double dual_objective(std::span<const double> y, const LabeledDataset& data, std::span<const Loss> losses,
                      const Regularizer& reg);

// P(x) - D(y); nonnegative up to roundoff for feasible pairs and +inf when
// the dual point is infeasible.
double primal_dual_gap(std::span<const double> x, std::span<const double> y, const LabeledDataset& data,
                       std::span<const Loss> losses, const Regularizer& reg);

// y_i = loss_i'(a_i . x): attains the conjugate supremum at the optimum, so
// the gap works as a certificate for primal-only solvers too.
std::vector<double> recover_dual(std::span<const double> x, const LabeledDataset& data,
                                 std::span<const Loss> losses);

struct ReferenceSolution {
  std::vector<double> x;
  std::vector<double> y;
  double p_star = 0.0;
  double achieved_gap = 0.0;
  std::string method;
  bool converged = false;
};

// ||x - ref.x||^2 / eta + ||y - ref.y||^2 / tau
double potential_delta(std::span<const double> x, std::span<const double> y, const ReferenceSolution& ref,
                       double eta, double tau);

// High-accuracy solve used as the suboptimality yardstick. Runs variance-
// reduced epochs with a safe step (halved whenever an epoch regresses)
// until the primal-dual gap at the recovered dual point drops below tol.
// When the cap runs out the best point found is returned with
// converged = false.
ReferenceSolution compute_reference(const LabeledDataset& data, std::span<const Loss> losses,
                                    const Regularizer& reg, double tol, std::uint64_t max_epochs = 10000,
                                    std::uint64_t seed = 911);

}  // namespace saddlebench
