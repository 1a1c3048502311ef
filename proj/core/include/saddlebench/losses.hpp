#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace saddlebench {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  double clamp(double v) const noexcept { return v < lo ? lo : (v > hi ? hi : v); }
  bool bounded() const noexcept { return lo > -kInf && hi < kInf; }
};

enum class LossKind { logistic, squared_hinge, hinge };

LossKind loss_kind_from_name(std::string_view name);
std::string_view loss_name(LossKind kind);

// Scalar loss of the prediction margin, parameterized by a +-1 label.
// Carries everything the primal-dual solvers need: value, (sub)derivative,
// Lipschitz and smoothness constants, the convex conjugate, the interval on
// which the conjugate is finite, and a prox solver for the conjugate.
class Loss {
 public:
  Loss(LossKind kind, double label);

  LossKind kind() const noexcept { return kind_; }
  double label() const noexcept { return label_; }

  double value(double margin) const;
  // Subgradient at the hinge kink is pinned to -label so runs are deterministic.
  double derivative(double margin) const;

  double lipschitz() const;    // +inf for squared hinge
  double smoothness() const;   // 1/gamma; +inf for hinge
  double gamma() const;        // 0 for hinge

  // Conjugate is finite exactly on dual_interval(); +inf outside.
  Interval dual_interval() const;
  double conjugate(double y) const;

  // argmin over the dual interval of s*conjugate(y) + (y - v)^2 / 2.
  // Closed form for hinge and squared hinge; safeguarded Newton for
  // logistic. Output always lies inside the dual interval.
  double conjugate_prox(double v, double s) const;

  // Minimizer of the conjugate; equals derivative(0).
  double conjugate_argmin() const;

 private:
  LossKind kind_;
  double label_;
};

std::vector<Loss> make_losses(LossKind kind, std::span<const double> labels);

enum class RegKind { none, l2, l1, elastic };

RegKind reg_kind_from_name(std::string_view name);
std::string_view reg_name(RegKind kind);

// Separable regularizer g(x) = sum_j g_j(x_j) with an optional box
// constraint shared by all coordinates. Every catalog entry is a
// weighted |w| plus a weighted w^2/2, so the per-coordinate prox is
// soft-thresholding followed by shrinkage and a box clip.
class Regularizer {
 public:
  static Regularizer none();
  static Regularizer l2(double lambda);
  static Regularizer l1(double lambda);
  static Regularizer elastic_net(double lambda1, double lambda2);

  // Returns a copy constrained to [lo, hi] on every coordinate; requires
  // lo <= 0 <= hi so the zero vector stays feasible.
  Regularizer boxed(double lo, double hi) const;

  RegKind kind() const noexcept { return kind_; }
  double l1_weight() const noexcept { return l1_weight_; }
  double l2_weight() const noexcept { return l2_weight_; }
  double strong_convexity() const noexcept { return l2_weight_; }

  bool has_box() const noexcept { return has_box_; }
  Interval box() const noexcept;

  double value_at(double w) const;               // g_j(w), +inf outside the box
  double value(std::span<const double> x) const;

  // argmin over the box of s*g_j(w) + (w - z)^2 / 2; s must be positive.
  double prox(double z, double s) const;
  double project(double w) const noexcept;

  // sup of ||x|| over the box; throws std::domain_error when unboxed.
  double diameter(std::size_t dim) const;
  std::vector<double> argmin(std::size_t dim) const;

 private:
  Regularizer(RegKind kind, double l1_weight, double l2_weight);

  RegKind kind_;
  double l1_weight_;
  double l2_weight_;
  bool has_box_ = false;
  double box_lo_ = -kInf;
  double box_hi_ = kInf;
};

}  // namespace saddlebench
