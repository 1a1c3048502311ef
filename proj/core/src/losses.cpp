#include "saddlebench/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace saddlebench {

LossKind loss_kind_from_name(std::string_view name) {
  if (name == "logistic") return LossKind::logistic;
  if (name == "squared-hinge") return LossKind::squared_hinge;
  if (name == "hinge") return LossKind::hinge;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

std::string_view loss_name(LossKind kind) {
  switch (kind) {
    case LossKind::logistic: return "logistic";
    case LossKind::squared_hinge: return "squared-hinge";
    case LossKind::hinge: return "hinge";
  }
  return "?";
}

Loss::Loss(LossKind kind, double label) : kind_(kind), label_(label) {
  if (label != 1.0 && label != -1.0) {
    throw std::invalid_argument("loss label must be +1 or -1");
  }
}

double Loss::value(double margin) const {
  const double m = label_ * margin;
  switch (kind_) {
    case LossKind::logistic:
      // log(1 + exp(-m)) without overflow on either tail
      return m > 0.0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    case LossKind::squared_hinge: {
      const double t = std::max(0.0, 1.0 - m);
      return t * t;
    }
    case LossKind::hinge:
      return std::max(0.0, 1.0 - m);
  }
  return 0.0;
}

double Loss::derivative(double margin) const {
  const double m = label_ * margin;
  switch (kind_) {
    case LossKind::logistic:
      return -label_ / (1.0 + std::exp(m));
    case LossKind::squared_hinge:
      return -2.0 * label_ * std::max(0.0, 1.0 - m);
    case LossKind::hinge:
      return m <= 1.0 ? -label_ : 0.0;
  }
  return 0.0;
}

double Loss::lipschitz() const {
  switch (kind_) {
    case LossKind::logistic: return 1.0;
    case LossKind::squared_hinge: return kInf;
    case LossKind::hinge: return 1.0;
  }
  return 0.0;
}

double Loss::smoothness() const {
  switch (kind_) {
    case LossKind::logistic: return 0.25;
    case LossKind::squared_hinge: return 2.0;
    case LossKind::hinge: return kInf;
  }
  return 0.0;
}

double Loss::gamma() const {
  switch (kind_) {
    case LossKind::logistic: return 4.0;
    case LossKind::squared_hinge: return 0.5;
    case LossKind::hinge: return 0.0;
  }
  return 0.0;
}

Interval Loss::dual_interval() const {
  // In label-canonical coordinates z = label*y the interval is [-1, 0] for
  // the Lipschitz losses and (-inf, 0] for the squared hinge.
  switch (kind_) {
    case LossKind::logistic:
    case LossKind::hinge:
      return label_ > 0.0 ? Interval{-1.0, 0.0} : Interval{0.0, 1.0};
    case LossKind::squared_hinge:
      return label_ > 0.0 ? Interval{-kInf, 0.0} : Interval{0.0, kInf};
  }
  return {0.0, 0.0};
}

namespace {

// x*log(x) with the 0*log(0) = 0 convention.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double Loss::conjugate(double y) const {
  const double z = label_ * y;
  switch (kind_) {
    case LossKind::logistic:
      if (z < -1.0 || z > 0.0) return kInf;
      return xlogx(-z) + xlogx(1.0 + z);
    case LossKind::squared_hinge:
      if (z > 0.0) return kInf;
      return z + z * z / 4.0;
    case LossKind::hinge:
      if (z < -1.0 || z > 0.0) return kInf;
      return z;
  }
  return kInf;
}

double Loss::conjugate_prox(double v, double s) const {
  if (!(s > 0.0)) throw std::domain_error("conjugate_prox needs a positive step weight");
  const double vc = label_ * v;  // canonical coordinates, label +1
  double zc = 0.0;
  switch (kind_) {
    case LossKind::squared_hinge:
      zc = std::min(0.0, (vc - s) / (1.0 + s / 2.0));
      break;
    case LossKind::hinge:
      zc = std::min(0.0, std::max(-1.0, vc - s));
      break;
    case LossKind::logistic: {
      // Root of h(z) = s*log((1+z)/(-z)) + z - vc on (-1, 0); h is strictly
      // increasing and blows up at both ends, so Newton steps are accepted
      // only inside the current bracket and rejected ones fall back to
      // bisection.
      double lo = -1.0;
      double hi = 0.0;
      double z = std::min(-1e-12, std::max(-1.0 + 1e-12, vc));
      for (int iter = 0; iter < 50; ++iter) {
        const double h = s * std::log((1.0 + z) / -z) + z - vc;
        if (h > 0.0) {
          hi = z;
        } else {
          lo = z;
        }
        const double dh = s * (1.0 / (1.0 + z) - 1.0 / z) + 1.0;
        double next = z - h / dh;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = next - z;
        z = next;
        if (std::abs(step) <= 1e-12) break;
      }
      zc = std::min(0.0, std::max(-1.0, z));
      break;
    }
  }
  return label_ * zc;
}

double Loss::conjugate_argmin() const { return derivative(0.0); }

std::vector<Loss> make_losses(LossKind kind, std::span<const double> labels) {
  std::vector<Loss> losses;
  losses.reserve(labels.size());
  for (double b : labels) losses.emplace_back(kind, b);
  return losses;
}

RegKind reg_kind_from_name(std::string_view name) {
  if (name == "none") return RegKind::none;
  if (name == "l2") return RegKind::l2;
  if (name == "l1") return RegKind::l1;
  if (name == "elastic") return RegKind::elastic;
  throw std::invalid_argument("unknown regularizer '" + std::string(name) + "'");
}

std::string_view reg_name(RegKind kind) {
  switch (kind) {
    case RegKind::none: return "none";
    case RegKind::l2: return "l2";
    case RegKind::l1: return "l1";
    case RegKind::elastic: return "elastic";
  }
  return "?";
}

Regularizer::Regularizer(RegKind kind, double l1_weight, double l2_weight)
    : kind_(kind), l1_weight_(l1_weight), l2_weight_(l2_weight) {
  if (l1_weight < 0.0 || l2_weight < 0.0) {
    throw std::invalid_argument("regularizer weights must be nonnegative");
  }
}

Regularizer Regularizer::none() { return Regularizer(RegKind::none, 0.0, 0.0); }
Regularizer Regularizer::l2(double lambda) { return Regularizer(RegKind::l2, 0.0, lambda); }
Regularizer Regularizer::l1(double lambda) { return Regularizer(RegKind::l1, lambda, 0.0); }
Regularizer Regularizer::elastic_net(double lambda1, double lambda2) {
  return Regularizer(RegKind::elastic, lambda1, lambda2);
}

Regularizer Regularizer::boxed(double lo, double hi) const {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("box bounds must be finite (omit the box instead)");
  }
  if (!(lo <= 0.0 && 0.0 <= hi)) {
    throw std::invalid_argument("box must contain 0");
  }
  Regularizer r = *this;
  r.has_box_ = true;
  r.box_lo_ = lo;
  r.box_hi_ = hi;
  return r;
}

Interval Regularizer::box() const noexcept { return {box_lo_, box_hi_}; }

double Regularizer::value_at(double w) const {
  if (w < box_lo_ || w > box_hi_) return kInf;
  return l1_weight_ * std::abs(w) + 0.5 * l2_weight_ * w * w;
}

double Regularizer::value(std::span<const double> x) const {
  double acc = 0.0;
  for (double w : x) {
    if (w < box_lo_ || w > box_hi_) return kInf;
    acc += l1_weight_ * std::abs(w) + 0.5 * l2_weight_ * w * w;
  }
  return acc;
}

double Regularizer::prox(double z, double s) const {
  if (!(s > 0.0)) throw std::domain_error("prox needs a positive step weight");
  const double shift = s * l1_weight_;
  double w = 0.0;
  if (z > shift) {
    w = z - shift;
  } else if (z < -shift) {
    w = z + shift;
  }
  w /= 1.0 + s * l2_weight_;
  return project(w);
}

double Regularizer::project(double w) const noexcept {
  return w < box_lo_ ? box_lo_ : (w > box_hi_ ? box_hi_ : w);
}

double Regularizer::diameter(std::size_t dim) const {
  if (!has_box_) {
    throw std::domain_error("feasible set is unbounded: diameter D undefined");
  }
  const double extent = std::max(std::abs(box_lo_), std::abs(box_hi_));
  return extent * std::sqrt(static_cast<double>(dim));
}

std::vector<double> Regularizer::argmin(std::size_t dim) const {
  return std::vector<double>(dim, 0.0);
}

}  // namespace saddlebench
