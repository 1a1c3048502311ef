#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "saddlebench/metrics.hpp"
#include "saddlebench/rng.hpp"

using namespace saddlebench;

namespace {

LabeledDataset small_problem(std::size_t n, std::size_t d, std::uint64_t seed) {
  return gen_synthetic(n, d, 0.5, seed).data;
}

LabeledDataset scaled_problem(std::size_t n, std::size_t d, std::uint64_t seed, double scale) {
  auto p = gen_synthetic(n, d, 0.5, seed);
  std::vector<double> values;
  values.reserve(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) values.push_back(scale * p.data.matrix.entry(i, j));
  }
  LabeledDataset data;
  data.matrix = DataMatrix::from_dense(n, d, std::move(values));
  data.labels = p.data.labels;
  return data;
}

// y feasible for every loss: uniform inside each finite dual interval,
// bounded for the squared hinge.
std::vector<double> random_feasible_dual(std::span<const Loss> losses, Rng& rng) {
  std::vector<double> y(losses.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Interval box = losses[i].dual_interval();
    const double lo = std::max(box.lo, -6.0);
    const double hi = std::min(box.hi, 6.0);
    y[i] = lo + (hi - lo) * rng.uniform01();
  }
  return y;
}

}  // namespace

TEST_CASE("primal objective at pinned points") {
  SUBCASE("zero point gives log 2 for logistic") {
    const auto data = small_problem(6, 4, 70);
    const auto losses = make_losses(LossKind::logistic, data.labels);
    const std::vector<double> x(4, 0.0);
    CHECK(primal_objective(x, data, losses, Regularizer::l2(0.7)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("unit margin kills the squared hinge") {
    LabeledDataset data;
    data.matrix = DataMatrix::from_dense(1, 2, {1.0, 0.0});
    data.labels = {1.0};
    const auto losses = make_losses(LossKind::squared_hinge, data.labels);
    const std::vector<double> x = {1.0, 0.0};
    const auto reg = Regularizer::l2(0.4);
    CHECK(primal_objective(x, data, losses, reg) == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("random instance against extended-precision accumulation") {
    const auto data = small_problem(12, 7, 71);
    const auto losses = make_losses(LossKind::logistic, data.labels);
    const auto reg = Regularizer::elastic_net(0.1, 0.3);
    Rng rng(5);
    std::vector<double> x(7);
    for (auto& v : x) v = rng.normal();

    long double acc = 0.0L;
    for (std::size_t i = 0; i < 12; ++i) {
      long double margin = 0.0L;
      for (std::size_t j = 0; j < 7; ++j) margin += (long double)data.matrix.entry(i, j) * x[j];
      acc += (long double)losses[i].value((double)margin);
    }
    acc /= 12.0L;
    for (double v : x) acc += 0.1L * std::abs((long double)v) + 0.15L * (long double)v * v;
    CHECK(primal_objective(x, data, losses, reg) == doctest::Approx((double)acc).epsilon(1e-12));
  }
}

TEST_CASE("saddle value") {
  SUBCASE("zero pair vanishes for the squared hinge") {
    const auto data = small_problem(5, 3, 72);
    const auto losses = make_losses(LossKind::squared_hinge, data.labels);
    const std::vector<double> x(3, 0.0), y(5, 0.0);
    CHECK(saddle_value(x, y, data, losses, Regularizer::l1(0.2)) == 0.0);
  }
  SUBCASE("sup over y recovers the primal objective") {
    const auto data = small_problem(6, 4, 73);
    Rng rng(6);
    for (LossKind kind : {LossKind::logistic, LossKind::squared_hinge}) {
      const auto losses = make_losses(kind, data.labels);
      const auto reg = Regularizer::l2(0.3);
      std::vector<double> x(4);
      for (auto& v : x) v = rng.normal();
      const auto margins = data.matrix.mat_vec(x);
      // per-sample maximization of y*m - conj(y) over the dual interval
      double sup = reg.value(x);
      for (std::size_t i = 0; i < 6; ++i) {
        const Interval box = losses[i].dual_interval();
        const double lo = std::max(box.lo, -30.0);
        const double hi = std::min(box.hi, 30.0);
        const double y = oracles::golden_max(
            [&](double t) { return t * margins[i] - losses[i].conjugate(t); }, lo, hi, 1e-12);
        sup += (y * margins[i] - losses[i].conjugate(y)) / 6.0;
      }
      CHECK(std::abs(sup - primal_objective(x, data, losses, reg)) <= 1e-6);
    }
  }
  SUBCASE("bilinear term is linear in y") {
    const auto data = small_problem(5, 4, 74);
    Rng rng(7);
    std::vector<double> x(4), y(5);
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.normal();
    const auto ax = data.matrix.mat_vec(x);
    double bilinear = 0.0, doubled = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      bilinear += y[i] * ax[i] / 5.0;
      doubled += 2.0 * y[i] * ax[i] / 5.0;
    }
    CHECK(doubled == doctest::Approx(2.0 * bilinear).epsilon(1e-15));
  }
  SUBCASE("infeasible dual value pushes F to -inf, infeasible x to +inf") {
    const auto data = small_problem(3, 2, 75);
    const auto losses = make_losses(LossKind::logistic, data.labels);
    std::vector<double> x(2, 0.0);
    std::vector<double> y(3, 0.0);
    y[0] = 2.0;  // outside every logistic interval
    CHECK(saddle_value(x, y, data, losses, Regularizer::none()) == -kInf);
    const auto boxed = Regularizer::l2(0.1).boxed(-1.0, 1.0);
    const std::vector<double> x_out = {2.0, 0.0};
    CHECK(saddle_value(x_out, std::vector<double>(3, -0.5), data, losses, boxed) == kInf);
  }
}

TEST_CASE("dual objective") {
  const auto data = small_problem(6, 5, 76);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  Rng rng(8);

  SUBCASE("l2 closed form") {
    const double lambda = 0.4;
    const auto reg = Regularizer::l2(lambda);
    const auto y = random_feasible_dual(losses, rng);
    double conj = 0.0;
    for (std::size_t i = 0; i < 6; ++i) conj += losses[i].conjugate(y[i]) / 6.0;
    const auto aty = data.matrix.mat_t_vec(y);
    double quad = 0.0;
    for (double v : aty) quad += v * v;
    const double expected = -conj - quad / (2.0 * lambda * 36.0);
    CHECK(dual_objective(y, data, losses, reg) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("per-coordinate minimization matches a golden-section oracle") {
    const Regularizer regs[] = {Regularizer::l2(0.5), Regularizer::elastic_net(0.2, 0.3),
                                Regularizer::l1(2.0).boxed(-2.0, 1.0),
                                Regularizer::none().boxed(-0.5, 0.5)};
    for (const auto& reg : regs) {
      const auto y = random_feasible_dual(losses, rng);
      double conj = 0.0;
      for (std::size_t i = 0; i < 6; ++i) conj += losses[i].conjugate(y[i]) / 6.0;
      const auto aty = data.matrix.mat_t_vec(y);
      double inf_term = 0.0;
      for (double v : aty) {
        const double lo = std::max(reg.box().lo, -50.0);
        const double hi = std::min(reg.box().hi, 50.0);
        const double w = oracles::golden_min(
            [&](double t) { return (v / 6.0) * t + reg.value_at(t); }, lo, hi, 1e-13);
        inf_term += (v / 6.0) * w + reg.value_at(w);
      }
      CHECK(dual_objective(y, data, losses, reg) == doctest::Approx(-conj + inf_term).epsilon(1e-7));
    }
  }
  SUBCASE("unbounded l1 direction returns -inf") {
    // a dual point whose correlation beats the l1 weight on some coordinate
    const auto reg = Regularizer::l1(1e-6);
    std::vector<double> y(6);
    for (std::size_t i = 0; i < 6; ++i) y[i] = losses[i].label() > 0 ? -1.0 : 1.0;
    CHECK(dual_objective(y, data, losses, reg) == -kInf);
  }
  SUBCASE("infeasible dual returns -inf") {
    std::vector<double> y(6, 0.0);
    y[2] = 5.0;
    CHECK(dual_objective(y, data, losses, Regularizer::l2(0.5)) == -kInf);
  }
}

TEST_CASE("gap against the reference") {
  const auto data = scaled_problem(8, 5, 77, 0.4);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  const auto reg = Regularizer::l2(0.5);
  const auto ref = compute_reference(data, losses, reg, 1e-10, 5000);
  REQUIRE(ref.converged);

  SUBCASE("gap vanishes at the optimum and duality holds nearby") {
    CHECK(std::abs(primal_dual_gap(ref.x, ref.y, data, losses, reg)) <= 1e-6);
    CHECK(dual_objective(ref.y, data, losses, reg) == doctest::Approx(ref.p_star).epsilon(1e-6));
  }
  SUBCASE("gap dominates suboptimality and weak duality holds") {
    Rng rng(9);
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> x(5);
      for (auto& v : x) v = rng.normal();
      const auto y = random_feasible_dual(losses, rng);
      const double gap = primal_dual_gap(x, y, data, losses, reg);
      const double p = primal_objective(x, data, losses, reg);
      CHECK(gap >= p - ref.p_star - 1e-9);
      CHECK(dual_objective(y, data, losses, reg) <= p + 1e-9);
    }
  }
  SUBCASE("dual-infeasible probe yields an infinite gap") {
    std::vector<double> y(8, 4.0);
    CHECK(primal_dual_gap(ref.x, y, data, losses, reg) == kInf);
  }
}

TEST_CASE("potential function") {
  ReferenceSolution ref;
  ref.x = {1.0, 2.0};
  ref.y = {0.5};
  SUBCASE("zero at the reference") {
    CHECK(potential_delta(ref.x, ref.y, ref, 0.5, 1.0) == 0.0);
  }
  SUBCASE("unit displacement") {
    const std::vector<double> x = {2.0, 2.0};  // ref.x + e1
    CHECK(potential_delta(x, ref.y, ref, 0.5, 1.0) == doctest::Approx(2.0));
  }
  SUBCASE("halving under doubled eta") {
    const std::vector<double> x = {2.0, 3.0};
    const std::vector<double> y = {0.5};
    const double base = potential_delta(x, y, ref, 0.5, 1.0);
    CHECK(potential_delta(x, y, ref, 1.0, 1.0) == doctest::Approx(0.5 * base));
  }
  SUBCASE("weights must be positive") {
    CHECK_THROWS_AS(potential_delta(ref.x, ref.y, ref, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("reference computation") {
  SUBCASE("tiny ridge logistic converges to a tight gap") {
    const auto data = small_problem(5, 3, 78);
    const auto losses = make_losses(LossKind::logistic, data.labels);
    const auto ref = compute_reference(data, losses, Regularizer::l2(0.5), 1e-10, 10000);
    CHECK(ref.converged);
    CHECK(ref.achieved_gap <= 1e-10);
    for (std::size_t i = 0; i < losses.size(); ++i) {
      CHECK(losses[i].dual_interval().contains(ref.y[i]));
    }
  }
  SUBCASE("huge regularization pins the solution near zero") {
    const auto data = small_problem(6, 4, 79);
    const auto losses = make_losses(LossKind::logistic, data.labels);
    const auto ref = compute_reference(data, losses, Regularizer::l2(1000.0), 1e-10, 10000);
    REQUIRE(ref.converged);
    for (double v : ref.x) CHECK(std::abs(v) <= 1e-3);
    CHECK(ref.p_star == doctest::Approx(std::log(2.0)).epsilon(1e-3));
  }
  SUBCASE("reproducible bit for bit") {
    const auto data = small_problem(6, 4, 80);
    const auto losses = make_losses(LossKind::logistic, data.labels);
    const auto a = compute_reference(data, losses, Regularizer::l2(0.3), 1e-10);
    const auto b = compute_reference(data, losses, Regularizer::l2(0.3), 1e-10);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.p_star == b.p_star);
  }
  SUBCASE("unreachable tolerance reports failure but carries the best point") {
    const auto data = small_problem(5, 3, 81);
    const auto losses = make_losses(LossKind::hinge, data.labels);  // nonsmooth
    const auto ref = compute_reference(data, losses, Regularizer::l2(0.5), 1e-14, 30);
    CHECK(!ref.converged);
    CHECK(!ref.x.empty());
    CHECK(ref.achieved_gap < kInf);
    CHECK(ref.p_star < kInf);
  }
}

TEST_CASE("dual recovery uses the loss slope") {
  const auto data = small_problem(7, 4, 82);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  Rng rng(10);
  std::vector<double> x(4);
  for (auto& v : x) v = rng.normal();
  const auto y = recover_dual(x, data, losses);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(y[i] == losses[i].derivative(data.matrix.row_dot(i, x)));
    CHECK(losses[i].dual_interval().contains(y[i]));
  }
}
