#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "saddlebench/baselines.hpp"
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

std::vector<double> full_gradient(const LabeledDataset& data, std::span<const Loss> losses,
                                  std::span<const double> x) {
  std::vector<double> g(data.matrix.cols(), 0.0);
  for (std::size_t i = 0; i < data.matrix.rows(); ++i) {
    const double slope = losses[i].derivative(data.matrix.row_dot(i, x));
    data.matrix.row_axpy(i, slope / static_cast<double>(data.matrix.rows()), g);
  }
  return g;
}

}  // namespace

TEST_CASE("psgd is stationary when every sampled gradient is zero") {
  LabeledDataset data;
  data.matrix = DataMatrix::from_dense(3, 2, std::vector<double>(6, 0.0));
  data.labels = {1.0, -1.0, 1.0};
  const auto losses = make_losses(LossKind::squared_hinge, data.labels);
  PsgdSolver solver(data, losses, Regularizer::none(), PsgdStep::fixed, 0.1, 5);
  solver.run(50);
  for (double v : solver.x()) CHECK(v == 0.0);
}

TEST_CASE("psgd single step against hand-computed values") {
  LabeledDataset data;
  data.matrix = DataMatrix::from_dense(1, 3, {1.0, 0.0, 0.0});
  data.labels = {1.0};
  const auto losses = make_losses(LossKind::squared_hinge, data.labels);
  PsgdSolver solver(data, losses, Regularizer::none(), PsgdStep::fixed, 0.1, 5);
  solver.step();
  // x <- x - 0.1 * phi'(0) * e1 = 0.1 * 2 * e1
  CHECK(solver.x()[0] == doctest::Approx(0.2));
  CHECK(solver.x()[1] == 0.0);
  CHECK(solver.x()[2] == 0.0);
}

TEST_CASE("psgd schedules and outputs") {
  const auto data = small_problem(6, 4, 60);
  const auto losses = make_losses(LossKind::logistic, data.labels);

  SUBCASE("sqrt decay averages its history") {
    PsgdSolver solver(data, losses, Regularizer::l2(0.2), PsgdStep::sqrt_decay, 0.5, 3);
    std::vector<double> sum(4, 0.0);
    const int total = 40;
    for (int t = 0; t < total; ++t) {
      for (std::size_t j = 0; j < 4; ++j) sum[j] += solver.x()[j];
      solver.step();
    }
    const auto out = solver.output();
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(out[j] == doctest::Approx(sum[j] / total).epsilon(1e-12));
    }
  }
  SUBCASE("strongly convex decay returns the last iterate") {
    PsgdSolver solver(data, losses, Regularizer::l2(0.2), PsgdStep::strongly_convex_decay, 1.0, 3);
    solver.run(20);
    CHECK(solver.output() == std::vector<double>(solver.x().begin(), solver.x().end()));
    CHECK_THROWS_AS(
        PsgdSolver(data, losses, Regularizer::l1(0.2), PsgdStep::strongly_convex_decay, 1.0, 3),
        std::invalid_argument);
  }
  SUBCASE("same seed replays") {
    PsgdSolver a(data, losses, Regularizer::l2(0.2), PsgdStep::fixed, 0.05, 9);
    PsgdSolver b(data, losses, Regularizer::l2(0.2), PsgdStep::fixed, 0.05, 9);
    a.run(100);
    b.run(100);
    CHECK(std::vector<double>(a.x().begin(), a.x().end()) ==
          std::vector<double>(b.x().begin(), b.x().end()));
  }
}

TEST_CASE("svrg reduces to a full-gradient step at the snapshot") {
  const auto data = small_problem(7, 5, 61);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  const auto reg = Regularizer::l2(0.3);
  const double step = 0.05;
  SvrgSolver solver(data, losses, reg, step, 0, 11);
  solver.take_snapshot();
  const std::vector<double> x0(solver.x().begin(), solver.x().end());
  const std::vector<double> grad(solver.full_gradient().begin(), solver.full_gradient().end());
  solver.inner_step();
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(solver.x()[j] == doctest::Approx(reg.prox(x0[j] - step * grad[j], step)).epsilon(1e-14));
  }
}

TEST_CASE("svrg estimator enumeration equals the full gradient") {
  const auto data = small_problem(9, 6, 62);
  const auto losses = make_losses(LossKind::squared_hinge, data.labels);
  SvrgSolver solver(data, losses, Regularizer::l2(0.1), 0.02, 0, 13);
  solver.run_epoch();  // move x away from the snapshot
  const auto exact = full_gradient(data, losses, solver.x());
  std::vector<double> mean(6, 0.0);
  for (std::size_t i = 0; i < 9; ++i) {
    const auto est = solver.gradient_estimate(i);
    for (std::size_t j = 0; j < 6; ++j) mean[j] += est[j] / 9.0;
  }
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(mean[j] == doctest::Approx(exact[j]).epsilon(1e-12));
  }
}

TEST_CASE("svrg inner loop defaults to n steps") {
  const auto data = small_problem(8, 3, 63);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  SvrgSolver solver(data, losses, Regularizer::l2(0.1), 0.05, 0, 3);
  CHECK(solver.inner_iters() == 8);
  solver.run_epoch();
  CHECK(solver.sample_accesses() == 8 + 8);  // snapshot reads n, inner loop reads n
}

TEST_CASE("saga table invariants") {
  const auto data = small_problem(10, 4, 64);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  SagaSolver solver(data, losses, Regularizer::l2(0.2), 0.05, 21);

  SUBCASE("table average equals the full gradient at the start") {
    const auto exact = full_gradient(data, losses, solver.x());
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(solver.gradient_average()[j] == doctest::Approx(exact[j]).epsilon(1e-12));
    }
  }
  SUBCASE("table average stays consistent after many random steps") {
    solver.run(10000);
    std::vector<double> recomputed(4, 0.0);
    for (std::size_t i = 0; i < 10; ++i) {
      data.matrix.row_axpy(i, solver.stored_derivatives()[i] / 10.0, recomputed);
    }
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(solver.gradient_average()[j] == doctest::Approx(recomputed[j]).epsilon(1e-8));
    }
  }
}

TEST_CASE("saga estimator enumeration equals the full gradient") {
  const auto data = small_problem(9, 5, 66);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  SagaSolver solver(data, losses, Regularizer::l2(0.1), 0.05, 27);
  solver.run(500);  // desynchronize the table from the iterate
  const auto exact = full_gradient(data, losses, solver.x());
  std::vector<double> mean(5, 0.0);
  for (std::size_t i = 0; i < 9; ++i) {
    // estimator for sample i: (fresh_i - stored_i) * a_i + table average
    const double fresh = losses[i].derivative(data.matrix.row_dot(i, solver.x()));
    std::vector<double> est(solver.gradient_average().begin(), solver.gradient_average().end());
    data.matrix.row_axpy(i, fresh - solver.stored_derivatives()[i], est);
    for (std::size_t j = 0; j < 5; ++j) mean[j] += est[j] / 9.0;
  }
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(mean[j] == doctest::Approx(exact[j]).epsilon(1e-12));
  }
}

TEST_CASE("saga with one sample is a deterministic full-gradient method") {
  LabeledDataset data;
  data.matrix = DataMatrix::from_dense(1, 2, {1.0, -2.0});
  data.labels = {1.0};
  const auto losses = make_losses(LossKind::logistic, data.labels);
  const auto reg = Regularizer::l2(0.5);
  const double step = 0.1;
  SagaSolver solver(data, losses, reg, step, 33);

  std::vector<double> x = {0.0, 0.0};
  for (int t = 0; t < 25; ++t) {
    const auto grad = full_gradient(data, losses, x);
    for (std::size_t j = 0; j < 2; ++j) x[j] = reg.prox(x[j] - step * grad[j], step);
    solver.step();
    CHECK(solver.x()[0] == doctest::Approx(x[0]).epsilon(1e-12));
    CHECK(solver.x()[1] == doctest::Approx(x[1]).epsilon(1e-12));
  }
}

TEST_CASE("all baselines meet the reference on a strongly convex instance") {
  const auto data = scaled_problem(20, 10, 65, 0.25);
  const auto losses = make_losses(LossKind::logistic, data.labels);
  const auto reg = Regularizer::l2(1.0);
  const auto ref = compute_reference(data, losses, reg, 1e-11, 4000);
  REQUIRE(ref.converged);

  auto subopt = [&](std::span<const double> x) {
    return primal_objective(x, data, losses, reg) - ref.p_star;
  };

  const auto psgd =
      run_psgd(data, losses, reg, PsgdStep::strongly_convex_decay, 1.0, 400000, 0, 3);
  CHECK(subopt(psgd) <= 1e-6);

  const auto svrg = run_svrg(data, losses, reg, 0.1, 0, 60, 0, 3);
  CHECK(subopt(svrg) <= 1e-6);

  const auto saga = run_saga(data, losses, reg, 0.1, 4000, 0, 3);
  CHECK(subopt(saga) <= 1e-6);
}
