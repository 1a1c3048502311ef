// Benchmark harness: dataset generation, single solver runs with CSV
// traces, and multi-solver benchmarks against a shared reference solution.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "saddlebench/baselines.hpp"
#include "saddlebench/datamat.hpp"
#include "saddlebench/format.hpp"
#include "saddlebench/losses.hpp"
#include "saddlebench/metrics.hpp"
#include "saddlebench/spd1.hpp"
#include "saddlebench/spd1vr.hpp"
#include "saddlebench/trace.hpp"
#include "saddlebench/version.hpp"

namespace sb = saddlebench;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericError = 3;

struct NumericFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct ProblemOptions {
  std::string data_path;
  std::vector<double> synthetic;  // n, d, sigma
  std::string loss_name = "logistic";
  std::string reg_name = "l2";
  double lambda = 0.1;
  double lambda2 = 0.0;
  std::vector<double> box;  // lo, hi
  std::uint64_t seed = 42;
};

struct RunOptions {
  ProblemOptions problem;
  std::string solver = "spd1";
  std::string schedule = "strongly-convex";
  double eta = 0.0;
  double tau = 0.0;
  double step_mult = 1.0;
  double epochs = 10.0;
  double trace_every = 1.0;
  std::uint64_t inner = 0;
  double ref_tol = 0.0;  // 0 disables the reference (subopt stays NaN)
  std::string out;
};

struct Problem {
  sb::LabeledDataset data;
  std::vector<sb::Loss> losses;
  sb::Regularizer reg = sb::Regularizer::none();
  std::string dataset_desc;
};

void add_problem_options(CLI::App* cmd, ProblemOptions& opt) {
  auto* data = cmd->add_option("--data", opt.data_path, "dataset file in LIBSVM text format");
  auto* synth = cmd->add_option("--synthetic", opt.synthetic, "synthetic instance as n,d,sigma")
                    ->delimiter(',')
                    ->expected(3);
  data->excludes(synth);
  cmd->add_option("--loss", opt.loss_name, "loss: logistic | squared-hinge | hinge")
      ->default_val("logistic");
  cmd->add_option("--reg", opt.reg_name, "regularizer: l2 | l1 | elastic | none")->default_val("l2");
  cmd->add_option("--lambda", opt.lambda, "regularizer weight (l1 weight for elastic)")
      ->default_val(0.1);
  cmd->add_option("--lambda2", opt.lambda2, "quadratic weight for elastic")->default_val(0.0);
  cmd->add_option("--box", opt.box, "feasible box as lo,hi (must contain 0)")
      ->delimiter(',')
      ->expected(2);
  cmd->add_option("--seed", opt.seed, "seed for data generation and solver sampling")
      ->default_val(42);
}

Problem build_problem(const ProblemOptions& opt) {
  Problem p;
  if (!opt.data_path.empty()) {
    p.data = sb::parse_libsvm_file(opt.data_path);
    p.dataset_desc = opt.data_path;
  } else if (opt.synthetic.size() == 3) {
    if (opt.synthetic[0] < 1.0 || opt.synthetic[1] < 1.0 || opt.synthetic[0] > 1e9 ||
        opt.synthetic[1] > 1e9 || opt.synthetic[2] < 0.0) {
      throw std::invalid_argument("--synthetic needs n,d in [1, 1e9] and sigma >= 0");
    }
    const auto n = static_cast<std::size_t>(opt.synthetic[0]);
    const auto d = static_cast<std::size_t>(opt.synthetic[1]);
    p.data = sb::gen_synthetic(n, d, opt.synthetic[2], opt.seed).data;
    std::ostringstream desc;
    desc << "synthetic:" << n << ',' << d << ',' << sb::format_double(opt.synthetic[2]);
    p.dataset_desc = desc.str();
  } else {
    throw std::invalid_argument("one of --data or --synthetic is required");
  }
  if (p.data.size() == 0) throw std::invalid_argument("dataset is empty");

  p.losses = sb::make_losses(sb::loss_kind_from_name(opt.loss_name), p.data.labels);

  const sb::RegKind kind = sb::reg_kind_from_name(opt.reg_name);
  switch (kind) {
    case sb::RegKind::none: p.reg = sb::Regularizer::none(); break;
    case sb::RegKind::l2: p.reg = sb::Regularizer::l2(opt.lambda); break;
    case sb::RegKind::l1: p.reg = sb::Regularizer::l1(opt.lambda); break;
    case sb::RegKind::elastic: p.reg = sb::Regularizer::elastic_net(opt.lambda, opt.lambda2); break;
  }
  if (opt.box.size() == 2) p.reg = p.reg.boxed(opt.box[0], opt.box[1]);
  return p;
}

std::string canonical_config(const RunOptions& run, const Problem& problem) {
  std::ostringstream s;
  s << "dataset=" << problem.dataset_desc << " loss=" << run.problem.loss_name
    << " reg=" << run.problem.reg_name << " lambda=" << sb::format_double(run.problem.lambda)
    << " lambda2=" << sb::format_double(run.problem.lambda2) << " box=";
  if (run.problem.box.size() == 2) {
    s << sb::format_double(run.problem.box[0]) << ',' << sb::format_double(run.problem.box[1]);
  } else {
    s << "none";
  }
  s << " solver=" << run.solver << " schedule=" << run.schedule
    << " eta=" << sb::format_double(run.eta) << " tau=" << sb::format_double(run.tau)
    << " step_mult=" << sb::format_double(run.step_mult)
    << " epochs=" << sb::format_double(run.epochs) << " inner=" << run.inner
    << " trace_every=" << sb::format_double(run.trace_every) << " seed=" << run.problem.seed;
  return s.str();
}

// Collects solver probes into trace records, evaluating the metrics at the
// probe's designated iterate. Primal-only solvers get their dual point
// recovered from the loss slopes.
class TraceBuilder {
 public:
  TraceBuilder(const Problem& problem, const sb::ReferenceSolution* ref)
      : problem_(problem), ref_(ref) {}

  sb::SampleFn callback() {
    return [this](const sb::SolverSample& s) {
      sb::TraceRecord r;
      r.data_passes = s.data_passes;
      r.wall_seconds = s.wall_seconds;
      r.primal_obj = sb::primal_objective(s.x, problem_.data, problem_.losses, problem_.reg);
      const std::vector<double> y_eval =
          s.y.empty() ? sb::recover_dual(s.x, problem_.data, problem_.losses)
                      : std::vector<double>(s.y.begin(), s.y.end());
      r.gap = r.primal_obj - sb::dual_objective(y_eval, problem_.data, problem_.losses, problem_.reg);
      r.subopt = ref_ ? r.primal_obj - ref_->p_star : std::numeric_limits<double>::quiet_NaN();
      records_.push_back(r);
    };
  }

  const std::vector<sb::TraceRecord>& records() const { return records_; }

 private:
  const Problem& problem_;
  const sb::ReferenceSolution* ref_;
  std::vector<sb::TraceRecord> records_;
};

std::uint64_t passes_to_iters(double passes, double unit) {
  if (passes <= 0.0) return 0;
  return static_cast<std::uint64_t>(std::llround(std::ceil(passes * unit)));
}

// Probe cadence in iterations; a nonpositive request disables periodic
// probes in favor of the fallback (typically the full budget, so the final
// point is still recorded).
std::uint64_t cadence_iters(double passes, double unit, std::uint64_t fallback) {
  if (passes <= 0.0) return fallback;
  const auto c = static_cast<std::uint64_t>(std::llround(passes * unit));
  return std::max<std::uint64_t>(1, c);
}

// Executes one solver run described by `run` and returns its trace.
std::vector<sb::TraceRecord> execute_run(const Problem& problem, const RunOptions& run,
                                         const sb::ReferenceSolution* ref) {
  const std::size_t n = problem.data.matrix.rows();
  const std::size_t d = problem.data.matrix.cols();
  const double cells = static_cast<double>(n) * static_cast<double>(d);
  TraceBuilder builder(problem, ref);
  const auto cb = builder.callback();

  if (run.solver == "spd1") {
    sb::StepSchedule schedule = [&] {
      if (run.schedule == "lipschitz") {
        return sb::make_lipschitz_schedule(problem.data, problem.losses, problem.reg, run.step_mult);
      }
      if (run.schedule == "strongly-convex") {
        return sb::make_strongly_convex_schedule(problem.data, problem.losses, problem.reg,
                                                 run.step_mult);
      }
      if (run.schedule == "fixed") {
        return sb::StepSchedule::fixed_steps(run.eta, run.tau, run.step_mult);
      }
      throw std::invalid_argument("unknown spd1 schedule '" + run.schedule + "'");
    }();
    const std::uint64_t iters = passes_to_iters(run.epochs, cells);
    sb::run_spd1(problem.data, problem.losses, problem.reg, schedule, iters,
                 cadence_iters(run.trace_every, cells, iters), run.problem.seed, cb);
    return builder.records();
  }

  if (run.solver == "spd1-vr") {
    sb::VrConfig cfg = run.eta > 0.0 && run.tau > 0.0
                           ? sb::VrConfig::explicit_steps(run.eta, run.tau, 1, run.inner)
                           : sb::VrConfig::theory(problem.data, problem.losses, problem.reg, 1,
                                                  run.step_mult, run.inner);
    const std::uint64_t inner = cfg.inner_iters == 0 ? static_cast<std::uint64_t>(cells) : cfg.inner_iters;
    const double passes_per_outer =
        (3.0 * static_cast<double>(inner) + static_cast<double>(problem.data.matrix.nnz())) / cells;
    cfg.outer_loops = run.epochs <= 0.0
                          ? 0
                          : std::max<std::uint64_t>(
                                1, static_cast<std::uint64_t>(std::llround(
                                       std::ceil(run.epochs / passes_per_outer))));
    if (cfg.outer_loops == 0) {
      cfg.outer_loops = 1;
      cfg.inner_iters = inner;
      // zero-budget run: emit the initial point only
      sb::Spd1VrSolver solver(problem.data, problem.losses, problem.reg, cfg, run.problem.seed);
      cb(sb::SolverSample{0.0, 0.0, solver.x(), solver.y()});
      return builder.records();
    }
    sb::run_spd1vr(problem.data, problem.losses, problem.reg, cfg,
                   cadence_iters(run.trace_every, cells / 3.0, 0), run.problem.seed, cb);
    return builder.records();
  }

  if (run.solver == "psgd") {
    sb::PsgdStep mode;
    if (run.schedule == "sqrt") {
      mode = sb::PsgdStep::sqrt_decay;
    } else if (run.schedule == "strongly-convex") {
      mode = sb::PsgdStep::strongly_convex_decay;
    } else if (run.schedule == "fixed") {
      mode = sb::PsgdStep::fixed;
    } else {
      throw std::invalid_argument("unknown psgd schedule '" + run.schedule + "'");
    }
    const double step = run.eta > 0.0 ? run.eta : 1.0;
    const std::uint64_t iters = passes_to_iters(run.epochs, static_cast<double>(n));
    sb::run_psgd(problem.data, problem.losses, problem.reg, mode, step * run.step_mult, iters,
                 cadence_iters(run.trace_every, static_cast<double>(n), iters), run.problem.seed,
                 cb);
    return builder.records();
  }

  if (run.solver == "svrg") {
    const double step = (run.eta > 0.0 ? run.eta : 0.1) * run.step_mult;
    const std::uint64_t inner = run.inner == 0 ? n : run.inner;
    const double passes_per_outer = static_cast<double>(inner + n) / static_cast<double>(n);
    const std::uint64_t outers =
        run.epochs <= 0.0 ? 0
                          : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(
                                                           std::ceil(run.epochs / passes_per_outer))));
    sb::run_svrg(problem.data, problem.losses, problem.reg, step, inner, outers,
                 cadence_iters(run.trace_every, static_cast<double>(n), 0), run.problem.seed, cb);
    return builder.records();
  }

  if (run.solver == "saga") {
    const double step = (run.eta > 0.0 ? run.eta : 0.1) * run.step_mult;
    const std::uint64_t iters = passes_to_iters(run.epochs, static_cast<double>(n));
    sb::run_saga(problem.data, problem.losses, problem.reg, step, iters,
                 cadence_iters(run.trace_every, static_cast<double>(n), iters), run.problem.seed,
                 cb);
    return builder.records();
  }

  throw std::invalid_argument("unknown solver '" + run.solver + "'");
}

std::vector<std::string> trace_header(const RunOptions& run, const Problem& problem,
                                      const sb::ReferenceSolution* ref,
                                      std::optional<double> tuned) {
  std::vector<std::string> header;
  header.push_back(std::string("saddlebench ") + sb::kVersion);
  header.push_back("config: " + canonical_config(run, problem));
  header.push_back(
      "passes: entry accesses / (n*d) for spd1 and spd1-vr (snapshot sweeps included), sample "
      "accesses / n for psgd, svrg and saga");
  if (tuned) header.push_back("tuned: " + sb::format_double(*tuned));
  if (ref) {
    header.push_back("reference: p_star=" + sb::format_double(ref->p_star) +
                     " gap=" + sb::format_double(ref->achieved_gap) + " method=" + ref->method);
  }
  return header;
}

void write_trace_file(const std::string& path, const std::vector<std::string>& header,
                      std::span<const sb::TraceRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  sb::write_trace_csv(out, header, records);
  if (!out) throw std::invalid_argument("failed writing output file: " + path);
}

int cmd_gen(const std::size_t n, const std::size_t d, const double sigma, const std::uint64_t seed,
            const std::string& out_path) {
  const auto problem = sb::gen_synthetic(n, d, sigma, seed);
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot open output file: " + out_path);
  sb::serialize_libsvm(problem.data, out);
  out.close();
  if (!out) throw std::invalid_argument("failed writing output file: " + out_path);

  std::string planted;
  for (double v : problem.planted_model) {
    planted += sb::format_double(v);
    planted += ',';
  }
  std::ostringstream meta;
  meta << "n=" << n << " d=" << d << " sigma=" << sb::format_double(sigma) << " seed=" << seed
       << " planted_checksum=" << std::hex << fnv1a(planted) << '\n';
  std::ofstream meta_out(out_path + ".meta");
  if (!meta_out) throw std::invalid_argument("cannot open output file: " + out_path + ".meta");
  meta_out << meta.str();
  return 0;
}

int cmd_run(const RunOptions& run) {
  const Problem problem = build_problem(run.problem);
  std::optional<sb::ReferenceSolution> ref;
  if (run.ref_tol > 0.0) {
    ref = sb::compute_reference(problem.data, problem.losses, problem.reg, run.ref_tol);
    if (!ref->converged) {
      throw NumericFailure("reference solve did not reach tol=" + sb::format_double(run.ref_tol) +
                           " (best gap " + sb::format_double(ref->achieved_gap) + ")");
    }
  }
  const auto records = execute_run(problem, run, ref ? &*ref : nullptr);
  write_trace_file(run.out, trace_header(run, problem, ref ? &*ref : nullptr, std::nullopt), records);
  return 0;
}

struct BenchOptions {
  ProblemOptions problem;
  std::vector<std::string> solvers = {"spd1", "spd1-vr", "psgd", "svrg", "saga"};
  double epochs = 20.0;
  double trace_every = 0.25;
  double ref_tol = 1e-10;
  std::string out_dir;
};

std::size_t bench_thread_cap() {
  if (const char* env = std::getenv("SADDLEBENCH_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Tuning grid {10^k, 3*10^k}; the range differs per solver family.
std::vector<double> tuning_grid(int k_lo, int k_hi) {
  std::vector<double> grid;
  for (int k = k_lo; k <= k_hi; ++k) {
    grid.push_back(std::pow(10.0, k));
    grid.push_back(3.0 * std::pow(10.0, k));
  }
  return grid;
}

int cmd_bench(const BenchOptions& bench) {
  const Problem problem = build_problem(bench.problem);
  namespace fs = std::filesystem;
  fs::create_directories(bench.out_dir);

  const auto ref =
      sb::compute_reference(problem.data, problem.losses, problem.reg, bench.ref_tol);
  if (!ref.converged) {
    throw NumericFailure("reference solve did not reach tol=" + sb::format_double(bench.ref_tol) +
                         "; best gap " + sb::format_double(ref.achieved_gap) +
                         " via " + ref.method + " -- cannot score suboptimality");
  }

  struct Task {
    std::string solver;
    double candidate;
    RunOptions run;
    std::vector<sb::TraceRecord> records;
    double final_subopt = std::numeric_limits<double>::infinity();
    std::string error;
  };

  auto run_pool = [&](std::vector<Task>& tasks) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t at = next.fetch_add(1);
        if (at >= tasks.size()) break;
        Task& t = tasks[at];
        try {
          t.records = execute_run(problem, t.run, &ref);
          if (!t.records.empty() && std::isfinite(t.records.back().subopt)) {
            t.final_subopt = t.records.back().subopt;
          }
        } catch (const std::exception& e) {
          t.error = e.what();  // divergent or invalid candidates lose the tuning race
        }
      }
    };
    const std::size_t n_threads =
        std::min(bench_thread_cap(), std::max<std::size_t>(1, tasks.size()));
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  };

  // Tuning pilots run at a quarter of the budget; each winner is rerun in
  // full afterwards.
  const double pilot_epochs = std::min(bench.epochs, std::max(2.0, bench.epochs / 4.0));
  std::vector<Task> pilots;
  for (const auto& solver : bench.solvers) {
    RunOptions base;
    base.problem = bench.problem;
    base.solver = solver;
    base.epochs = pilot_epochs;
    base.trace_every = bench.trace_every;

    std::vector<double> grid;
    if (solver == "psgd" || solver == "svrg" || solver == "saga") {
      base.schedule = "fixed";
      grid = tuning_grid(-6, 1);
    } else if (solver == "spd1") {
      base.schedule = problem.reg.strong_convexity() > 0.0 ? "strongly-convex" : "lipschitz";
      grid = tuning_grid(-2, 2);
    } else if (solver == "spd1-vr") {
      grid = tuning_grid(-1, 3);
    } else {
      throw std::invalid_argument("unknown solver '" + solver + "'");
    }
    for (double candidate : grid) {
      Task t;
      t.solver = solver;
      t.candidate = candidate;
      t.run = base;
      if (solver == "spd1" || solver == "spd1-vr") {
        t.run.step_mult = candidate;
      } else {
        t.run.eta = candidate;
      }
      pilots.push_back(std::move(t));
    }
  }
  run_pool(pilots);

  std::vector<Task> finals;
  for (const auto& solver : bench.solvers) {
    const Task* best = nullptr;
    for (const auto& t : pilots) {
      if (t.solver != solver || !t.error.empty()) continue;
      if (!best || t.final_subopt < best->final_subopt) best = &t;
    }
    if (!best) throw NumericFailure("every tuning candidate for " + solver + " failed");
    Task full = *best;
    full.records.clear();
    full.final_subopt = std::numeric_limits<double>::infinity();
    full.run.epochs = bench.epochs;
    finals.push_back(std::move(full));
  }
  if (pilot_epochs < bench.epochs) {
    run_pool(finals);
  } else {
    for (std::size_t k = 0; k < finals.size(); ++k) {
      for (const auto& t : pilots) {
        if (t.solver == finals[k].solver && t.candidate == finals[k].candidate && t.error.empty()) {
          finals[k].records = t.records;
          finals[k].final_subopt = t.final_subopt;
        }
      }
    }
  }

  std::ofstream summary(fs::path(bench.out_dir) / "summary.csv");
  if (!summary) throw std::invalid_argument("cannot open summary.csv under " + bench.out_dir);
  summary << "solver,passes_to_1e-4,passes_to_1e-6,final_subopt\n";

  for (const auto& task : finals) {
    if (!task.error.empty()) {
      throw NumericFailure("full run for " + task.solver + " failed: " + task.error);
    }
    const std::string path = (fs::path(bench.out_dir) / (task.solver + ".csv")).string();
    write_trace_file(path, trace_header(task.run, problem, &ref, task.candidate), task.records);
    summary << task.solver << ','
            << sb::format_double(sb::passes_to_threshold(task.records, 1e-4)) << ','
            << sb::format_double(sb::passes_to_threshold(task.records, 1e-6)) << ','
            << sb::format_double(task.final_subopt) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entry-sampled primal-dual ERM solvers and baselines"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic LIBSVM dataset with sidecar metadata");
  std::size_t gen_n = 100, gen_d = 100;
  double gen_sigma = 1.0;
  std::uint64_t gen_seed = 42;
  std::string gen_out;
  gen->add_option("--n", gen_n, "sample count")->required();
  gen->add_option("--d", gen_d, "feature count")->required();
  gen->add_option("--sigma", gen_sigma, "label noise standard deviation")->default_val(1.0);
  gen->add_option("--seed", gen_seed, "generator seed")->default_val(42);
  gen->add_option("--out", gen_out, "output path")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "run one solver and write a CSV trace");
  RunOptions run;
  add_problem_options(run_cmd, run.problem);
  run_cmd->add_option("--solver", run.solver, "spd1 | spd1-vr | psgd | svrg | saga")->required();
  run_cmd->add_option("--schedule", run.schedule,
                      "spd1: lipschitz | strongly-convex | fixed; psgd: sqrt | strongly-convex | fixed")
      ->default_val("strongly-convex");
  run_cmd->add_option("--eta", run.eta, "fixed primal step (baselines: the step)")->default_val(0.0);
  run_cmd->add_option("--tau", run.tau, "fixed dual step")->default_val(0.0);
  run_cmd->add_option("--step-mult", run.step_mult, "multiplier on the schedule or step")
      ->default_val(1.0);
  run_cmd->add_option("--epochs", run.epochs, "data-pass budget")->default_val(10.0);
  run_cmd->add_option("--trace-every", run.trace_every, "trace cadence in data passes")
      ->default_val(1.0);
  run_cmd->add_option("--inner", run.inner, "inner loop length override (spd1-vr, svrg)")
      ->default_val(0);
  run_cmd->add_option("--ref-tol", run.ref_tol,
                      "compute a reference solution to this gap and fill the subopt column")
      ->default_val(0.0);
  run_cmd->add_option("--out", run.out, "output CSV path")->required();

  // bench
  auto* bench_cmd =
      app.add_subcommand("bench", "tune and run several solvers against one shared reference");
  BenchOptions bench;
  add_problem_options(bench_cmd, bench.problem);
  bench_cmd->add_option("--solvers", bench.solvers, "comma-separated solver list")->delimiter(',');
  bench_cmd->add_option("--epochs", bench.epochs, "data-pass budget per run")->default_val(20.0);
  bench_cmd->add_option("--trace-every", bench.trace_every, "trace cadence in data passes")
      ->default_val(0.25);
  bench_cmd->add_option("--ref-tol", bench.ref_tol, "reference solution gap")->default_val(1e-10);
  bench_cmd->add_option("--out", bench.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_n, gen_d, gen_sigma, gen_seed, gen_out);
    if (run_cmd->parsed()) return cmd_run(run);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return kExitConfigError;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfigError;
  } catch (const NumericFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}
