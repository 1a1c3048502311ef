#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace saddlebench {

// One probe of a running solver. `data_passes` normalizes work across the
// solver families: entry touches / (n*d) for the entry samplers, sample
// touches / n for the primal baselines, snapshot work included for both.
// `x` is the iterate the solver designates for metric evaluation (the
// running average where the guarantee is on the average); `y` is empty for
// the primal-only baselines.
struct SolverSample {
  double data_passes;
  double wall_seconds;
  std::span<const double> x;
  std::span<const double> y;
};

using SampleFn = std::function<void(const SolverSample&)>;

// One row of a benchmark trace. `subopt` is NaN when no reference optimum
// is available; `gap` may be +inf for a dual-infeasible probe.
struct TraceRecord {
  double data_passes;
  double wall_seconds;
  double primal_obj;
  double subopt;
  double gap;
};

inline constexpr const char* kTraceColumns = "data_passes,wall_seconds,primal_obj,subopt,gap";

// Comment lines are emitted first, each prefixed with "# ".
void write_trace_csv(std::ostream& out, std::span<const std::string> comments,
                     std::span<const TraceRecord> records);

// First data_passes value whose subopt is <= threshold; +inf when never.
double passes_to_threshold(std::span<const TraceRecord> records, double threshold);

}  // namespace saddlebench
