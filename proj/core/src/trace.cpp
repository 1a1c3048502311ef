#include "saddlebench/trace.hpp"

#include <ostream>

#include "saddlebench/format.hpp"
#include "saddlebench/losses.hpp"

namespace saddlebench {

void write_trace_csv(std::ostream& out, std::span<const std::string> comments,
                     std::span<const TraceRecord> records) {
  for (const auto& line : comments) out << "# " << line << '\n';
  out << kTraceColumns << '\n';
  for (const auto& r : records) {
    out << format_double(r.data_passes) << ',' << format_double(r.wall_seconds) << ','
        << format_double(r.primal_obj) << ',' << format_double(r.subopt) << ',' << format_double(r.gap)
        << '\n';
  }
}

double passes_to_threshold(std::span<const TraceRecord> records, double threshold) {
  for (const auto& r : records) {
    if (r.subopt <= threshold) return r.data_passes;
  }
  return kInf;
}

}  // namespace saddlebench
