#include "vlcnet/metrics.hpp"

#include <charconv>
#include <ostream>

namespace vlcnet {

std::string format_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_metrics_header(std::ostream& out) { out << kMetricsHeader << "\n"; }

void write_metrics_row(std::ostream& out, const std::string& run_id, std::uint64_t seed,
                       const EpisodeRecord& r) {
  out << run_id << ',' << seed << ',' << r.episode << ',' << format_double(r.mean_reward)
      << ',' << format_double(r.sum_rate) << ',' << format_double(r.see_value) << ','
      << format_double(r.jain_index) << ',' << format_double(r.objective_value) << ','
      << format_double(r.qos_violations) << ',' << format_double(r.power_violations)
      << ',' << format_double(r.sigma) << "\n";
}

void write_sweep_header(std::ostream& out) { out << kSweepHeader << "\n"; }

void write_sweep_row(std::ostream& out, const SweepRecord& r) {
  out << r.axis << ',' << format_double(r.value) << ',' << r.scheme << ',' << r.seed << ','
      << format_double(r.sum_rate) << ',' << format_double(r.see_value) << ','
      << format_double(r.jain_index) << ',' << format_double(r.objective_value) << "\n";
}

}  // namespace vlcnet
