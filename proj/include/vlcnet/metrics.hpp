#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace vlcnet {

/// Per-episode aggregates; violation columns are mean counts per step.
struct EpisodeRecord {
  int episode = 0;
  double mean_reward = 0.0;
  double sum_rate = 0.0;   // bit/s, mean over steps
  double see_value = 0.0;  // bit/J, mean over steps
  double jain_index = 0.0;
  double objective_value = 0.0;
  double qos_violations = 0.0;
  double power_violations = 0.0;
  double sigma = 0.0;  // exploration scale at episode end
};

inline const char* kMetricsHeader =
    "run,seed,episode,mean_reward,sum_rate,see,jain,objective,qos_violations,"
    "power_violations,sigma";

void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const std::string& run_id, std::uint64_t seed,
                       const EpisodeRecord& r);

/// Long-format sweep rows, one per (axis value, scheme, seed).
struct SweepRecord {
  std::string axis;
  double value = 0.0;
  std::string scheme;
  std::uint64_t seed = 0;
  double sum_rate = 0.0;
  double see_value = 0.0;
  double jain_index = 0.0;
  double objective_value = 0.0;
};

inline const char* kSweepHeader = "axis,value,scheme,seed,sum_rate,see,jain,objective";

void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const SweepRecord& r);

/// Fixed shortest-round-trip formatting so equal doubles always print the
/// same bytes.
std::string format_double(double v);

}  // namespace vlcnet
