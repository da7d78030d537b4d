#include "vlcnet/power_metrics.hpp"

#include <stdexcept>

namespace vlcnet {

PowerBreakdown total_power(double electrical_power, int num_aps, int num_mirrors,
                           int num_users, const PowerModelConfig& cfg,
                           int steered_mirrors) {
  if (num_aps < 0 || num_mirrors < 0 || num_users < 0)
    throw std::invalid_argument("device counts must be >= 0");
  PowerBreakdown p;
  const double ap_mult = cfg.per_device ? static_cast<double>(num_aps) : (num_aps > 0 ? 1.0 : 0.0);
  const double rx_mult = cfg.per_device ? static_cast<double>(num_users) : (num_users > 0 ? 1.0 : 0.0);
  p.ap = electrical_power + ap_mult * cfg.per_ap_sum();
  const int charged = cfg.charge_all_mirrors || steered_mirrors < 0 ? num_mirrors
                                                                    : steered_mirrors;
  p.irs = charged * cfg.per_mirror;
  p.receivers = rx_mult * cfg.per_receiver_sum();
  p.total = p.ap + p.irs + p.receivers;
  return p;
}

double see(double sum_rate_bps, double total_power_w) {
  if (!(total_power_w > 0.0)) throw std::domain_error("total power must be positive");
  return sum_rate_bps / total_power_w;
}

double jain(const Eigen::VectorXd& rates) {
  const auto k = rates.size();
  if (k == 0) throw std::invalid_argument("empty rate vector");
  const double sum = rates.sum();
  const double sq = rates.squaredNorm();
  if (sq == 0.0) return 1.0;  // all-zero rates: treat as trivially fair
  return sum * sum / (static_cast<double>(k) * sq);
}

double objective(double jain_index, double see_value) { return jain_index * see_value; }

}  // namespace vlcnet
