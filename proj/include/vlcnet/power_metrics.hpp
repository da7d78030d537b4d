#pragma once

#include <Eigen/Dense>

namespace vlcnet {

/// Fixed electronics power draw, all in watts. Defaults are the reference
/// transceiver figures: per-AP transmitter chain, per-mirror steering cost
/// and per-receiver chain.
struct PowerModelConfig {
  double circuit_tx = 3.250;
  double led_driver = 2.758;
  double amplifier = 0.280;
  double filter_tx = 0.0025;
  double dac = 0.175;
  double per_mirror = 0.100;
  double circuit_rx = 0.0019;
  double filter_rx = 0.0025;
  double tia = 2.500;
  double adc = 0.095;
  double power_budget = 5.0;  // P_max, W (electrical)
  // Multiply the per-AP/per-receiver electronics by the device counts
  // (default) or count them once, for sensitivity checks.
  bool per_device = true;
  // Charge steering power for every mirror each step, or only for mirrors
  // whose angles changed that step.
  bool charge_all_mirrors = true;

  double per_ap_sum() const { return circuit_tx + led_driver + amplifier + filter_tx + dac; }
  double per_receiver_sum() const { return circuit_rx + filter_rx + tia + adc; }
};

struct PowerBreakdown {
  double ap = 0.0;
  double irs = 0.0;
  double receivers = 0.0;
  double total = 0.0;
};

/// Total consumption for the given electrical transmit power and device
/// counts. `steered_mirrors` only matters when charge_all_mirrors is off.
PowerBreakdown total_power(double electrical_power, int num_aps, int num_mirrors,
                           int num_users, const PowerModelConfig& cfg,
                           int steered_mirrors = -1);

/// Sum energy efficiency, bit/J.
double see(double sum_rate_bps, double total_power_w);

/// Jain fairness index in [1/K, 1]; defined as 1 for an all-zero rate vector.
double jain(const Eigen::VectorXd& rates);

/// The optimization target: fairness-weighted sum energy efficiency.
double objective(double jain_index, double see_value);

}  // namespace vlcnet
