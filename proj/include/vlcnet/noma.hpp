#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vlcnet {

/// Per-user power allocation coefficients; sums to one.
struct PowerAllocation {
  Eigen::VectorXd coefficients;  // length K, entries in [0, 1]
};

/// User indices sorted ascending by combined channel gain (weakest first);
/// ties broken by ascending user index.
struct DecodingOrder {
  std::vector<int> users;
};

/// Electrical link parameters shared by all users.
struct LinkParams {
  double electrical_power = 2.0;   // P_e, W
  double bandwidth = 20e6;         // Hz
  double noise_psd = 1e-21;        // A^2/Hz
  double responsivity = 0.5;       // A/W
  double optical_conversion = 1.0; // q, P_e = P_opt / q
};

DecodingOrder sort_users_by_gain(const Eigen::VectorXd& combined_gains);

/// Reassigns the multiset of coefficients so the weakest user receives the
/// largest coefficient, the strongest the smallest. Idempotent.
PowerAllocation enforce_inverse_order(const Eigen::VectorXd& raw_simplex,
                                      const DecodingOrder& order);

/// SINR of the user at `position` in the decoding order. Users decoded later
/// (stronger channels, smaller coefficients) appear as interference; the
/// last-decoded user sees noise only.
double sinr(int position, const PowerAllocation& alloc, const Eigen::VectorXd& gains,
            const DecodingOrder& order, const LinkParams& link);

/// All K SINRs indexed by user (not by decoding position).
Eigen::VectorXd sinr_all(const PowerAllocation& alloc, const Eigen::VectorXd& gains,
                         const DecodingOrder& order, const LinkParams& link);

/// IM/DD achievable rate, bit/s.
double rate(double sinr_value, double bandwidth);

Eigen::VectorXd rate_all(const Eigen::VectorXd& sinrs, double bandwidth);

double sum_rate(const Eigen::VectorXd& rates);

}  // namespace vlcnet
