#include "vlcnet/noma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace vlcnet {

namespace {
constexpr double kSimplexTolerance = 1e-9;
constexpr double kImddFactor = std::numbers::e / (2.0 * std::numbers::pi);
}  // namespace

DecodingOrder sort_users_by_gain(const Eigen::VectorXd& combined_gains) {
  if (combined_gains.size() < 1) throw std::invalid_argument("need at least one user");
  if (!combined_gains.allFinite()) throw std::invalid_argument("non-finite channel gain");
  DecodingOrder order;
  order.users.resize(static_cast<size_t>(combined_gains.size()));
  std::iota(order.users.begin(), order.users.end(), 0);
  std::stable_sort(order.users.begin(), order.users.end(), [&](int a, int b) {
    return std::abs(combined_gains(a)) < std::abs(combined_gains(b));
  });
  return order;
}

PowerAllocation enforce_inverse_order(const Eigen::VectorXd& raw_simplex,
                                      const DecodingOrder& order) {
  const auto k = raw_simplex.size();
  if (static_cast<size_t>(k) != order.users.size())
    throw std::invalid_argument("allocation length does not match decoding order");
  if (raw_simplex.minCoeff() < 0.0 ||
      std::abs(raw_simplex.sum() - 1.0) > kSimplexTolerance)
    throw std::invalid_argument("power allocation coefficients are not on the simplex");

  std::vector<double> sorted(raw_simplex.data(), raw_simplex.data() + k);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  PowerAllocation out;
  out.coefficients.resize(k);
  for (Eigen::Index pos = 0; pos < k; ++pos)
    out.coefficients(order.users[static_cast<size_t>(pos)]) =
        sorted[static_cast<size_t>(pos)];
  return out;
}

double sinr(int position, const PowerAllocation& alloc, const Eigen::VectorXd& gains,
            const DecodingOrder& order, const LinkParams& link) {
  const int k = static_cast<int>(order.users.size());
  if (position < 0 || position >= k) throw std::out_of_range("decoding position");
  const int user = order.users[static_cast<size_t>(position)];
  const double g = link.responsivity * gains(user);
  const double signal = g * g * alloc.coefficients(user) * link.electrical_power;
  const double noise = link.bandwidth * link.noise_psd;
  if (position == k - 1) return signal / noise;
  double later = 0.0;
  for (int j = position + 1; j < k; ++j)
    later += alloc.coefficients(order.users[static_cast<size_t>(j)]);
  return signal / (g * g * link.electrical_power * later + noise);
}

Eigen::VectorXd sinr_all(const PowerAllocation& alloc, const Eigen::VectorXd& gains,
                         const DecodingOrder& order, const LinkParams& link) {
  Eigen::VectorXd out(gains.size());
  for (int pos = 0; pos < static_cast<int>(order.users.size()); ++pos)
    out(order.users[static_cast<size_t>(pos)]) = sinr(pos, alloc, gains, order, link);
  return out;
}

double rate(double sinr_value, double bandwidth) {
  if (sinr_value < 0.0) throw std::domain_error("negative SINR");
  return bandwidth * std::log2(1.0 + kImddFactor * sinr_value);
}

Eigen::VectorXd rate_all(const Eigen::VectorXd& sinrs, double bandwidth) {
  Eigen::VectorXd out(sinrs.size());
  for (Eigen::Index i = 0; i < sinrs.size(); ++i) out(i) = rate(sinrs(i), bandwidth);
  return out;
}

double sum_rate(const Eigen::VectorXd& rates) { return rates.sum(); }

}  // namespace vlcnet
