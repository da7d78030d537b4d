// Straight-line reference implementations used only by tests. These are kept
// deliberately independent of the library code paths: raw scalars, explicit
// loops, no shared helpers.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

struct V3 {
  double x, y, z;
};

inline double dist(const V3& a, const V3& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

// direct line-of-sight gain, detector FOV checked via the incidence angle
inline double los_gain(const V3& ap, const V3& ap_normal, const V3& pd, const V3& pd_normal,
                       double area, double fov, double order) {
  const double d = dist(ap, pd);
  const double cos_rad =
      (ap_normal.x * (pd.x - ap.x) + ap_normal.y * (pd.y - ap.y) +
       ap_normal.z * (pd.z - ap.z)) / d;
  const double cos_inc =
      (pd_normal.x * (ap.x - pd.x) + pd_normal.y * (ap.y - pd.y) +
       pd_normal.z * (ap.z - pd.z)) / d;
  if (cos_inc < std::cos(fov)) return 0.0;
  if (cos_rad < 0.0 || cos_inc < 0.0) return 0.0;
  return (order + 1.0) * area * std::pow(cos_rad, order) * cos_inc /
         (2.0 * M_PI * d * d);
}

// first-order mirror reflection gain with the orientation-dependent cosines
// written out coordinate by coordinate
inline double irs_gain(const V3& ap, const V3& ap_normal, const V3& mirror, double yaw,
                       double roll, double reflectance, double mirror_area, const V3& pd,
                       const V3& pd_normal, double area, double fov, double order) {
  const double d_ml = dist(mirror, ap);
  const double d_km = dist(pd, mirror);
  const double nx = std::sin(yaw) * std::cos(roll);
  const double ny = std::cos(yaw) * std::cos(roll);
  const double nz = std::sin(roll);
  const double cos_rad_ap =
      (ap_normal.x * (mirror.x - ap.x) + ap_normal.y * (mirror.y - ap.y) +
       ap_normal.z * (mirror.z - ap.z)) / d_ml;
  const double cos_inc_mirror =
      (nx * (ap.x - mirror.x) + ny * (ap.y - mirror.y) + nz * (ap.z - mirror.z)) / d_ml;
  const double cos_irr_user =
      (nx * (mirror.x - pd.x) + ny * (mirror.y - pd.y) + nz * (mirror.z - pd.z)) / d_km;
  const double cos_inc_pd =
      (pd_normal.x * (mirror.x - pd.x) + pd_normal.y * (mirror.y - pd.y) +
       pd_normal.z * (mirror.z - pd.z)) / d_km;
  if (cos_inc_pd < std::cos(fov)) return 0.0;
  if (cos_rad_ap < 0.0 || cos_inc_mirror < 0.0 || cos_irr_user < 0.0 || cos_inc_pd < 0.0)
    return 0.0;
  return (order + 1.0) * reflectance * area * mirror_area *
         std::pow(cos_rad_ap, order) * cos_inc_mirror * cos_irr_user * cos_inc_pd /
         (2.0 * M_PI * M_PI * d_ml * d_ml * d_km * d_km);
}

// full NOMA pipeline: ascending-gain ordering, inverse coefficient
// assignment, per-position SINR with later-decoded interference, IM/DD rates
struct NomaResult {
  std::vector<double> alpha_by_user;
  std::vector<double> sinr_by_user;
  std::vector<double> rate_by_user;
  double sum_rate;
};

inline NomaResult noma_pipeline(const std::vector<double>& gains,
                                const std::vector<double>& alpha_raw, double power,
                                double bandwidth, double noise_psd, double responsivity) {
  const int k = static_cast<int>(gains.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::fabs(gains[a]) < std::fabs(gains[b]);
  });
  std::vector<double> sorted = alpha_raw;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  NomaResult r;
  r.alpha_by_user.resize(k);
  for (int pos = 0; pos < k; ++pos) r.alpha_by_user[order[pos]] = sorted[pos];
  r.sinr_by_user.resize(k);
  r.rate_by_user.resize(k);
  r.sum_rate = 0.0;
  const double noise = bandwidth * noise_psd;
  for (int pos = 0; pos < k; ++pos) {
    const int user = order[pos];
    const double g = responsivity * gains[user];
    double interference = 0.0;
    for (int j = pos + 1; j < k; ++j)
      interference += g * g * r.alpha_by_user[order[j]] * power;
    const double denom = pos == k - 1 ? noise : interference + noise;
    r.sinr_by_user[user] = g * g * r.alpha_by_user[user] * power / denom;
    r.rate_by_user[user] =
        bandwidth * std::log2(1.0 + std::exp(1.0) / (2.0 * M_PI) * r.sinr_by_user[user]);
    r.sum_rate += r.rate_by_user[user];
  }
  return r;
}

// scalar Adam with explicit bias correction, for trajectory comparison
struct AdamRef {
  double m = 0.0, v = 0.0;
  long t = 0;
  double step(double& param, double grad, double lr, double beta1 = 0.9,
              double beta2 = 0.999, double eps = 1e-8) {
    ++t;
    m = beta1 * m + (1 - beta1) * grad;
    v = beta2 * v + (1 - beta2) * grad * grad;
    const double mhat = m / (1 - std::pow(beta1, static_cast<double>(t)));
    const double vhat = v / (1 - std::pow(beta2, static_cast<double>(t)));
    param -= lr * mhat / (std::sqrt(vhat) + eps);
    return param;
  }
};

// central finite differences over a parameter vector exposed by get/set
inline std::vector<double> finite_difference(
    const std::function<double()>& f, const std::function<double(std::size_t)>& get,
    const std::function<void(std::size_t, double)>& set, std::size_t count,
    double h = 1e-5) {
  std::vector<double> grad(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double orig = get(i);
    set(i, orig + h);
    const double fp = f();
    set(i, orig - h);
    const double fm = f();
    set(i, orig);
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

}  // namespace oracle
