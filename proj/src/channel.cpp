#include "vlcnet/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcnet {

namespace {
constexpr double kPi = std::numbers::pi;

double checked_distance(const Vec3& a, const Vec3& b, const char* what) {
  const double d = (a - b).norm();
  if (d < kMinDistance) throw std::domain_error(std::string("degenerate distance: ") + what);
  return d;
}
}  // namespace

double lambertian_order(double half_power_semi_angle) {
  if (!(half_power_semi_angle >= kMinHalfPowerAngle) ||
      !(half_power_semi_angle < kPi / 2.0)) {
    throw std::domain_error("half-power semi-angle outside (1 deg, 90 deg)");
  }
  return -std::log(2.0) / std::log(std::cos(half_power_semi_angle));
}

double los_gain(const LedAp& ap, const PhotoDetector& pd, double order) {
  const double dist = checked_distance(ap.position, pd.position, "AP to detector");
  const Vec3 ap_to_pd = (pd.position - ap.position) / dist;
  const double cos_radiation = ap.normal.dot(ap_to_pd);
  const double cos_incidence = pd.normal.dot(-ap_to_pd);
  if (cos_radiation < 0.0) return 0.0;  // receiver behind the AP plane
  if (cos_incidence < std::cos(pd.fov_semi_angle)) return 0.0;  // outside FOV
  if (cos_incidence < 0.0) return 0.0;
  return (order + 1.0) * pd.area * std::pow(cos_radiation, order) * cos_incidence /
         (2.0 * kPi * dist * dist);
}

Vec3 mirror_normal(double yaw, double roll) {
  return Vec3(std::sin(yaw) * std::cos(roll), std::cos(yaw) * std::cos(roll),
              std::sin(roll));
}

double cos_irradiance_mirror_user(const MirrorElement& m, const Vec3& user_pos) {
  const double dist = checked_distance(m.center, user_pos, "mirror to user");
  return mirror_normal(m.yaw, m.roll).dot((m.center - user_pos) / dist);
}

double cos_incidence_mirror_ap(const MirrorElement& m, const Vec3& ap_pos) {
  const double dist = checked_distance(m.center, ap_pos, "AP to mirror");
  return mirror_normal(m.yaw, m.roll).dot((ap_pos - m.center) / dist);
}

double irs_path_gain(const LedAp& ap, const MirrorElement& m, const PhotoDetector& pd,
                     double order) {
  const double d_ap = checked_distance(ap.position, m.center, "AP to mirror");
  const double d_user = checked_distance(m.center, pd.position, "mirror to detector");

  const Vec3 ap_to_mirror = (m.center - ap.position) / d_ap;
  const double cos_radiation_ap = ap.normal.dot(ap_to_mirror);

  const double cos_incidence_mirror = cos_incidence_mirror_ap(m, ap.position);
  const double cos_irradiance_user = cos_irradiance_mirror_user(m, pd.position);

  // detector-side incidence, measured against the detector normal
  const Vec3 mirror_to_pd = (pd.position - m.center) / d_user;
  const double cos_incidence_pd = pd.normal.dot(-mirror_to_pd);

  if (cos_incidence_pd < std::cos(pd.fov_semi_angle)) return 0.0;
  // a negative cosine anywhere means the path cannot exist physically
  if (cos_radiation_ap < 0.0 || cos_incidence_mirror < 0.0 ||
      cos_irradiance_user < 0.0 || cos_incidence_pd < 0.0) {
    return 0.0;
  }
  return (order + 1.0) * m.reflectance * pd.area * m.area() *
         std::pow(cos_radiation_ap, order) * cos_incidence_mirror *
         cos_irradiance_user * cos_incidence_pd /
         (2.0 * kPi * kPi * d_ap * d_ap * d_user * d_user);
}

ChannelGains channel_matrix(const Scene& scene, const BlockageMask& blockage) {
  const int k_users = scene.num_users();
  const int n_aps = scene.num_aps();
  const int n_mirrors = scene.num_mirrors();
  if (blockage.rows() != k_users || blockage.cols() != n_aps)
    throw std::invalid_argument("blockage mask shape does not match scene");

  ChannelGains g;
  g.los = Eigen::MatrixXd::Zero(k_users, n_aps);
  g.irs.assign(static_cast<size_t>(k_users), Eigen::MatrixXd::Zero(n_mirrors, n_aps));
  g.combined = Eigen::VectorXd::Zero(k_users);

  const double ts = scene.optical_filter_gain;
  for (int k = 0; k < k_users; ++k) {
    const UserTerminal& user = scene.users[static_cast<size_t>(k)];
    if (user.detectors.empty()) throw std::invalid_argument("user without detectors");
    for (int l = 0; l < n_aps; ++l) {
      if (blockage(k, l)) continue;
      double best = 0.0;
      for (const PhotoDetector& pd : user.detectors)
        best = std::max(best, los_gain(scene.aps[static_cast<size_t>(l)], pd,
                                       scene.lambertian_order));
      g.los(k, l) = ts * best;
    }
    for (int m = 0; m < n_mirrors; ++m) {
      for (int l = 0; l < n_aps; ++l) {
        double best = 0.0;
        for (const PhotoDetector& pd : user.detectors)
          best = std::max(best, irs_path_gain(scene.aps[static_cast<size_t>(l)],
                                              scene.mirrors[static_cast<size_t>(m)], pd,
                                              scene.lambertian_order));
        g.irs[static_cast<size_t>(k)](m, l) = ts * best;
      }
    }
    // fixed summation order: LoS by AP index, then mirror paths in
    // (mirror, AP) lexicographic order
    double sum = 0.0;
    for (int l = 0; l < n_aps; ++l) sum += g.los(k, l);
    for (int m = 0; m < n_mirrors; ++m)
      for (int l = 0; l < n_aps; ++l) sum += g.irs[static_cast<size_t>(k)](m, l);
    g.combined(k) = sum;
  }
  return g;
}

ChannelGains channel_matrix(const Scene& scene) {
  BlockageMask clear(scene.num_users(), scene.num_aps());
  clear.setConstant(false);
  return channel_matrix(scene, clear);
}

}  // namespace vlcnet
