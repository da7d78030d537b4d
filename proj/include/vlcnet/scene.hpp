#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlcnet {

using Vec3 = Eigen::Vector3d;

/// Ceiling LED access point.
struct LedAp {
  Vec3 position{0.0, 0.0, 0.0};
  double half_power_semi_angle = 1.0471975511965976;  // 60 deg
  Vec3 normal{0.0, 0.0, -1.0};                        // straight down
};

/// Single photodiode of a receiver; orientation from azimuth/elevation.
struct PhotoDetector {
  Vec3 position{0.0, 0.0, 0.0};
  Vec3 normal{0.0, 0.0, 1.0};  // straight up
  double area = 1e-4;          // m^2
  double fov_semi_angle = 1.4835298641951802;  // 85 deg
  double responsivity = 0.5;   // A/W
};

/// Unit normal for azimuth (from +x toward +y, in the horizontal plane)
/// and elevation (from the horizontal plane, +90 deg = straight up).
inline Vec3 orientation_from_az_el(double azimuth, double elevation) {
  const double ce = std::cos(elevation);
  return Vec3(ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation));
}

/// One rotational mirror of the IRS array.
struct MirrorElement {
  Vec3 center{0.0, 0.0, 0.0};
  double width = 0.25;        // m
  double height = 0.15;       // m
  double reflectance = 0.95;  // in (0, 1]
  double yaw = 0.0;           // radians, [-pi/2, pi/2]
  double roll = 0.0;          // radians, [-pi/2, pi/2]

  double area() const { return width * height; }
};

/// A user terminal: one or more detectors rigidly attached at the user position.
/// Detector positions track the user; offsets are not modeled.
struct UserTerminal {
  Vec3 position{0.0, 0.0, 0.0};
  std::vector<PhotoDetector> detectors;
};

/// Static geometry plus device parameters for one room.
struct Scene {
  double room_x = 5.0, room_y = 5.0, room_z = 3.0;
  std::vector<LedAp> aps;
  std::vector<MirrorElement> mirrors;
  std::vector<UserTerminal> users;
  double lambertian_order = 1.0;     // derived from the APs' semi-angle
  double optical_filter_gain = 1.0;  // T_s, applied at matrix assembly
  double refractive_index = 1.5;     // stored for configs; no concentrator term

  int num_aps() const { return static_cast<int>(aps.size()); }
  int num_mirrors() const { return static_cast<int>(mirrors.size()); }
  int num_users() const { return static_cast<int>(users.size()); }

  bool inside_room(const Vec3& p) const {
    return p.x() >= 0 && p.x() <= room_x && p.y() >= 0 && p.y() <= room_y &&
           p.z() >= 0 && p.z() <= room_z;
  }
};

enum class IrsWall { XLow, XHigh, YLow, YHigh };

inline IrsWall irs_wall_from_string(const std::string& s) {
  if (s == "x0") return IrsWall::XLow;
  if (s == "x1") return IrsWall::XHigh;
  if (s == "y0") return IrsWall::YLow;
  if (s == "y1") return IrsWall::YHigh;
  throw std::invalid_argument("unknown IRS wall '" + s + "' (expected x0|x1|y0|y1)");
}

/// Lays out rows x cols mirror centers on the given wall, centered
/// horizontally at mid-wall and vertically at center_height, with the
/// array-level gap `spacing` between adjacent elements. Spacing only
/// positions the centers; no inter-mirror occlusion is modeled.
std::vector<MirrorElement> make_irs_array(const Scene& room, IrsWall wall, int rows,
                                          int cols, double element_width,
                                          double element_height, double spacing,
                                          double reflectance, double center_height);

/// L APs on a ceiling grid (2x2 for L=4, single centered for L=1, else a
/// near-square grid), all facing straight down.
std::vector<LedAp> make_ap_grid(const Scene& room, int count, double half_power_semi_angle);

}  // namespace vlcnet
