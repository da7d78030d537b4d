#include "vlcnet/scene.hpp"

#include <cmath>

namespace vlcnet {

std::vector<MirrorElement> make_irs_array(const Scene& room, IrsWall wall, int rows,
                                          int cols, double element_width,
                                          double element_height, double spacing,
                                          double reflectance, double center_height) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("IRS array dimensions must be >= 0");
  std::vector<MirrorElement> out;
  out.reserve(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  const double pitch_h = element_width + spacing;   // along the wall
  const double pitch_v = element_height + spacing;  // vertical
  double wall_len = (wall == IrsWall::XLow || wall == IrsWall::XHigh) ? room.room_y : room.room_x;
  const double h0 = wall_len / 2.0 - (cols - 1) * pitch_h / 2.0;
  const double v0 = center_height - (rows - 1) * pitch_v / 2.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      MirrorElement m;
      m.width = element_width;
      m.height = element_height;
      m.reflectance = reflectance;
      const double along = h0 + c * pitch_h;
      const double z = v0 + r * pitch_v;
      switch (wall) {
        case IrsWall::XLow: m.center = Vec3(0.0, along, z); break;
        case IrsWall::XHigh: m.center = Vec3(room.room_x, along, z); break;
        case IrsWall::YLow: m.center = Vec3(along, 0.0, z); break;
        case IrsWall::YHigh: m.center = Vec3(along, room.room_y, z); break;
      }
      if (z <= 0 || z >= room.room_z || along <= 0 || along >= wall_len)
        throw std::invalid_argument("IRS array does not fit on the wall");
      out.push_back(m);
    }
  }
  return out;
}

std::vector<LedAp> make_ap_grid(const Scene& room, int count, double half_power_semi_angle) {
  if (count < 1) throw std::invalid_argument("need at least one AP");
  std::vector<LedAp> aps;
  aps.reserve(static_cast<size_t>(count));
  int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
  int rows = (count + cols - 1) / cols;
  int placed = 0;
  for (int r = 0; r < rows && placed < count; ++r) {
    for (int c = 0; c < cols && placed < count; ++c, ++placed) {
      LedAp ap;
      ap.half_power_semi_angle = half_power_semi_angle;
      ap.position = Vec3((c + 0.5) * room.room_x / cols, (r + 0.5) * room.room_y / rows,
                         room.room_z);
      aps.push_back(ap);
    }
  }
  return aps;
}

}  // namespace vlcnet
