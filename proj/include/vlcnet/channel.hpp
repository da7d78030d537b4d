#pragma once

#include <Eigen/Dense>
#include <vector>

#include "vlcnet/scene.hpp"

namespace vlcnet {

// Distances below this are treated as degenerate geometry, not huge gains.
constexpr double kMinDistance = 1e-6;
// Reject half-power semi-angles below this (the Lambertian order diverges).
constexpr double kMinHalfPowerAngle = 0.017453292519943295;  // 1 deg

/// Per-user per-AP line-of-sight blockage mask; true = blocked.
using BlockageMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Channel state for one scene configuration: K x L direct gains, the
/// K x M x L mirror-path tensor (stored as K slices of M x L), and the
/// per-user combined gain H_k.
struct ChannelGains {
  Eigen::MatrixXd los;                // K x L
  std::vector<Eigen::MatrixXd> irs;   // K entries of M x L
  Eigen::VectorXd combined;           // K
};

/// Lambertian emission order n = -ln 2 / ln cos(phi_half).
double lambertian_order(double half_power_semi_angle);

/// Direct LoS gain between one AP and one detector. Zero outside the
/// detector field of view and for geometry behind either device plane.
double los_gain(const LedAp& ap, const PhotoDetector& pd, double order);

/// Mirror orientation normal (sin yaw cos roll, cos yaw cos roll, sin roll).
Vec3 mirror_normal(double yaw, double roll);

/// Cosine of the irradiance angle from mirror m toward a user position,
/// i.e. the orientation-dependent factor of the mirror-to-user leg.
double cos_irradiance_mirror_user(const MirrorElement& m, const Vec3& user_pos);

/// Cosine of the incidence angle of an AP ray on mirror m.
double cos_incidence_mirror_ap(const MirrorElement& m, const Vec3& ap_pos);

/// First-order specular reflection gain AP -> mirror -> detector. Zero when
/// the detector-side incidence exceeds the field of view or when any cosine
/// factor goes negative (geometrically impossible path).
double irs_path_gain(const LedAp& ap, const MirrorElement& m, const PhotoDetector& pd,
                     double order);

/// Fills the full channel state. LoS entries are zeroed where `blockage`
/// masks them; mirror paths are never blocked. Users with several detectors
/// contribute the best detector per optical path (select-best combining).
/// combined[k] sums LoS terms in AP order, then mirror paths in
/// (mirror, AP) order; the order is fixed so runs are bit-reproducible.
ChannelGains channel_matrix(const Scene& scene, const BlockageMask& blockage);

/// Convenience overload with nothing blocked.
ChannelGains channel_matrix(const Scene& scene);

}  // namespace vlcnet
