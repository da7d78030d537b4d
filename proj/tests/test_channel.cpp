#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vlcnet/channel.hpp"
#include "vlcnet/rng.hpp"

using namespace vlcnet;
namespace {
constexpr double kPi = std::numbers::pi;

LedAp make_ap(const Vec3& pos) {
  LedAp ap;
  ap.position = pos;
  return ap;
}

PhotoDetector make_pd(const Vec3& pos) {
  PhotoDetector pd;
  pd.position = pos;
  return pd;
}
}  // namespace

TEST_CASE("lambertian order") {
  CHECK(lambertian_order(kPi / 3.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambertian_order(kPi / 6.0) == doctest::Approx(4.81884167930642).epsilon(1e-12));
  CHECK_THROWS_AS(lambertian_order(0.001), std::domain_error);
  CHECK_THROWS_AS(lambertian_order(kPi / 2.0), std::domain_error);
  CHECK_THROWS_AS(lambertian_order(-0.5), std::domain_error);
}

TEST_CASE("los gain fixture and cutoffs") {
  const LedAp ap = make_ap({1.25, 1.25, 3.0});
  PhotoDetector pd = make_pd({1.25, 1.25, 1.0});
  CHECK(los_gain(ap, pd, 1.0) == doctest::Approx(7.957747154594767e-06).epsilon(1e-12));

  // inverse-square: doubling the distance with angles fixed divides by 4
  PhotoDetector far_pd = make_pd({1.25, 1.25, -1.0});
  CHECK(los_gain(ap, pd, 1.0) / los_gain(ap, far_pd, 1.0) == doctest::Approx(4.0).epsilon(1e-14));

  // beyond the field of view the gain is exactly zero
  PhotoDetector narrow = make_pd({2.25, 1.25, 1.0});
  const double incidence = std::acos(2.0 / std::sqrt(5.0));
  narrow.fov_semi_angle = incidence - 0.01;
  CHECK(los_gain(ap, narrow, 1.0) == 0.0);
  narrow.fov_semi_angle = incidence + 0.01;
  CHECK(los_gain(ap, narrow, 1.0) > 0.0);

  // receiver behind the AP plane
  PhotoDetector above = make_pd({1.25, 1.25, 3.5});
  CHECK(los_gain(ap, above, 1.0) == 0.0);

  PhotoDetector coincident = make_pd(ap.position);
  CHECK_THROWS_AS(los_gain(ap, coincident, 1.0), std::domain_error);
}

TEST_CASE("mirror normal") {
  const Vec3 n0 = mirror_normal(0.0, 0.0);
  CHECK(n0.x() == 0.0);
  CHECK(n0.y() == 1.0);
  CHECK(n0.z() == 0.0);
  const Vec3 up = mirror_normal(0.0, kPi / 2.0);
  CHECK(up.x() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(up.y() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(up.z() == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double yaw = rng.uniform(-kPi / 2, kPi / 2);
    const double roll = rng.uniform(-kPi / 2, kPi / 2);
    CHECK(mirror_normal(yaw, roll).norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("mirror-user irradiance cosine") {
  MirrorElement m;
  m.center = Vec3(0.0, 2.5, 1.5);
  CHECK(cos_irradiance_mirror_user(m, Vec3(0.0, 1.5, 1.5)) == doctest::Approx(1.0).epsilon(1e-14));
  // displacement orthogonal to the normal
  CHECK(cos_irradiance_mirror_user(m, Vec3(1.0, 2.5, 1.5)) == doctest::Approx(0.0).epsilon(1e-14));

  // matches the coordinate form for random setups
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    m.yaw = rng.uniform(-kPi / 2, kPi / 2);
    m.roll = rng.uniform(-kPi / 2, kPi / 2);
    const Vec3 user(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
    if ((user - m.center).norm() < 1e-3) continue;
    const double d = (user - m.center).norm();
    const double expected = ((m.center.x() - user.x()) / d) * std::sin(m.yaw) * std::cos(m.roll) +
                            ((m.center.y() - user.y()) / d) * std::cos(m.yaw) * std::cos(m.roll) +
                            ((m.center.z() - user.z()) / d) * std::sin(m.roll);
    CHECK(cos_irradiance_mirror_user(m, user) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(cos_irradiance_mirror_user(m, m.center), std::domain_error);
}

TEST_CASE("mirror-AP incidence cosine") {
  MirrorElement m;
  m.center = Vec3(2.5, 0.0, 1.5);
  // AP along the zero-angle normal
  CHECK(cos_incidence_mirror_ap(m, Vec3(2.5, 2.0, 1.5)) == doctest::Approx(1.0).epsilon(1e-14));
  // behind the mirror plane the cosine goes negative
  CHECK(cos_incidence_mirror_ap(m, Vec3(2.5, -2.0, 1.5)) < 0.0);

  // reflecting the AP across the plane spanned by the normal keeps the value
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    m.yaw = rng.uniform(-1.2, 1.2);
    m.roll = rng.uniform(-1.2, 1.2);
    const Vec3 ap(rng.uniform(-3, 3), rng.uniform(1, 4), rng.uniform(-1, 3));
    const Vec3 n = mirror_normal(m.yaw, m.roll);
    Vec3 tangent = n.cross(Vec3(0, 0, 1));
    if (tangent.norm() < 1e-6) tangent = n.cross(Vec3(1, 0, 0));
    tangent.normalize();
    const Vec3 rel = ap - m.center;
    const Vec3 mirrored = m.center + rel - 2.0 * rel.dot(tangent) * tangent;
    CHECK(cos_incidence_mirror_ap(m, ap) ==
          doctest::Approx(cos_incidence_mirror_ap(m, mirrored)).epsilon(1e-10));
  }
}

TEST_CASE("irs path gain") {
  const LedAp ap = make_ap({1.25, 1.25, 3.0});
  MirrorElement m;
  m.center = Vec3(0.0, 2.5, 1.5);
  m.yaw = -0.3;
  m.roll = 0.9;
  const PhotoDetector pd = make_pd({1.0, 2.5, 1.0});

  const double g = irs_path_gain(ap, m, pd, 1.0);
  CHECK(g == doctest::Approx(7.006529176533692e-10).epsilon(1e-12));

  SUBCASE("linear in reflectance and mirror area") {
    MirrorElement dark = m;
    dark.reflectance = 0.0;
    CHECK(irs_path_gain(ap, dark, pd, 1.0) == 0.0);
    MirrorElement half = m;
    half.reflectance = m.reflectance / 2.0;
    CHECK(irs_path_gain(ap, half, pd, 1.0) == doctest::Approx(g / 2.0).epsilon(1e-14));
    MirrorElement big = m;
    big.width = m.width * 2.0;
    CHECK(irs_path_gain(ap, big, pd, 1.0) == doctest::Approx(2.0 * g).epsilon(1e-14));
  }

  SUBCASE("inverse fourth power when both legs scale") {
    const double c = 1.7;
    LedAp far_ap = ap;
    far_ap.position = m.center + c * (ap.position - m.center);
    PhotoDetector far_pd = pd;
    far_pd.position = m.center + c * (pd.position - m.center);
    CHECK(irs_path_gain(far_ap, m, far_pd, 1.0) ==
          doctest::Approx(g / (c * c * c * c)).epsilon(1e-12));
  }

  SUBCASE("fov cutoff at the detector") {
    PhotoDetector narrow = pd;
    narrow.fov_semi_angle = std::acos(0.5 / std::sqrt(1.25)) - 0.01;
    CHECK(irs_path_gain(ap, m, narrow, 1.0) == 0.0);
  }

  SUBCASE("negative cosine clamps to zero") {
    MirrorElement away = m;
    away.yaw = 1.5;  // normal swings away from the user side
    away.roll = -1.2;
    CHECK(irs_path_gain(ap, away, pd, 1.0) == 0.0);
  }
}

TEST_CASE("randomized equivalence against the straight-line oracle") {
  Rng rng(2024);
  int nonzero = 0;
  for (int i = 0; i < 500; ++i) {
    LedAp ap = make_ap({rng.uniform(0, 5), rng.uniform(0, 5), 3.0});
    MirrorElement m;
    m.center = Vec3(rng.uniform(0, 5), 0.0, rng.uniform(0.5, 2.5));
    m.yaw = rng.uniform(-kPi / 2, kPi / 2);
    m.roll = rng.uniform(-kPi / 2, kPi / 2);
    m.width = rng.uniform(0.05, 0.4);
    m.height = rng.uniform(0.05, 0.4);
    m.reflectance = rng.uniform(0.1, 1.0);
    PhotoDetector pd = make_pd({rng.uniform(0, 5), rng.uniform(0.1, 5), rng.uniform(0.5, 1.5)});
    pd.area = rng.uniform(1e-5, 5e-4);
    pd.fov_semi_angle = rng.uniform(0.3, kPi / 2);
    const double order = rng.uniform(1.0, 5.0);

    const oracle::V3 o_ap{ap.position.x(), ap.position.y(), ap.position.z()};
    const oracle::V3 o_apn{0, 0, -1};
    const oracle::V3 o_m{m.center.x(), m.center.y(), m.center.z()};
    const oracle::V3 o_pd{pd.position.x(), pd.position.y(), pd.position.z()};
    const oracle::V3 o_pdn{0, 0, 1};

    const double want_los =
        oracle::los_gain(o_ap, o_apn, o_pd, o_pdn, pd.area, pd.fov_semi_angle, order);
    const double got_los = los_gain(ap, pd, order);
    if (want_los == 0.0) {
      CHECK(got_los == 0.0);
    } else {
      CHECK(got_los == doctest::Approx(want_los).epsilon(1e-12));
    }

    const double want_irs =
        oracle::irs_gain(o_ap, o_apn, o_m, m.yaw, m.roll, m.reflectance, m.area(), o_pd,
                         o_pdn, pd.area, pd.fov_semi_angle, order);
    const double got_irs = irs_path_gain(ap, m, pd, order);
    if (want_irs == 0.0) {
      CHECK(got_irs == 0.0);
    } else {
      ++nonzero;
      CHECK(got_irs == doctest::Approx(want_irs).epsilon(1e-12));
    }
  }
  CHECK(nonzero > 20);  // the sample must actually exercise live paths
}

TEST_CASE("channel matrix assembly") {
  Scene scene;
  scene.lambertian_order = 1.0;
  scene.aps = {make_ap({1.25, 1.25, 3.0}), make_ap({3.75, 3.75, 3.0})};
  MirrorElement m;
  m.center = Vec3(2.5, 0.0, 1.5);
  m.roll = 1.2;
  scene.mirrors = {m};
  UserTerminal u1, u2;
  u1.position = Vec3(1.25, 1.25, 1.0);
  u1.detectors = {make_pd(u1.position)};
  u2.position = Vec3(3.0, 2.0, 1.0);
  u2.detectors = {make_pd(u2.position)};
  scene.users = {u1, u2};

  const ChannelGains g = channel_matrix(scene);
  CHECK(g.los.rows() == 2);
  CHECK(g.los.cols() == 2);
  CHECK(g.combined.size() == 2);
  for (int k = 0; k < 2; ++k) {
    double sum = 0.0;
    for (int l = 0; l < 2; ++l) sum += g.los(k, l);
    for (int l = 0; l < 2; ++l) sum += g.irs[k](0, l);
    CHECK(g.combined(k) == sum);  // bit-exact documented summation order
    CHECK(g.combined(k) > 0.0);
  }

  SUBCASE("no mirrors: combined equals the LoS row sums") {
    Scene bare = scene;
    bare.mirrors.clear();
    const ChannelGains gb = channel_matrix(bare);
    for (int k = 0; k < 2; ++k) {
      double sum = 0.0;
      for (int l = 0; l < 2; ++l) sum += gb.los(k, l);
      CHECK(gb.combined(k) == sum);
    }
  }

  SUBCASE("full blockage leaves only mirror paths") {
    BlockageMask mask(2, 2);
    mask.setConstant(true);
    const ChannelGains gm = channel_matrix(scene, mask);
    CHECK(gm.los.isZero(0.0));
    for (int k = 0; k < 2; ++k) {
      double sum = 0.0;
      for (int l = 0; l < 2; ++l) sum += gm.irs[k](0, l);
      CHECK(gm.combined(k) == sum);
    }
  }

  SUBCASE("single path fixture equals the sum of verified terms") {
    Scene tiny;
    tiny.lambertian_order = 1.0;
    tiny.aps = {scene.aps[0]};
    tiny.mirrors = {m};
    tiny.users = {u2};
    const ChannelGains gt = channel_matrix(tiny);
    const double direct = los_gain(tiny.aps[0], u2.detectors[0], 1.0);
    const double via = irs_path_gain(tiny.aps[0], m, u2.detectors[0], 1.0);
    CHECK(gt.combined(0) == direct + via);
  }

  SUBCASE("optical filter gain scales every term") {
    Scene filtered = scene;
    filtered.optical_filter_gain = 0.5;
    const ChannelGains gf = channel_matrix(filtered);
    CHECK(gf.combined(0) == doctest::Approx(0.5 * g.combined(0)).epsilon(1e-14));
  }

  SUBCASE("select-best combining over several detectors") {
    Scene adr = scene;
    PhotoDetector tilted = make_pd(u1.position);
    tilted.normal = orientation_from_az_el(0.0, 0.4);
    adr.users[0].detectors.push_back(tilted);
    const ChannelGains ga = channel_matrix(adr);
    CHECK(ga.los(0, 0) >= g.los(0, 0));  // extra detector can only help
  }
}
