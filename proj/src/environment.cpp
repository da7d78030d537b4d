#include "vlcnet/environment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcnet {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

double scaled_sinr(double s) { return std::log10(1.0 + s); }
double scaled_demand(double r) { return r / 1e6; }
}  // namespace

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
  if (!logits.allFinite()) throw std::invalid_argument("non-finite action logits");
  Eigen::ArrayXd e = (logits.array() - logits.maxCoeff()).exp();
  return (e / e.sum()).matrix();
}

ActionPower action_power_from_simplex(const Eigen::VectorXd& simplex,
                                      const DecodingOrder& order) {
  ActionPower a;
  a.raw = simplex;
  a.decoded = enforce_inverse_order(simplex, order);
  return a;
}

ActionPower decode_action_power(const Eigen::VectorXd& raw_logits,
                                const DecodingOrder& order) {
  return action_power_from_simplex(softmax(raw_logits), order);
}

ActionAngles action_angles_from_unit(const Eigen::VectorXd& unit) {
  if (!unit.allFinite()) throw std::invalid_argument("non-finite angle action");
  if (unit.size() % 2 != 0) throw std::invalid_argument("angle action length must be even");
  ActionAngles a;
  a.raw = unit;
  const Eigen::Index m = unit.size() / 2;
  a.yaw.resize(m);
  a.roll.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a.yaw(i) = unit(2 * i) * kHalfPi;
    a.roll(i) = unit(2 * i + 1) * kHalfPi;
  }
  return a;
}

ActionAngles decode_action_angles(const Eigen::VectorXd& raw_logits) {
  if (!raw_logits.allFinite()) throw std::invalid_argument("non-finite angle logits");
  return action_angles_from_unit(raw_logits.array().tanh().matrix());
}

StepMetrics evaluate_configuration(const Scene& scene, const BlockageMask& blockage,
                                   const Eigen::VectorXd& alpha_simplex,
                                   const LinkParams& link, const PowerModelConfig& power,
                                   int steered_mirrors) {
  StepMetrics m;
  const ChannelGains gains = channel_matrix(scene, blockage);
  const DecodingOrder order = sort_users_by_gain(gains.combined);
  const PowerAllocation alloc = enforce_inverse_order(alpha_simplex, order);
  m.alpha_applied = alloc.coefficients;
  m.sinrs = sinr_all(alloc, gains.combined, order, link);
  m.rates = rate_all(m.sinrs, link.bandwidth);
  m.sum_rate = sum_rate(m.rates);
  m.power = total_power(link.electrical_power, scene.num_aps(), scene.num_mirrors(),
                        scene.num_users(), power, steered_mirrors);
  m.see_value = m.sum_rate == 0.0 ? 0.0 : see(m.sum_rate, m.power.total);
  m.jain_index = jain(m.rates);
  m.objective_value = objective(m.jain_index, m.see_value);
  return m;
}

std::pair<double, std::pair<int, int>> reward_terms(const StepMetrics& metrics,
                                                    const Eigen::VectorXd& r_min,
                                                    double electrical_power,
                                                    double power_budget,
                                                    const RewardConfig& cfg) {
  int qos = 0;
  for (Eigen::Index k = 0; k < r_min.size(); ++k)
    if (metrics.rates(k) < r_min(k)) ++qos;
  const int over_budget = electrical_power > power_budget ? 1 : 0;
  const double r = cfg.w_ee * (metrics.see_value / cfg.see_ref) +
                   cfg.w_jain * metrics.jain_index - cfg.lambda_qos * qos -
                   cfg.lambda_power * over_budget;
  return {r, {qos, over_budget}};
}

Environment::Environment(EnvConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.scene.num_users() < 1) throw std::invalid_argument("scene needs users");
  if (cfg_.scene.num_aps() < 1) throw std::invalid_argument("scene needs APs");
  if (!(cfg_.dt > 0.0)) throw std::invalid_argument("dt must be positive");
  for (const UserTerminal& u : cfg_.scene.users)
    if (u.detectors.empty()) throw std::invalid_argument("user without detectors");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> Environment::reset(std::uint64_t seed) {
  placement_rng_ = Rng::stream(seed, "env.placement");
  mobility_rng_ = Rng::stream(seed, "env.mobility");
  blockage_rng_ = Rng::stream(seed, "env.blockage");
  traffic_rng_ = Rng::stream(seed, "env.traffic");

  const int k_users = num_users();
  waypoints_.assign(static_cast<size_t>(k_users), Vec3::Zero());
  speeds_.assign(static_cast<size_t>(k_users), 0.0);
  pause_left_.assign(static_cast<size_t>(k_users), 0.0);
  for (int k = 0; k < k_users; ++k) {
    UserTerminal& u = cfg_.scene.users[static_cast<size_t>(k)];
    const double x = placement_rng_.uniform(0.0, cfg_.scene.room_x);
    const double y = placement_rng_.uniform(0.0, cfg_.scene.room_y);
    const double h = placement_rng_.uniform(cfg_.user_height_min, cfg_.user_height_max);
    u.position = Vec3(x, y, h);
    for (PhotoDetector& pd : u.detectors) pd.position = u.position;
    waypoints_[static_cast<size_t>(k)] =
        Vec3(mobility_rng_.uniform(0.0, cfg_.scene.room_x),
             mobility_rng_.uniform(0.0, cfg_.scene.room_y), h);
    speeds_[static_cast<size_t>(k)] =
        mobility_rng_.uniform(cfg_.mobility.speed_min, cfg_.mobility.speed_max);
  }

  for (MirrorElement& m : cfg_.scene.mirrors) {
    m.yaw = 0.0;
    m.roll = 0.0;
  }
  alpha_ = Eigen::VectorXd::Constant(k_users, 1.0 / k_users);

  blocked_.resize(k_users, num_aps());
  for (int k = 0; k < k_users; ++k)
    for (int l = 0; l < num_aps(); ++l)
      blocked_(k, l) = blockage_rng_.uniform() < cfg_.blockage.probability;

  sample_traffic();
  was_reset_ = true;

  const Eigen::VectorXd sinrs = current_sinrs();
  return {observe_power_agent(sinrs), observe_angle_agent(sinrs)};
}

Eigen::VectorXd Environment::current_sinrs() {
  const ChannelGains gains = channel_matrix(cfg_.scene, blocked_);
  order_ = sort_users_by_gain(gains.combined);
  const PowerAllocation alloc = enforce_inverse_order(alpha_, order_);
  return sinr_all(alloc, gains.combined, order_, cfg_.link);
}

Eigen::VectorXd Environment::observe_power_agent(const Eigen::VectorXd& sinrs) const {
  Eigen::VectorXd o(obs_power_dim());
  const int k_users = num_users();
  const int m_mirrors = num_mirrors();
  for (int k = 0; k < k_users; ++k) o(k) = scaled_sinr(sinrs(k));
  for (int k = 0; k < k_users; ++k) o(k_users + k) = scaled_demand(r_min_(k));
  for (int m = 0; m < m_mirrors; ++m) {
    o(2 * k_users + m) = cfg_.scene.mirrors[static_cast<size_t>(m)].yaw;
    o(2 * k_users + m_mirrors + m) = cfg_.scene.mirrors[static_cast<size_t>(m)].roll;
  }
  return o;
}

Eigen::VectorXd Environment::observe_angle_agent(const Eigen::VectorXd& sinrs) const {
  Eigen::VectorXd o(obs_angle_dim());
  const int k_users = num_users();
  for (int k = 0; k < k_users; ++k) o(k) = scaled_sinr(sinrs(k));
  for (int k = 0; k < k_users; ++k) o(k_users + k) = alpha_(k);
  for (int k = 0; k < k_users; ++k) o(2 * k_users + k) = scaled_demand(r_min_(k));
  return o;
}

void Environment::sample_traffic() {
  r_min_.resize(num_users());
  for (Eigen::Index k = 0; k < r_min_.size(); ++k)
    r_min_(k) = traffic_rng_.uniform(cfg_.traffic.r_min_low, cfg_.traffic.r_min_high);
}

void Environment::advance_mobility() {
  const double dt = cfg_.dt;
  for (int k = 0; k < num_users(); ++k) {
    UserTerminal& u = cfg_.scene.users[static_cast<size_t>(k)];
    auto& wp = waypoints_[static_cast<size_t>(k)];
    auto& pause = pause_left_[static_cast<size_t>(k)];
    auto& speed = speeds_[static_cast<size_t>(k)];
    if (pause > 0.0) {
      pause = std::max(0.0, pause - dt);
    } else {
      const Vec3 to_wp = wp - u.position;
      const double dist = to_wp.norm();
      const double travel = speed * dt;
      if (dist <= travel || dist < 1e-12) {
        u.position = wp;
        pause = mobility_rng_.uniform(0.0, cfg_.mobility.pause_max);
        wp = Vec3(mobility_rng_.uniform(0.0, cfg_.scene.room_x),
                  mobility_rng_.uniform(0.0, cfg_.scene.room_y), u.position.z());
        speed = mobility_rng_.uniform(cfg_.mobility.speed_min, cfg_.mobility.speed_max);
      } else if (travel > 0.0) {
        u.position += to_wp * (travel / dist);
      }
    }
    for (PhotoDetector& pd : u.detectors) pd.position = u.position;
  }
}

void Environment::advance_blockage() {
  const double p = cfg_.blockage.probability;
  // one draw per link per step regardless of state, so trajectories stay
  // aligned when only the blockage parameters change
  for (int k = 0; k < num_users(); ++k) {
    for (int l = 0; l < num_aps(); ++l) {
      const double u = blockage_rng_.uniform();
      if (p <= 0.0) {
        blocked_(k, l) = false;
        continue;
      }
      if (p >= 1.0) {
        blocked_(k, l) = true;
        continue;
      }
      const double exit_rate = std::min(1.0, cfg_.dt / cfg_.blockage.mean_duration);
      const double enter_rate = std::min(1.0, exit_rate * p / (1.0 - p));
      if (blocked_(k, l)) {
        if (u < exit_rate) blocked_(k, l) = false;
      } else {
        if (u < enter_rate) blocked_(k, l) = true;
      }
    }
  }
}

StepOutcome Environment::step(const ActionPower& power_action,
                              const ActionAngles& angle_action) {
  if (!was_reset_) throw std::logic_error("environment used before reset");
  if (power_action.raw.size() != num_users())
    throw std::invalid_argument("power action dimension mismatch");
  if (angle_action.yaw.size() != num_mirrors() ||
      angle_action.roll.size() != num_mirrors())
    throw std::invalid_argument("angle action dimension mismatch");

  // apply mirror orientations, tracking how many actually moved
  int steered = 0;
  for (int m = 0; m < num_mirrors(); ++m) {
    MirrorElement& mirror = cfg_.scene.mirrors[static_cast<size_t>(m)];
    const double yaw = angle_action.yaw(m);
    const double roll = angle_action.roll(m);
    if (std::abs(yaw) > kHalfPi + 1e-12 || std::abs(roll) > kHalfPi + 1e-12)
      throw std::invalid_argument("mirror angle outside the orientation box");
    if (yaw != mirror.yaw || roll != mirror.roll) ++steered;
    mirror.yaw = yaw;
    mirror.roll = roll;
  }

  StepOutcome out;
  // the applied allocation is re-derived here under this step's gains, so a
  // caller-side decode built from a stale decoding order cannot leak in
  out.metrics = evaluate_configuration(cfg_.scene, blocked_, power_action.raw, cfg_.link,
                                       cfg_.power, steered);
  alpha_ = out.metrics.alpha_applied;
  auto [reward, penalties] = reward_terms(out.metrics, r_min_, cfg_.link.electrical_power,
                                          cfg_.power.power_budget, cfg_.reward);
  out.reward = reward;
  out.qos_violations = penalties.first;
  out.power_violation = penalties.second;

  advance_mobility();
  advance_blockage();
  if (cfg_.traffic.per_step) sample_traffic();

  const Eigen::VectorXd sinrs = current_sinrs();
  out.obs_power = observe_power_agent(sinrs);
  out.obs_angles = observe_angle_agent(sinrs);
  return out;
}

}  // namespace vlcnet
