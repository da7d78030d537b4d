#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "vlcnet/channel.hpp"
#include "vlcnet/noma.hpp"
#include "vlcnet/power_metrics.hpp"
#include "vlcnet/rng.hpp"
#include "vlcnet/scene.hpp"

namespace vlcnet {

struct MobilityConfig {
  double speed_min = 0.0;  // m/s
  double speed_max = 2.0;
  double pause_max = 1.0;  // s
};

struct BlockageConfig {
  double probability = 0.1;    // stationary blocked fraction per (user, AP)
  double mean_duration = 2.0;  // s
};

struct TrafficConfig {
  double r_min_low = 1e6;   // bit/s
  double r_min_high = 1e6;
  bool per_step = false;    // resample every step instead of every episode
};

struct RewardConfig {
  double see_ref = 1e7;  // bit/J normalizer for the efficiency term
  double w_ee = 1.0;
  double w_jain = 1.0;
  double lambda_qos = 1.0;
  double lambda_power = 1.0;
};

struct EnvConfig {
  Scene scene;  // geometry template; user positions are drawn at reset
  LinkParams link;
  PowerModelConfig power;
  MobilityConfig mobility;
  BlockageConfig blockage;
  TrafficConfig traffic;
  RewardConfig reward;
  double dt = 0.1;               // s per MDP step
  double user_height_min = 0.8;  // m, fixed per user, drawn once at reset
  double user_height_max = 1.2;
};

/// Power-allocation action: `raw` is the actor head output (a simplex
/// point, before the inverse-order reassignment); `decoded` is what the
/// transmitter applies.
struct ActionPower {
  Eigen::VectorXd raw;
  PowerAllocation decoded;
};

/// Mirror-orientation action: `raw` is the actor head output in [-1,1]^2M,
/// interleaved (yaw_m, roll_m) pairs; decoded angles are raw * pi/2.
struct ActionAngles {
  Eigen::VectorXd raw;
  Eigen::VectorXd yaw;   // length M
  Eigen::VectorXd roll;  // length M
};

/// Full decode from unconstrained actor logits: softmax, then the
/// inverse-order reassignment. Shift-invariant in the logits.
ActionPower decode_action_power(const Eigen::VectorXd& raw_logits,
                                const DecodingOrder& order);

/// Decode tail for an output that is already on the simplex.
ActionPower action_power_from_simplex(const Eigen::VectorXd& simplex,
                                      const DecodingOrder& order);

/// Full decode from unconstrained actor logits: tanh then scale by pi/2,
/// so angles always satisfy the orientation box.
ActionAngles decode_action_angles(const Eigen::VectorXd& raw_logits);

/// Decode tail for an output already in [-1,1]^2M.
ActionAngles action_angles_from_unit(const Eigen::VectorXd& unit);

Eigen::VectorXd softmax(const Eigen::VectorXd& logits);

struct StepMetrics {
  Eigen::VectorXd rates;  // per user, bit/s
  Eigen::VectorXd sinrs;  // per user
  Eigen::VectorXd alpha_applied;  // per-user coefficients after reassignment
  double sum_rate = 0.0;
  double see_value = 0.0;
  double jain_index = 0.0;
  double objective_value = 0.0;
  PowerBreakdown power;
};

struct StepOutcome {
  double reward = 0.0;
  int qos_violations = 0;  // users below their rate floor this step
  int power_violation = 0; // 1 when the electrical power exceeds the budget
  StepMetrics metrics;
  Eigen::VectorXd obs_power;   // next observation for the power agent
  Eigen::VectorXd obs_angles;  // next observation for the angle agent
};

/// One full physics evaluation: channel, decoding order, SINRs, rates,
/// power, efficiency and fairness for a frozen configuration. The single
/// pipeline shared by the environment, the baselines and the grid oracle.
StepMetrics evaluate_configuration(const Scene& scene, const BlockageMask& blockage,
                                   const Eigen::VectorXd& alpha_simplex,
                                   const LinkParams& link, const PowerModelConfig& power,
                                   int steered_mirrors = -1);

std::pair<double, std::pair<int, int>> reward_terms(const StepMetrics& metrics,
                                                    const Eigen::VectorXd& r_min,
                                                    double electrical_power,
                                                    double power_budget,
                                                    const RewardConfig& cfg);

/// The MDP wrapper: random-waypoint mobility, two-state blockage, traffic
/// demands, observation construction and the shared scalar reward.
///
/// Observation layouts (entries scaled to O(1) for network consumption;
/// SINRs as log10(1+x), demands in Mbit/s):
///   power agent  o_l = [sinr_1..K, rmin_1..K, yaw_1..M, roll_1..M]  (2K+2M)
///   angle agent  o_m = [sinr_1..K, alpha_1..K, rmin_1..K]           (3K)
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  /// Draws user positions/heights, resets allocations to uniform and all
  /// mirror angles to zero, samples demands and blockage, and returns the
  /// initial observation pair. Same seed, same observations, bitwise.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> reset(std::uint64_t seed);

  StepOutcome step(const ActionPower& power_action, const ActionAngles& angle_action);

  int num_users() const { return cfg_.scene.num_users(); }
  int num_aps() const { return cfg_.scene.num_aps(); }
  int num_mirrors() const { return cfg_.scene.num_mirrors(); }
  int obs_power_dim() const { return 2 * num_users() + 2 * num_mirrors(); }
  int obs_angle_dim() const { return 3 * num_users(); }
  int action_power_dim() const { return num_users(); }
  int action_angle_dim() const { return 2 * num_mirrors(); }

  const EnvConfig& config() const { return cfg_; }
  /// Scene with current user positions and mirror angles.
  const Scene& scene() const { return cfg_.scene; }
  const BlockageMask& blockage() const { return blocked_; }
  const Eigen::VectorXd& rate_floors() const { return r_min_; }
  const Eigen::VectorXd& current_alpha() const { return alpha_; }
  const DecodingOrder& current_order() const { return order_; }
  bool is_reset() const { return was_reset_; }

 private:
  Eigen::VectorXd observe_power_agent(const Eigen::VectorXd& sinrs) const;
  Eigen::VectorXd observe_angle_agent(const Eigen::VectorXd& sinrs) const;
  Eigen::VectorXd current_sinrs();
  void advance_mobility();
  void advance_blockage();
  void sample_traffic();

  EnvConfig cfg_;
  bool was_reset_ = false;
  Rng mobility_rng_, blockage_rng_, traffic_rng_, placement_rng_;
  BlockageMask blocked_;
  Eigen::VectorXd r_min_;
  Eigen::VectorXd alpha_;  // applied per-user coefficients
  DecodingOrder order_;
  // random-waypoint state
  std::vector<Vec3> waypoints_;
  std::vector<double> speeds_;
  std::vector<double> pause_left_;
};

}  // namespace vlcnet
