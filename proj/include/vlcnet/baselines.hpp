#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vlcnet/agent.hpp"
#include "vlcnet/environment.hpp"
#include "vlcnet/metrics.hpp"
#include "vlcnet/replay_buffer.hpp"
#include "vlcnet/trainer.hpp"

namespace vlcnet {

/// How the joint-action DDPG baseline treats the mirror branch.
enum class AngleMode {
  Learned,           // joint actor optimizes power and angles
  RandomPerEpisode,  // angles drawn uniformly in the box, frozen per episode
  None               // no mirrors in the scene
};

/// Standard single-agent DDPG over the joint observation [o_l | o_m]: one
/// actor (shared relu trunk with a softmax power head and, when learned, a
/// tanh angle head) and one critic over observation plus both actions.
class SingleAgentTrainer {
 public:
  SingleAgentTrainer(const EnvConfig& env_cfg, const TrainerConfig& cfg,
                     std::uint64_t seed, AngleMode angle_mode);

  void train(const std::function<void(const EpisodeRecord&)>& sink = {});
  std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t eval_seed) const;

  void save_checkpoint(const std::string& path) const;
  static SingleAgentTrainer load_checkpoint(const std::string& path,
                                            const EnvConfig& env_cfg,
                                            const TrainerConfig& cfg);

  AngleMode angle_mode() const { return angle_mode_; }
  const nn::Mlp& trunk() const { return trunk_; }
  const nn::Mlp& power_head() const { return head_power_; }
  const nn::Mlp& critic() const { return critic_; }

 private:
  struct JointAction {
    Eigen::VectorXd power;   // simplex point
    Eigen::VectorXd angles;  // [-1,1]^2M units (empty for None)
  };
  JointAction act(const Eigen::VectorXd& obs, double sigma, Rng& noise_rng,
                  const Eigen::VectorXd& frozen_angles) const;
  void update();
  Eigen::MatrixXd joint_obs(const Eigen::MatrixXd& obs_power,
                            const Eigen::MatrixXd& obs_angles) const;

  EnvConfig env_cfg_;
  TrainerConfig cfg_;
  AngleMode angle_mode_;
  Environment env_;
  nn::Mlp trunk_, head_power_, head_angles_;
  nn::Mlp target_trunk_, target_head_power_, target_head_angles_;
  nn::Mlp critic_, target_critic_;
  nn::AdamState trunk_adam_, head_power_adam_, head_angles_adam_, critic_adam_;
  ReplayBuffer buffer_;
  ExplorationSchedule schedule_;
  Rng episode_rng_, explore_rng_, sample_rng_, baseline_rng_;
};

/// Discrete-action DQN over a small codebook: the cross product of power
/// profiles (an exponential-tilt family from uniform to strongly skewed,
/// reassigned inversely to channel strength by the environment) and joint
/// angle presets (one roll sweep applied to every mirror, yaw zero).
class DqnCodebookTrainer {
 public:
  DqnCodebookTrainer(const EnvConfig& env_cfg, const TrainerConfig& cfg,
                     std::uint64_t seed, int power_profiles, int angle_presets);

  void train(const std::function<void(const EpisodeRecord&)>& sink = {});
  std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t eval_seed) const;

  int codebook_size() const { return static_cast<int>(codebook_.size()); }
  const Eigen::VectorXd& codebook_power(int i) const { return codebook_[i].power; }
  const Eigen::VectorXd& codebook_angles(int i) const { return codebook_[i].angles; }
  /// Greedy action for an observation; ties break to the lowest index.
  int greedy_action(const Eigen::VectorXd& joint_obs) const;
  const nn::Mlp& q_network() const { return q_; }

  static std::vector<Eigen::VectorXd> make_power_profiles(int count, int users);
  static std::vector<Eigen::VectorXd> make_angle_presets(int count, int mirrors);

 private:
  struct Entry {
    Eigen::VectorXd power;
    Eigen::VectorXd angles;  // unit representation
  };
  void update();

  EnvConfig env_cfg_;
  TrainerConfig cfg_;
  Environment env_;
  std::vector<Entry> codebook_;
  nn::Mlp q_, target_q_;
  nn::AdamState q_adam_;
  ReplayBuffer buffer_;  // act_power holds the flat codebook index
  ExplorationSchedule epsilon_;
  Rng episode_rng_, explore_rng_, sample_rng_;
};

struct OracleResult {
  Eigen::VectorXd alpha;  // simplex point before the inverse-order reassignment
  Eigen::VectorXd yaw, roll;
  double objective = 0.0;         // best feasible J*SEE (best overall if none feasible)
  bool feasible = false;          // some grid point satisfied every constraint
  double best_any_objective = 0.0;  // optimum ignoring the QoS constraint
  long evaluated = 0;
  StepMetrics metrics;  // at the returned point
};

using OraclePointVisitor =
    std::function<void(const Eigen::VectorXd& alpha, const Eigen::VectorXd& yaw,
                       const Eigen::VectorXd& roll, double objective, bool feasible)>;

/// Exhaustive search of J*SEE over a simplex grid (alpha_divisions parts)
/// times a per-mirror angle grid (angle_points values per axis, endpoints
/// included) on a frozen scene. QoS-violating points are tracked but
/// excluded from the feasible optimum. Deterministic; throws when the grid
/// exceeds max_combinations or the scene is beyond desk scale.
OracleResult grid_oracle(const Scene& frozen_scene, const BlockageMask& blockage,
                         const Eigen::VectorXd& r_min, const LinkParams& link,
                         const PowerModelConfig& power, int alpha_divisions,
                         int angle_points, long max_combinations = 1000000,
                         const OraclePointVisitor& on_point = {});

}  // namespace vlcnet
