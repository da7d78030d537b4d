#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vlcnet/agent.hpp"
#include "vlcnet/environment.hpp"
#include "vlcnet/metrics.hpp"
#include "vlcnet/replay_buffer.hpp"

namespace vlcnet {

struct TrainerConfig {
  int episodes = 2000;
  int steps_per_episode = 100;
  std::size_t buffer_capacity = 100000;
  int batch_size = 128;
  double gamma = 0.99;
  double tau = 0.001;
  bool target_update_per_episode = false;  // default: every step
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  double sigma0 = 0.2;
  double sigma_decay = 0.9999;
  double sigma_min = 0.01;
  double grad_clip = 1.0;  // global norm; <= 0 disables
  int hidden_power_actor = 128;
  int hidden_angle_actor = 64;
  int hidden_critic = 256;
  Eigen::VectorXd fixed_alpha;  // fixed-power mode only; empty = uniform
};

enum class PowerMode { Learned, Fixed };

/// The two-agent trainer: decentralized actors over their own observations,
/// centralized critics over both observations and both actions, shared
/// scalar reward, replay, target networks and per-step (or per-episode)
/// soft updates. PowerMode::Fixed freezes the power branch at a constant
/// allocation and trains only the mirror-orientation agent.
class TwoAgentTrainer {
 public:
  TwoAgentTrainer(const EnvConfig& env_cfg, const TrainerConfig& cfg, std::uint64_t seed,
                  PowerMode power_mode = PowerMode::Learned);

  /// Runs the full training loop; each finished episode is passed to `sink`.
  void train(const std::function<void(const EpisodeRecord&)>& sink = {});

  /// Noise-free decentralized rollouts; each actor consumes only its own
  /// observation vector. No buffer or parameter updates.
  std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t eval_seed) const;

  void save_checkpoint(const std::string& path) const;
  static TwoAgentTrainer load_checkpoint(const std::string& path, const EnvConfig& env_cfg,
                                         const TrainerConfig& cfg);

  const AgentBundle& power_agent() const { return power_; }
  const AgentBundle& angle_agent() const { return angle_; }
  AgentBundle& mutable_power_agent() { return power_; }
  AgentBundle& mutable_angle_agent() { return angle_; }
  double sigma() const { return schedule_.sigma; }
  int episodes_done() const { return episodes_done_; }
  PowerMode power_mode() const { return power_mode_; }
  const Eigen::VectorXd& fixed_alpha() const { return fixed_alpha_; }

 private:
  Eigen::VectorXd power_head(const Eigen::VectorXd& obs_power, double sigma, Rng& rng) const;
  void update_agent(AgentBundle& agent, AgentRole role);
  Eigen::VectorXd fixed_mode_target(const AgentBundle& agent, const Batch& batch) const;

  EnvConfig env_cfg_;
  TrainerConfig cfg_;
  std::uint64_t seed_;
  PowerMode power_mode_;
  Eigen::VectorXd fixed_alpha_;
  Environment env_;
  AgentBundle power_, angle_;
  ReplayBuffer buffer_;
  ExplorationSchedule schedule_;
  Rng episode_rng_, explore_rng_, sample_rng_;
  int episodes_done_ = 0;
};

/// Aggregate evaluation means over a record list.
EpisodeRecord mean_record(const std::vector<EpisodeRecord>& records);

}  // namespace vlcnet
