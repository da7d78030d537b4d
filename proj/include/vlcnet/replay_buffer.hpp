#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "vlcnet/rng.hpp"

namespace vlcnet {

/// One experience tuple. Actions are stored in head-output space (simplex
/// point / [-1,1] angle units), i.e. before the environment-side projection,
/// which is also the space the critics consume.
struct Transition {
  Eigen::VectorXd obs_power, obs_angles;
  Eigen::VectorXd act_power, act_angles;
  double reward = 0.0;
  Eigen::VectorXd next_obs_power, next_obs_angles;
  bool terminal = false;
};

/// Column-major minibatch views used by the update steps; one row per sample.
struct Batch {
  Eigen::MatrixXd obs_power, obs_angles, act_power, act_angles;
  Eigen::VectorXd rewards;
  Eigen::MatrixXd next_obs_power, next_obs_angles;
  Eigen::ArrayXd terminal;  // 1.0 where the episode ended at this step

  Eigen::Index size() const { return rewards.size(); }
};

/// Fixed-capacity ring; once full, every push evicts the oldest entry.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return storage_.size(); }
  std::size_t capacity() const { return capacity_; }

  /// i = 0 is the oldest stored transition.
  const Transition& at(std::size_t i) const;

  /// Uniform sample with replacement.
  Batch sample(int batch_size, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;  // ring cursor
  std::vector<Transition> storage_;
};

}  // namespace vlcnet
