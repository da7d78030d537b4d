#pragma once

#include <Eigen/Dense>

#include "vlcnet/mlp.hpp"
#include "vlcnet/replay_buffer.hpp"
#include "vlcnet/rng.hpp"

namespace vlcnet {

/// Actor/critic pair with target copies and optimizer state for one agent.
struct AgentBundle {
  nn::Mlp actor;
  nn::Mlp critic;
  nn::Mlp target_actor;
  nn::Mlp target_critic;
  nn::AdamState actor_adam;
  nn::AdamState critic_adam;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
};

/// Gaussian exploration scale, decayed multiplicatively per environment step.
struct ExplorationSchedule {
  double sigma = 0.2;
  double decay = 0.9999;
  double sigma_min = 0.01;

  void advance() { sigma = std::max(sigma_min, sigma * decay); }
};

/// Two hidden relu layers of `hidden` units and the given output head.
AgentBundle make_agent(int obs_dim, int action_dim, int hidden, nn::Activation head,
                       int critic_input_dim, int critic_hidden, double actor_lr,
                       double critic_lr, Rng& rng);

/// Deterministic policy output with optional Gaussian exploration injected
/// before the output head, so the head constraint is preserved for any
/// sigma. sigma = 0 is the exact deterministic policy and draws no noise.
Eigen::VectorXd select_action(const AgentBundle& agent, const Eigen::VectorXd& obs,
                              double sigma, Rng& rng);

/// Critic input convention, fixed everywhere: [o_l | o_m | a_l | a_m].
Eigen::MatrixXd critic_input(const Eigen::MatrixXd& obs_power,
                             const Eigen::MatrixXd& obs_angles,
                             const Eigen::MatrixXd& act_power,
                             const Eigen::MatrixXd& act_angles);

/// Bootstrap targets y = r + gamma * Q'(o', mu'_l(o'_l), mu'_m(o'_m)) for
/// `agent`'s target critic; the bootstrap term is suppressed on terminal
/// transitions. Touches no optimizer state.
Eigen::VectorXd critic_target(const AgentBundle& agent, const AgentBundle& power_agent,
                              const AgentBundle& angle_agent, const Batch& batch,
                              double gamma);

/// One Adam step on the mean squared error between Q(o, a_l, a_m) and y.
/// Returns the pre-step loss.
double critic_update(AgentBundle& agent, const Batch& batch, const Eigen::VectorXd& y,
                     double grad_clip);

enum class AgentRole { Power, Angle };

/// One Adam ascent step on mean Q(o, ..., mu_i(o_i), ...) where agent i's
/// action is re-derived from its actor (gradient flows through the output
/// head) and the other agent's action comes from the batch. Returns the
/// pre-step objective estimate (mean Q).
double actor_update(AgentBundle& agent, AgentRole role, const Batch& batch,
                    double grad_clip);

void soft_update_agent(AgentBundle& agent, double tau);

}  // namespace vlcnet
