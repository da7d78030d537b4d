#include "vlcnet/agent.hpp"

#include <stdexcept>

namespace vlcnet {

AgentBundle make_agent(int obs_dim, int action_dim, int hidden, nn::Activation head,
                       int critic_input_dim, int critic_hidden, double actor_lr,
                       double critic_lr, Rng& rng) {
  AgentBundle a;
  a.actor = nn::init({obs_dim, hidden, hidden, action_dim},
                     {nn::Activation::Relu, nn::Activation::Relu, head}, rng);
  a.critic = nn::init({critic_input_dim, critic_hidden, critic_hidden, 1},
                      {nn::Activation::Relu, nn::Activation::Relu, nn::Activation::Linear},
                      rng);
  a.target_actor = a.actor;
  a.target_critic = a.critic;
  a.actor_adam = nn::make_adam_state(a.actor);
  a.critic_adam = nn::make_adam_state(a.critic);
  a.actor_lr = actor_lr;
  a.critic_lr = critic_lr;
  return a;
}

Eigen::VectorXd select_action(const AgentBundle& agent, const Eigen::VectorXd& obs,
                              double sigma, Rng& rng) {
  if (obs.size() != agent.actor.input_dim())
    throw std::invalid_argument("observation dimension mismatch");
  return nn::forward_noisy_head(agent.actor, obs.transpose(), sigma, rng).row(0);
}

Eigen::MatrixXd critic_input(const Eigen::MatrixXd& obs_power,
                             const Eigen::MatrixXd& obs_angles,
                             const Eigen::MatrixXd& act_power,
                             const Eigen::MatrixXd& act_angles) {
  const Eigen::Index n = obs_power.rows();
  Eigen::MatrixXd x(n, obs_power.cols() + obs_angles.cols() + act_power.cols() +
                           act_angles.cols());
  x << obs_power, obs_angles, act_power, act_angles;
  return x;
}

Eigen::VectorXd critic_target(const AgentBundle& agent, const AgentBundle& power_agent,
                              const AgentBundle& angle_agent, const Batch& batch,
                              double gamma) {
  const Eigen::MatrixXd next_act_power =
      nn::forward(power_agent.target_actor, batch.next_obs_power);
  const Eigen::MatrixXd next_act_angles =
      nn::forward(angle_agent.target_actor, batch.next_obs_angles);
  const Eigen::MatrixXd x = critic_input(batch.next_obs_power, batch.next_obs_angles,
                                         next_act_power, next_act_angles);
  const Eigen::VectorXd q_next = nn::forward(agent.target_critic, x).col(0);
  return batch.rewards.array() + gamma * (1.0 - batch.terminal) * q_next.array();
}

double critic_update(AgentBundle& agent, const Batch& batch, const Eigen::VectorXd& y,
                     double grad_clip) {
  const Eigen::MatrixXd x =
      critic_input(batch.obs_power, batch.obs_angles, batch.act_power, batch.act_angles);
  nn::Tape tape;
  const Eigen::VectorXd q = nn::forward(agent.critic, x, &tape).col(0);
  const Eigen::VectorXd err = q - y;
  const double n = static_cast<double>(batch.size());
  const double loss = err.squaredNorm() / n;
  const Eigen::MatrixXd upstream = (2.0 / n) * err;
  nn::Gradients g = nn::backward(agent.critic, tape, upstream);
  nn::clip_global_norm(g, grad_clip);
  nn::adam_update(agent.critic, g, agent.critic_adam, agent.critic_lr);
  return loss;
}

double actor_update(AgentBundle& agent, AgentRole role, const Batch& batch,
                    double grad_clip) {
  const Eigen::MatrixXd& own_obs =
      role == AgentRole::Power ? batch.obs_power : batch.obs_angles;
  nn::Tape actor_tape;
  const Eigen::MatrixXd own_action = nn::forward(agent.actor, own_obs, &actor_tape);

  const Eigen::MatrixXd x =
      role == AgentRole::Power
          ? critic_input(batch.obs_power, batch.obs_angles, own_action, batch.act_angles)
          : critic_input(batch.obs_power, batch.obs_angles, batch.act_power, own_action);
  nn::Tape critic_tape;
  const Eigen::VectorXd q = nn::forward(agent.critic, x, &critic_tape).col(0);
  const double n = static_cast<double>(batch.size());
  const double objective = q.sum() / n;

  // ascend mean Q: chain dQ/da through the critic input into the actor head
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(batch.size(), 1, 1.0 / n);
  const nn::Gradients dq =
      nn::backward(agent.critic, critic_tape, ones, /*want_param_grads=*/false);
  const Eigen::Index offset =
      role == AgentRole::Power ? batch.obs_power.cols() + batch.obs_angles.cols()
                               : batch.obs_power.cols() + batch.obs_angles.cols() +
                                     batch.act_power.cols();
  const Eigen::MatrixXd upstream =
      -dq.input.middleCols(offset, own_action.cols());  // minimize -Q
  nn::Gradients g = nn::backward(agent.actor, actor_tape, upstream);
  nn::clip_global_norm(g, grad_clip);
  nn::adam_update(agent.actor, g, agent.actor_adam, agent.actor_lr);
  return objective;
}

void soft_update_agent(AgentBundle& agent, double tau) {
  nn::soft_update(agent.target_actor, agent.actor, tau);
  nn::soft_update(agent.target_critic, agent.critic, tau);
}

}  // namespace vlcnet
