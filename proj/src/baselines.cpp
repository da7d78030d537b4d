#include "vlcnet/baselines.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace vlcnet {

namespace {

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated or corrupt checkpoint");
  return v;
}

void write_rng(std::ostream& out, const Rng& rng) {
  write_pod(out, rng.key());
  write_pod(out, rng.counter());
}

Rng read_rng(std::istream& in) {
  Rng r;
  const auto key = read_pod<std::uint64_t>(in);
  const auto ctr = read_pod<std::uint64_t>(in);
  r.restore(key, ctr);
  return r;
}

double mse_update(nn::Mlp& critic, nn::AdamState& adam, const Eigen::MatrixXd& x,
                  const Eigen::VectorXd& y, double lr, double clip) {
  nn::Tape tape;
  const Eigen::VectorXd q = nn::forward(critic, x, &tape).col(0);
  const Eigen::VectorXd err = q - y;
  const double n = static_cast<double>(y.size());
  const double loss = err.squaredNorm() / n;
  nn::Gradients g = nn::backward(critic, tape, (2.0 / n) * err);
  nn::clip_global_norm(g, clip);
  nn::adam_update(critic, g, adam, lr);
  return loss;
}

double joint_norm(const std::vector<const nn::Gradients*>& parts) {
  double sq = 0.0;
  for (const nn::Gradients* g : parts) {
    for (const auto& w : g->weights) sq += w.squaredNorm();
    for (const auto& b : g->bias) sq += b.squaredNorm();
  }
  return std::sqrt(sq);
}

void scale_gradients(nn::Gradients& g, double s) {
  for (auto& w : g.weights) w *= s;
  for (auto& b : g.bias) b *= s;
}

EpisodeRecord accumulate_episode(int episode, const std::vector<StepOutcome>& steps,
                                 double sigma) {
  EpisodeRecord r;
  r.episode = episode;
  r.sigma = sigma;
  if (steps.empty()) return r;
  for (const StepOutcome& s : steps) {
    r.mean_reward += s.reward;
    r.sum_rate += s.metrics.sum_rate;
    r.see_value += s.metrics.see_value;
    r.jain_index += s.metrics.jain_index;
    r.objective_value += s.metrics.objective_value;
    r.qos_violations += s.qos_violations;
    r.power_violations += s.power_violation;
  }
  const double n = static_cast<double>(steps.size());
  r.mean_reward /= n;
  r.sum_rate /= n;
  r.see_value /= n;
  r.jain_index /= n;
  r.objective_value /= n;
  r.qos_violations /= n;
  r.power_violations /= n;
  return r;
}

constexpr std::uint32_t kSingleVersion = 1;
constexpr std::uint32_t kDqnVersion = 1;

}  // namespace

SingleAgentTrainer::SingleAgentTrainer(const EnvConfig& env_cfg, const TrainerConfig& cfg,
                                       std::uint64_t seed, AngleMode angle_mode)
    : env_cfg_(env_cfg),
      cfg_(cfg),
      angle_mode_(angle_mode),
      env_(env_cfg),
      buffer_(cfg.buffer_capacity),
      episode_rng_(Rng::stream(seed, "episodes")),
      explore_rng_(Rng::stream(seed, "exploration")),
      sample_rng_(Rng::stream(seed, "sample")),
      baseline_rng_(Rng::stream(seed, "baseline")) {
  if (angle_mode_ == AngleMode::None && env_.num_mirrors() != 0)
    throw std::invalid_argument("AngleMode::None expects a scene without mirrors");
  if (angle_mode_ != AngleMode::None && env_.num_mirrors() == 0)
    throw std::invalid_argument("scene without mirrors needs AngleMode::None");

  const int obs = env_.obs_power_dim() + env_.obs_angle_dim();
  const int act_power = env_.action_power_dim();
  const int act_angles = env_.action_angle_dim();
  const int hidden = cfg_.hidden_power_actor;
  const int critic_in =
      obs + act_power + (angle_mode_ == AngleMode::None ? 0 : act_angles);

  Rng init_rng = Rng::stream(seed, "init");
  trunk_ = nn::init({obs, hidden, hidden}, {nn::Activation::Relu, nn::Activation::Relu},
                    init_rng);
  head_power_ = nn::init({hidden, act_power}, {nn::Activation::Softmax}, init_rng);
  if (angle_mode_ == AngleMode::Learned)
    head_angles_ = nn::init({hidden, act_angles}, {nn::Activation::Tanh}, init_rng);
  critic_ = nn::init({critic_in, cfg_.hidden_critic, cfg_.hidden_critic, 1},
                     {nn::Activation::Relu, nn::Activation::Relu, nn::Activation::Linear},
                     init_rng);
  target_trunk_ = trunk_;
  target_head_power_ = head_power_;
  target_head_angles_ = head_angles_;
  target_critic_ = critic_;
  trunk_adam_ = nn::make_adam_state(trunk_);
  head_power_adam_ = nn::make_adam_state(head_power_);
  if (angle_mode_ == AngleMode::Learned) head_angles_adam_ = nn::make_adam_state(head_angles_);
  critic_adam_ = nn::make_adam_state(critic_);
  schedule_.sigma = cfg_.sigma0;
  schedule_.decay = cfg_.sigma_decay;
  schedule_.sigma_min = cfg_.sigma_min;
}

Eigen::MatrixXd SingleAgentTrainer::joint_obs(const Eigen::MatrixXd& obs_power,
                                              const Eigen::MatrixXd& obs_angles) const {
  Eigen::MatrixXd o(obs_power.rows(), obs_power.cols() + obs_angles.cols());
  o << obs_power, obs_angles;
  return o;
}

SingleAgentTrainer::JointAction SingleAgentTrainer::act(
    const Eigen::VectorXd& obs, double sigma, Rng& noise_rng,
    const Eigen::VectorXd& frozen_angles) const {
  JointAction a;
  const Eigen::MatrixXd h = nn::forward(trunk_, obs.transpose());
  a.power = nn::forward_noisy_head(head_power_, h, sigma, noise_rng).row(0);
  switch (angle_mode_) {
    case AngleMode::Learned:
      a.angles = nn::forward_noisy_head(head_angles_, h, sigma, noise_rng).row(0);
      break;
    case AngleMode::RandomPerEpisode: a.angles = frozen_angles; break;
    case AngleMode::None: a.angles = Eigen::VectorXd(0); break;
  }
  return a;
}

void SingleAgentTrainer::update() {
  const Batch batch = buffer_.sample(cfg_.batch_size, sample_rng_);
  const Eigen::MatrixXd next_obs = joint_obs(batch.next_obs_power, batch.next_obs_angles);
  const Eigen::MatrixXd obs = joint_obs(batch.obs_power, batch.obs_angles);

  // bootstrap target from the target policy; frozen/random angles are
  // constant within an episode, so the stored action is the next action
  const Eigen::MatrixXd next_h = nn::forward(target_trunk_, next_obs);
  const Eigen::MatrixXd next_power = nn::forward(target_head_power_, next_h);
  Eigen::MatrixXd next_angles;
  if (angle_mode_ == AngleMode::Learned)
    next_angles = nn::forward(target_head_angles_, next_h);
  else
    next_angles = batch.act_angles;
  Eigen::MatrixXd xq(obs.rows(), critic_.input_dim());
  if (angle_mode_ == AngleMode::None)
    xq << next_obs, next_power;
  else
    xq << next_obs, next_power, next_angles;
  const Eigen::VectorXd q_next = nn::forward(target_critic_, xq).col(0);
  const Eigen::VectorXd y =
      batch.rewards.array() + cfg_.gamma * (1.0 - batch.terminal) * q_next.array();

  Eigen::MatrixXd x(obs.rows(), critic_.input_dim());
  if (angle_mode_ == AngleMode::None)
    x << obs, batch.act_power;
  else
    x << obs, batch.act_power, batch.act_angles;
  mse_update(critic_, critic_adam_, x, y, cfg_.critic_lr, cfg_.grad_clip);

  // actor ascent through both heads and the shared trunk
  nn::Tape trunk_tape, power_tape, angle_tape, critic_tape;
  const Eigen::MatrixXd h = nn::forward(trunk_, obs, &trunk_tape);
  const Eigen::MatrixXd a_power = nn::forward(head_power_, h, &power_tape);
  Eigen::MatrixXd a_angles;
  if (angle_mode_ == AngleMode::Learned)
    a_angles = nn::forward(head_angles_, h, &angle_tape);
  else if (angle_mode_ == AngleMode::RandomPerEpisode)
    a_angles = batch.act_angles;
  Eigen::MatrixXd xa(obs.rows(), critic_.input_dim());
  if (angle_mode_ == AngleMode::None)
    xa << obs, a_power;
  else
    xa << obs, a_power, a_angles;
  nn::forward(critic_, xa, &critic_tape);
  const double n = static_cast<double>(batch.size());
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(batch.size(), 1, 1.0 / n);
  const nn::Gradients dq = nn::backward(critic_, critic_tape, ones, false);

  const Eigen::Index power_off = obs.cols();
  nn::Gradients g_power =
      nn::backward(head_power_, power_tape,
                   -dq.input.middleCols(power_off, a_power.cols()));
  Eigen::MatrixXd trunk_upstream = g_power.input;
  nn::Gradients g_angles;
  if (angle_mode_ == AngleMode::Learned) {
    g_angles = nn::backward(head_angles_, angle_tape,
                            -dq.input.middleCols(power_off + a_power.cols(),
                                                 a_angles.cols()));
    trunk_upstream += g_angles.input;
  }
  nn::Gradients g_trunk = nn::backward(trunk_, trunk_tape, trunk_upstream);

  if (cfg_.grad_clip > 0.0) {
    std::vector<const nn::Gradients*> parts{&g_trunk, &g_power};
    if (angle_mode_ == AngleMode::Learned) parts.push_back(&g_angles);
    const double norm = joint_norm(parts);
    if (norm > cfg_.grad_clip) {
      const double s = cfg_.grad_clip / norm;
      scale_gradients(g_trunk, s);
      scale_gradients(g_power, s);
      if (angle_mode_ == AngleMode::Learned) scale_gradients(g_angles, s);
    }
  }
  nn::adam_update(trunk_, g_trunk, trunk_adam_, cfg_.actor_lr);
  nn::adam_update(head_power_, g_power, head_power_adam_, cfg_.actor_lr);
  if (angle_mode_ == AngleMode::Learned)
    nn::adam_update(head_angles_, g_angles, head_angles_adam_, cfg_.actor_lr);

  nn::soft_update(target_critic_, critic_, cfg_.tau);
  nn::soft_update(target_trunk_, trunk_, cfg_.tau);
  nn::soft_update(target_head_power_, head_power_, cfg_.tau);
  if (angle_mode_ == AngleMode::Learned)
    nn::soft_update(target_head_angles_, head_angles_, cfg_.tau);
}

void SingleAgentTrainer::train(const std::function<void(const EpisodeRecord&)>& sink) {
  const int act_angles = env_.action_angle_dim();
  for (int ep = 0; ep < cfg_.episodes; ++ep) {
    auto [obs_power, obs_angles] = env_.reset(episode_rng_.next_u64());
    Eigen::VectorXd frozen(act_angles);
    if (angle_mode_ == AngleMode::RandomPerEpisode)
      for (Eigen::Index i = 0; i < frozen.size(); ++i)
        frozen(i) = baseline_rng_.uniform(-1.0, 1.0);
    std::vector<StepOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(cfg_.steps_per_episode));
    for (int t = 0; t < cfg_.steps_per_episode; ++t) {
      Eigen::VectorXd joint(obs_power.size() + obs_angles.size());
      joint << obs_power, obs_angles;
      const JointAction a = act(joint, schedule_.sigma, explore_rng_, frozen);
      StepOutcome out = env_.step(action_power_from_simplex(a.power, env_.current_order()),
                                  action_angles_from_unit(a.angles));
      Transition tr;
      tr.obs_power = obs_power;
      tr.obs_angles = obs_angles;
      tr.act_power = a.power;
      tr.act_angles = a.angles;
      tr.reward = out.reward;
      tr.next_obs_power = out.obs_power;
      tr.next_obs_angles = out.obs_angles;
      tr.terminal = t + 1 == cfg_.steps_per_episode;
      buffer_.push(std::move(tr));
      obs_power = out.obs_power;
      obs_angles = out.obs_angles;
      if (buffer_.size() >= static_cast<std::size_t>(cfg_.batch_size)) update();
      schedule_.advance();
      outcomes.push_back(std::move(out));
    }
    if (sink) sink(accumulate_episode(ep, outcomes, schedule_.sigma));
  }
}

std::vector<EpisodeRecord> SingleAgentTrainer::evaluate(int episodes,
                                                        std::uint64_t eval_seed) const {
  Environment env(env_cfg_);
  Rng ep_rng = Rng::stream(eval_seed, "evaluation");
  Rng angle_rng = Rng::stream(eval_seed, "evaluation.angles");
  Rng no_noise;
  std::vector<EpisodeRecord> records;
  for (int ep = 0; ep < episodes; ++ep) {
    auto [obs_power, obs_angles] = env.reset(ep_rng.next_u64());
    Eigen::VectorXd frozen(env.action_angle_dim());
    if (angle_mode_ == AngleMode::RandomPerEpisode)
      for (Eigen::Index i = 0; i < frozen.size(); ++i)
        frozen(i) = angle_rng.uniform(-1.0, 1.0);
    std::vector<StepOutcome> outcomes;
    for (int t = 0; t < cfg_.steps_per_episode; ++t) {
      Eigen::VectorXd joint(obs_power.size() + obs_angles.size());
      joint << obs_power, obs_angles;
      const JointAction a = act(joint, 0.0, no_noise, frozen);
      StepOutcome out = env.step(action_power_from_simplex(a.power, env.current_order()),
                                 action_angles_from_unit(a.angles));
      obs_power = out.obs_power;
      obs_angles = out.obs_angles;
      outcomes.push_back(std::move(out));
    }
    records.push_back(accumulate_episode(ep, outcomes, 0.0));
  }
  return records;
}

void SingleAgentTrainer::save_checkpoint(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out.write("VLK1", 4);
  write_pod(out, kSingleVersion);
  write_pod(out, static_cast<std::uint8_t>(angle_mode_));
  write_pod(out, static_cast<std::int32_t>(env_.num_users()));
  write_pod(out, static_cast<std::int32_t>(env_.num_aps()));
  write_pod(out, static_cast<std::int32_t>(env_.num_mirrors()));
  write_pod(out, schedule_.sigma);
  write_rng(out, episode_rng_);
  write_rng(out, explore_rng_);
  write_rng(out, sample_rng_);
  write_rng(out, baseline_rng_);
  nn::serialize(trunk_, out);
  nn::serialize(head_power_, out);
  if (angle_mode_ == AngleMode::Learned) nn::serialize(head_angles_, out);
  nn::serialize(critic_, out);
  nn::serialize(target_trunk_, out);
  nn::serialize(target_head_power_, out);
  if (angle_mode_ == AngleMode::Learned) nn::serialize(target_head_angles_, out);
  nn::serialize(target_critic_, out);
  nn::serialize(trunk_adam_, out);
  nn::serialize(head_power_adam_, out);
  if (angle_mode_ == AngleMode::Learned) nn::serialize(head_angles_adam_, out);
  nn::serialize(critic_adam_, out);
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

SingleAgentTrainer SingleAgentTrainer::load_checkpoint(const std::string& path,
                                                       const EnvConfig& env_cfg,
                                                       const TrainerConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "VLK1")
    throw std::runtime_error("not a single-agent checkpoint: " + path);
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kSingleVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  const auto mode = static_cast<AngleMode>(read_pod<std::uint8_t>(in));
  const auto users = read_pod<std::int32_t>(in);
  const auto aps = read_pod<std::int32_t>(in);
  const auto mirrors = read_pod<std::int32_t>(in);
  SingleAgentTrainer t(env_cfg, cfg, 0, mode);
  if (users != t.env_.num_users() || aps != t.env_.num_aps() ||
      mirrors != t.env_.num_mirrors())
    throw std::runtime_error("checkpoint scene shape does not match the configuration");
  t.schedule_.sigma = read_pod<double>(in);
  t.episode_rng_ = read_rng(in);
  t.explore_rng_ = read_rng(in);
  t.sample_rng_ = read_rng(in);
  t.baseline_rng_ = read_rng(in);
  t.trunk_ = nn::deserialize_mlp(in);
  t.head_power_ = nn::deserialize_mlp(in);
  if (mode == AngleMode::Learned) t.head_angles_ = nn::deserialize_mlp(in);
  t.critic_ = nn::deserialize_mlp(in);
  t.target_trunk_ = nn::deserialize_mlp(in);
  t.target_head_power_ = nn::deserialize_mlp(in);
  if (mode == AngleMode::Learned) t.target_head_angles_ = nn::deserialize_mlp(in);
  t.target_critic_ = nn::deserialize_mlp(in);
  t.trunk_adam_ = nn::deserialize_adam(in);
  t.head_power_adam_ = nn::deserialize_adam(in);
  if (mode == AngleMode::Learned) t.head_angles_adam_ = nn::deserialize_adam(in);
  t.critic_adam_ = nn::deserialize_adam(in);
  return t;
}

DqnCodebookTrainer::DqnCodebookTrainer(const EnvConfig& env_cfg, const TrainerConfig& cfg,
                                       std::uint64_t seed, int power_profiles,
                                       int angle_presets)
    : env_cfg_(env_cfg),
      cfg_(cfg),
      env_(env_cfg),
      buffer_(cfg.buffer_capacity),
      episode_rng_(Rng::stream(seed, "episodes")),
      explore_rng_(Rng::stream(seed, "exploration")),
      sample_rng_(Rng::stream(seed, "sample")) {
  if (power_profiles < 1 || angle_presets < 1 || power_profiles * angle_presets > 4096)
    throw std::invalid_argument("codebook size out of bounds (1..4096 actions)");
  const auto powers = make_power_profiles(power_profiles, env_.num_users());
  const auto angles = make_angle_presets(angle_presets, env_.num_mirrors());
  for (const auto& p : powers)
    for (const auto& a : angles) codebook_.push_back({p, a});
  const int obs = env_.obs_power_dim() + env_.obs_angle_dim();
  Rng init_rng = Rng::stream(seed, "init");
  q_ = nn::init({obs, cfg_.hidden_power_actor, cfg_.hidden_power_actor,
                 static_cast<int>(codebook_.size())},
                {nn::Activation::Relu, nn::Activation::Relu, nn::Activation::Linear},
                init_rng);
  target_q_ = q_;
  q_adam_ = nn::make_adam_state(q_);
  epsilon_.sigma = cfg_.sigma0;
  epsilon_.decay = cfg_.sigma_decay;
  epsilon_.sigma_min = cfg_.sigma_min;
}

std::vector<Eigen::VectorXd> DqnCodebookTrainer::make_power_profiles(int count, int users) {
  // exponential tilt family: t = 0 is uniform, larger t concentrates power;
  // the environment's inverse-order rule maps the tilt onto channel ranks
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : 3.0 * i / (count - 1);
    Eigen::VectorXd w(users);
    for (int k = 0; k < users; ++k) w(k) = std::exp(-t * k);
    out.push_back(w / w.sum());
  }
  return out;
}

std::vector<Eigen::VectorXd> DqnCodebookTrainer::make_angle_presets(int count, int mirrors) {
  // joint roll sweep, yaw zero: midpoints of `count` equal bins of the box
  std::vector<Eigen::VectorXd> out;
  for (int j = 0; j < count; ++j) {
    const double roll_unit = -1.0 + (2.0 * j + 1.0) / count;
    Eigen::VectorXd u(2 * mirrors);
    for (int m = 0; m < mirrors; ++m) {
      u(2 * m) = 0.0;
      u(2 * m + 1) = roll_unit;
    }
    out.push_back(u);
  }
  return out;
}

int DqnCodebookTrainer::greedy_action(const Eigen::VectorXd& joint_obs) const {
  const Eigen::VectorXd q = nn::forward(q_, joint_obs.transpose()).row(0);
  int best = 0;
  for (int i = 1; i < static_cast<int>(q.size()); ++i)
    if (q(i) > q(best)) best = i;  // strict: ties keep the lowest index
  return best;
}

void DqnCodebookTrainer::update() {
  const Batch batch = buffer_.sample(cfg_.batch_size, sample_rng_);
  Eigen::MatrixXd obs(batch.size(), q_.input_dim());
  obs << batch.obs_power, batch.obs_angles;
  Eigen::MatrixXd next_obs(batch.size(), q_.input_dim());
  next_obs << batch.next_obs_power, batch.next_obs_angles;

  const Eigen::MatrixXd q_next = nn::forward(target_q_, next_obs);
  Eigen::VectorXd y(batch.size());
  for (Eigen::Index i = 0; i < batch.size(); ++i)
    y(i) = batch.rewards(i) +
           cfg_.gamma * (1.0 - batch.terminal(i)) * q_next.row(i).maxCoeff();

  nn::Tape tape;
  const Eigen::MatrixXd q = nn::forward(q_, obs, &tape);
  Eigen::MatrixXd upstream = Eigen::MatrixXd::Zero(q.rows(), q.cols());
  const double n = static_cast<double>(batch.size());
  for (Eigen::Index i = 0; i < batch.size(); ++i) {
    const int a = static_cast<int>(batch.act_power(i, 0));
    upstream(i, a) = 2.0 * (q(i, a) - y(i)) / n;
  }
  nn::Gradients g = nn::backward(q_, tape, upstream);
  nn::clip_global_norm(g, cfg_.grad_clip);
  nn::adam_update(q_, g, q_adam_, cfg_.critic_lr);
  nn::soft_update(target_q_, q_, cfg_.tau);
}

void DqnCodebookTrainer::train(const std::function<void(const EpisodeRecord&)>& sink) {
  for (int ep = 0; ep < cfg_.episodes; ++ep) {
    auto [obs_power, obs_angles] = env_.reset(episode_rng_.next_u64());
    std::vector<StepOutcome> outcomes;
    for (int t = 0; t < cfg_.steps_per_episode; ++t) {
      Eigen::VectorXd joint(obs_power.size() + obs_angles.size());
      joint << obs_power, obs_angles;
      int a;
      if (explore_rng_.uniform() < epsilon_.sigma)
        a = static_cast<int>(explore_rng_.uniform_index(codebook_.size()));
      else
        a = greedy_action(joint);
      const Entry& e = codebook_[static_cast<std::size_t>(a)];
      StepOutcome out = env_.step(action_power_from_simplex(e.power, env_.current_order()),
                                  action_angles_from_unit(e.angles));
      Transition tr;
      tr.obs_power = obs_power;
      tr.obs_angles = obs_angles;
      tr.act_power = Eigen::VectorXd::Constant(1, static_cast<double>(a));
      tr.act_angles = Eigen::VectorXd(0);
      tr.reward = out.reward;
      tr.next_obs_power = out.obs_power;
      tr.next_obs_angles = out.obs_angles;
      tr.terminal = t + 1 == cfg_.steps_per_episode;
      buffer_.push(std::move(tr));
      obs_power = out.obs_power;
      obs_angles = out.obs_angles;
      if (buffer_.size() >= static_cast<std::size_t>(cfg_.batch_size)) update();
      epsilon_.advance();
      outcomes.push_back(std::move(out));
    }
    if (sink) sink(accumulate_episode(ep, outcomes, epsilon_.sigma));
  }
}

std::vector<EpisodeRecord> DqnCodebookTrainer::evaluate(int episodes,
                                                        std::uint64_t eval_seed) const {
  Environment env(env_cfg_);
  Rng ep_rng = Rng::stream(eval_seed, "evaluation");
  std::vector<EpisodeRecord> records;
  for (int ep = 0; ep < episodes; ++ep) {
    auto [obs_power, obs_angles] = env.reset(ep_rng.next_u64());
    std::vector<StepOutcome> outcomes;
    for (int t = 0; t < cfg_.steps_per_episode; ++t) {
      Eigen::VectorXd joint(obs_power.size() + obs_angles.size());
      joint << obs_power, obs_angles;
      const Entry& e = codebook_[static_cast<std::size_t>(greedy_action(joint))];
      StepOutcome out = env.step(action_power_from_simplex(e.power, env.current_order()),
                                 action_angles_from_unit(e.angles));
      obs_power = out.obs_power;
      obs_angles = out.obs_angles;
      outcomes.push_back(std::move(out));
    }
    records.push_back(accumulate_episode(ep, outcomes, 0.0));
  }
  return records;
}

namespace {
// all compositions of `divisions` parts over `users` bins, lexicographic
void enumerate_simplex(int users, int divisions,
                       const std::function<void(const Eigen::VectorXd&)>& visit) {
  Eigen::VectorXd alpha(users);
  std::function<void(int, int)> rec = [&](int user, int left) {
    if (user == users - 1) {
      alpha(user) = static_cast<double>(left) / divisions;
      visit(alpha);
      return;
    }
    for (int i = 0; i <= left; ++i) {
      alpha(user) = static_cast<double>(i) / divisions;
      rec(user + 1, left - i);
    }
  };
  rec(0, divisions);
}
}  // namespace

OracleResult grid_oracle(const Scene& frozen_scene, const BlockageMask& blockage,
                         const Eigen::VectorXd& r_min, const LinkParams& link,
                         const PowerModelConfig& power, int alpha_divisions,
                         int angle_points, long max_combinations,
                         const OraclePointVisitor& on_point) {
  const int users = frozen_scene.num_users();
  const int mirrors = frozen_scene.num_mirrors();
  if (users > 3 || mirrors > 2)
    throw std::invalid_argument("grid oracle is limited to K <= 3, M <= 2");
  if (alpha_divisions < 1 || angle_points < 1)
    throw std::invalid_argument("grid resolutions must be >= 1");

  double combos = 1.0;
  for (int i = 1; i < users; ++i)
    combos *= static_cast<double>(alpha_divisions + i) / i;  // C(G+K-1, K-1)
  combos *= std::pow(static_cast<double>(angle_points) * angle_points, mirrors);
  if (combos > static_cast<double>(max_combinations))
    throw std::invalid_argument("grid oracle budget exceeded");

  std::vector<double> angle_values;
  for (int i = 0; i < angle_points; ++i) {
    const double v = angle_points == 1
                         ? 0.0
                         : -std::numbers::pi / 2.0 +
                               std::numbers::pi * i / (angle_points - 1);
    angle_values.push_back(v);
  }

  Scene scene = frozen_scene;
  OracleResult best;
  best.objective = -1.0;
  best.best_any_objective = -1.0;
  Eigen::VectorXd best_any_alpha;
  Eigen::VectorXd yaw(mirrors), roll(mirrors);
  const bool power_ok = link.electrical_power <= power.power_budget;

  // odometer over per-mirror (yaw, roll) grid indices
  std::vector<int> idx(static_cast<std::size_t>(2 * mirrors), 0);
  const long angle_combos = static_cast<long>(std::pow(angle_points, 2 * mirrors));

  enumerate_simplex(users, alpha_divisions, [&](const Eigen::VectorXd& alpha) {
    std::fill(idx.begin(), idx.end(), 0);
    for (long a = 0; a < angle_combos; ++a) {
      for (int m = 0; m < mirrors; ++m) {
        yaw(m) = angle_values[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * m)])];
        roll(m) =
            angle_values[static_cast<std::size_t>(idx[static_cast<std::size_t>(2 * m + 1)])];
        scene.mirrors[static_cast<std::size_t>(m)].yaw = yaw(m);
        scene.mirrors[static_cast<std::size_t>(m)].roll = roll(m);
      }
      const StepMetrics metrics =
          evaluate_configuration(scene, blockage, alpha, link, power);
      ++best.evaluated;
      const bool qos_ok = (metrics.rates.array() >= r_min.array()).all();
      const bool feasible = qos_ok && power_ok;
      if (on_point) on_point(alpha, yaw, roll, metrics.objective_value, feasible);
      if (metrics.objective_value > best.best_any_objective) {
        best.best_any_objective = metrics.objective_value;
        best_any_alpha = alpha;
        if (!best.feasible && !feasible) {
          // keep the best point found so far even if nothing is feasible
          best.alpha = alpha;
          best.yaw = yaw;
          best.roll = roll;
          best.objective = metrics.objective_value;
          best.metrics = metrics;
        }
      }
      if (feasible && (!best.feasible || metrics.objective_value > best.objective)) {
        best.feasible = true;
        best.alpha = alpha;
        best.yaw = yaw;
        best.roll = roll;
        best.objective = metrics.objective_value;
        best.metrics = metrics;
      }
      // advance the odometer
      for (std::size_t d = 0; d < idx.size(); ++d) {
        if (++idx[d] < angle_points) break;
        idx[d] = 0;
      }
    }
  });
  return best;
}

}  // namespace vlcnet
