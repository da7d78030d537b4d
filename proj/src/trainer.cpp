#include "vlcnet/trainer.hpp"

#include <fstream>
#include <stdexcept>

namespace vlcnet {

namespace {
constexpr char kCheckpointMagic[4] = {'V', 'L', 'C', 'K'};
constexpr std::uint32_t kCheckpointVersion = 1;

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

void write_agent(std::ostream& out, const AgentBundle& a) {
  nn::serialize(a.actor, out);
  nn::serialize(a.critic, out);
  nn::serialize(a.target_actor, out);
  nn::serialize(a.target_critic, out);
  nn::serialize(a.actor_adam, out);
  nn::serialize(a.critic_adam, out);
}

void read_agent(std::istream& in, AgentBundle& a) {
  a.actor = nn::deserialize_mlp(in);
  a.critic = nn::deserialize_mlp(in);
  a.target_actor = nn::deserialize_mlp(in);
  a.target_critic = nn::deserialize_mlp(in);
  a.actor_adam = nn::deserialize_adam(in);
  a.critic_adam = nn::deserialize_adam(in);
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
}  // namespace

TwoAgentTrainer::TwoAgentTrainer(const EnvConfig& env_cfg, const TrainerConfig& cfg,
                                 std::uint64_t seed, PowerMode power_mode)
    : env_cfg_(env_cfg),
      cfg_(cfg),
      seed_(seed),
      power_mode_(power_mode),
      env_(env_cfg),
      buffer_(cfg.buffer_capacity),
      episode_rng_(Rng::stream(seed, "episodes")),
      explore_rng_(Rng::stream(seed, "exploration")),
      sample_rng_(Rng::stream(seed, "sample")) {
  if (env_.num_mirrors() < 1)
    throw std::invalid_argument("two-agent training needs at least one mirror");
  const int k = env_.num_users();
  const int obs_l = env_.obs_power_dim();
  const int obs_m = env_.obs_angle_dim();
  const int act_l = env_.action_power_dim();
  const int act_m = env_.action_angle_dim();
  const int critic_in = obs_l + obs_m + act_l + act_m;

  Rng init_rng = Rng::stream(seed, "init");
  power_ = make_agent(obs_l, act_l, cfg_.hidden_power_actor, nn::Activation::Softmax,
                      critic_in, cfg_.hidden_critic, cfg_.actor_lr, cfg_.critic_lr,
                      init_rng);
  angle_ = make_agent(obs_m, act_m, cfg_.hidden_angle_actor, nn::Activation::Tanh,
                      critic_in, cfg_.hidden_critic, cfg_.actor_lr, cfg_.critic_lr,
                      init_rng);
  schedule_.sigma = cfg_.sigma0;
  schedule_.decay = cfg_.sigma_decay;
  schedule_.sigma_min = cfg_.sigma_min;

  if (power_mode_ == PowerMode::Fixed) {
    fixed_alpha_ = cfg_.fixed_alpha.size() == 0
                       ? Eigen::VectorXd::Constant(k, 1.0 / k).eval()
                       : cfg_.fixed_alpha;
    if (fixed_alpha_.size() != k || fixed_alpha_.minCoeff() < 0.0 ||
        std::abs(fixed_alpha_.sum() - 1.0) > 1e-9)
      throw std::invalid_argument("fixed power allocation is not a length-K simplex point");
  }
}

Eigen::VectorXd TwoAgentTrainer::power_head(const Eigen::VectorXd& obs_power, double sigma,
                                            Rng& rng) const {
  if (power_mode_ == PowerMode::Fixed) return fixed_alpha_;
  return select_action(power_, obs_power, sigma, rng);
}

Eigen::VectorXd TwoAgentTrainer::fixed_mode_target(const AgentBundle& agent,
                                                   const Batch& batch) const {
  // next power action is the constant allocation, not a target-actor output
  Eigen::MatrixXd next_act_power =
      fixed_alpha_.transpose().replicate(batch.size(), 1);
  const Eigen::MatrixXd next_act_angles =
      nn::forward(angle_.target_actor, batch.next_obs_angles);
  const Eigen::MatrixXd x = critic_input(batch.next_obs_power, batch.next_obs_angles,
                                         next_act_power, next_act_angles);
  const Eigen::VectorXd q_next = nn::forward(agent.target_critic, x).col(0);
  return batch.rewards.array() + cfg_.gamma * (1.0 - batch.terminal) * q_next.array();
}

void TwoAgentTrainer::update_agent(AgentBundle& agent, AgentRole role) {
  const Batch batch = buffer_.sample(cfg_.batch_size, sample_rng_);
  const Eigen::VectorXd y = power_mode_ == PowerMode::Fixed
                                ? fixed_mode_target(agent, batch)
                                : critic_target(agent, power_, angle_, batch, cfg_.gamma);
  critic_update(agent, batch, y, cfg_.grad_clip);
  actor_update(agent, role, batch, cfg_.grad_clip);
}

void TwoAgentTrainer::train(const std::function<void(const EpisodeRecord&)>& sink) {
  for (int ep = 0; ep < cfg_.episodes; ++ep) {
    auto [obs_power, obs_angles] = env_.reset(episode_rng_.next_u64());
    std::vector<StepOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(cfg_.steps_per_episode));
    for (int t = 0; t < cfg_.steps_per_episode; ++t) {
      const Eigen::VectorXd act_power = power_head(obs_power, schedule_.sigma, explore_rng_);
      const Eigen::VectorXd act_angles =
          select_action(angle_, obs_angles, schedule_.sigma, explore_rng_);

      StepOutcome out = env_.step(action_power_from_simplex(act_power, env_.current_order()),
                                  action_angles_from_unit(act_angles));
      Transition tr;
      tr.obs_power = obs_power;
      tr.obs_angles = obs_angles;
      tr.act_power = act_power;
      tr.act_angles = act_angles;
      tr.reward = out.reward;
      tr.next_obs_power = out.obs_power;
      tr.next_obs_angles = out.obs_angles;
      tr.terminal = t + 1 == cfg_.steps_per_episode;
      buffer_.push(std::move(tr));

      obs_power = out.obs_power;
      obs_angles = out.obs_angles;

      if (buffer_.size() >= static_cast<std::size_t>(cfg_.batch_size)) {
        if (power_mode_ == PowerMode::Learned) update_agent(power_, AgentRole::Power);
        update_agent(angle_, AgentRole::Angle);
        if (!cfg_.target_update_per_episode) {
          if (power_mode_ == PowerMode::Learned) soft_update_agent(power_, cfg_.tau);
          soft_update_agent(angle_, cfg_.tau);
        }
      }
      schedule_.advance();
      outcomes.push_back(std::move(out));
    }
    if (cfg_.target_update_per_episode &&
        buffer_.size() >= static_cast<std::size_t>(cfg_.batch_size)) {
      if (power_mode_ == PowerMode::Learned) soft_update_agent(power_, cfg_.tau);
      soft_update_agent(angle_, cfg_.tau);
    }
    ++episodes_done_;
    if (sink) sink(accumulate_episode(ep, outcomes, schedule_.sigma));
  }
}

std::vector<EpisodeRecord> TwoAgentTrainer::evaluate(int episodes,
                                                     std::uint64_t eval_seed) const {
  Environment env(env_cfg_);
  Rng ep_rng = Rng::stream(eval_seed, "evaluation");
  Rng no_noise;  // never drawn from: sigma = 0
  std::vector<EpisodeRecord> records;
  records.reserve(static_cast<std::size_t>(episodes));
  for (int ep = 0; ep < episodes; ++ep) {
    auto [obs_power, obs_angles] = env.reset(ep_rng.next_u64());
    std::vector<StepOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(cfg_.steps_per_episode));
    for (int t = 0; t < cfg_.steps_per_episode; ++t) {
      const Eigen::VectorXd act_power =
          power_mode_ == PowerMode::Fixed
              ? fixed_alpha_
              : select_action(power_, obs_power, 0.0, no_noise);
      const Eigen::VectorXd act_angles = select_action(angle_, obs_angles, 0.0, no_noise);
      StepOutcome out = env.step(action_power_from_simplex(act_power, env.current_order()),
                                 action_angles_from_unit(act_angles));
      obs_power = out.obs_power;
      obs_angles = out.obs_angles;
      outcomes.push_back(std::move(out));
    }
    records.push_back(accumulate_episode(ep, outcomes, 0.0));
  }
  return records;
}

void TwoAgentTrainer::save_checkpoint(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  out.write(kCheckpointMagic, 4);
  write_pod(out, kCheckpointVersion);
  write_pod(out, static_cast<std::uint8_t>(power_mode_));
  write_pod(out, static_cast<std::int32_t>(env_.num_users()));
  write_pod(out, static_cast<std::int32_t>(env_.num_aps()));
  write_pod(out, static_cast<std::int32_t>(env_.num_mirrors()));
  write_pod(out, schedule_.sigma);
  write_pod(out, static_cast<std::int32_t>(episodes_done_));
  write_rng(out, episode_rng_);
  write_rng(out, explore_rng_);
  write_rng(out, sample_rng_);
  write_pod(out, static_cast<std::int32_t>(fixed_alpha_.size()));
  for (Eigen::Index i = 0; i < fixed_alpha_.size(); ++i) write_pod(out, fixed_alpha_(i));
  write_agent(out, power_);
  write_agent(out, angle_);
  if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

TwoAgentTrainer TwoAgentTrainer::load_checkpoint(const std::string& path,
                                                 const EnvConfig& env_cfg,
                                                 const TrainerConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != std::string(kCheckpointMagic, 4))
    throw std::runtime_error("not a trainer checkpoint: " + path);
  const auto version = read_pod<std::uint32_t>(in);
  if (version != kCheckpointVersion)
    throw std::runtime_error("unsupported checkpoint version " + std::to_string(version));
  const auto mode = static_cast<PowerMode>(read_pod<std::uint8_t>(in));
  const auto users = read_pod<std::int32_t>(in);
  const auto aps = read_pod<std::int32_t>(in);
  const auto mirrors = read_pod<std::int32_t>(in);

  TwoAgentTrainer t(env_cfg, cfg, 0, mode);
  if (users != t.env_.num_users() || aps != t.env_.num_aps() ||
      mirrors != t.env_.num_mirrors())
    throw std::runtime_error("checkpoint scene shape does not match the configuration");
  t.schedule_.sigma = read_pod<double>(in);
  t.episodes_done_ = read_pod<std::int32_t>(in);
  t.episode_rng_ = read_rng(in);
  t.explore_rng_ = read_rng(in);
  t.sample_rng_ = read_rng(in);
  const auto fa_size = read_pod<std::int32_t>(in);
  t.fixed_alpha_.resize(fa_size);
  for (std::int32_t i = 0; i < fa_size; ++i) t.fixed_alpha_(i) = read_pod<double>(in);
  read_agent(in, t.power_);
  read_agent(in, t.angle_);
  if (t.power_.actor.input_dim() != t.env_.obs_power_dim() ||
      t.angle_.actor.input_dim() != t.env_.obs_angle_dim())
    throw std::runtime_error("checkpoint network shapes do not match the configuration");
  return t;
}

EpisodeRecord mean_record(const std::vector<EpisodeRecord>& records) {
  EpisodeRecord m;
  if (records.empty()) return m;
  for (const EpisodeRecord& r : records) {
    m.mean_reward += r.mean_reward;
    m.sum_rate += r.sum_rate;
    m.see_value += r.see_value;
    m.jain_index += r.jain_index;
    m.objective_value += r.objective_value;
    m.qos_violations += r.qos_violations;
    m.power_violations += r.power_violations;
  }
  const double n = static_cast<double>(records.size());
  m.mean_reward /= n;
  m.sum_rate /= n;
  m.see_value /= n;
  m.jain_index /= n;
  m.objective_value /= n;
  m.qos_violations /= n;
  m.power_violations /= n;
  return m;
}

}  // namespace vlcnet
