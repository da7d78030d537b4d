#include "vlcnet/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "vlcnet/metrics.hpp"

namespace vlcnet {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + v + "'");
}

struct Binding {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

using Registry = std::map<std::string, Binding>;

Binding bind_double(double ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*f = parse_double(k, v);
          },
          [f](const ExperimentConfig& c) { return format_double(c.*f); }};
}

Binding bind_int(int ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*f = static_cast<int>(parse_long(k, v));
          },
          [f](const ExperimentConfig& c) { return std::to_string(c.*f); }};
}

Binding bind_long(long ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*f = parse_long(k, v);
          },
          [f](const ExperimentConfig& c) { return std::to_string(c.*f); }};
}

Binding bind_bool(bool ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string& k, const std::string& v) {
            c.*f = parse_bool(k, v);
          },
          [f](const ExperimentConfig& c) { return c.*f ? "true" : "false"; }};
}

Binding bind_string(std::string ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string&, const std::string& v) { c.*f = v; },
          [f](const ExperimentConfig& c) { return c.*f; }};
}

Binding bind_double_list(std::vector<double> ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string& k, const std::string& v) {
            (c.*f).clear();
            for (const std::string& item : split_list(v))
              (c.*f).push_back(parse_double(k, item));
          },
          [f](const ExperimentConfig& c) {
            std::string s;
            for (double d : c.*f) {
              if (!s.empty()) s += ' ';
              s += format_double(d);
            }
            return s;
          }};
}

Binding bind_seed_list(std::vector<std::uint64_t> ExperimentConfig::* f) {
  return {[f](ExperimentConfig& c, const std::string& k, const std::string& v) {
            (c.*f).clear();
            for (const std::string& item : split_list(v)) {
              try {
                (c.*f).push_back(std::stoull(item));
              } catch (const std::exception&) {
                throw ConfigError("config key '" + k + "': bad seed '" + item + "'");
              }
            }
            if ((c.*f).empty())
              throw ConfigError("config key '" + k + "': needs at least one seed");
          },
          [f](const ExperimentConfig& c) {
            std::string s;
            for (auto d : c.*f) {
              if (!s.empty()) s += ' ';
              s += std::to_string(d);
            }
            return s;
          }};
}

const Registry& registry() {
  static const Registry reg = [] {
    Registry r;
    r["scene.room_x"] = bind_double(&ExperimentConfig::room_x);
    r["scene.room_y"] = bind_double(&ExperimentConfig::room_y);
    r["scene.room_z"] = bind_double(&ExperimentConfig::room_z);
    r["scene.aps"] = bind_int(&ExperimentConfig::aps);
    r["scene.ap_half_power_deg"] = bind_double(&ExperimentConfig::ap_half_power_deg);
    r["scene.users"] = bind_int(&ExperimentConfig::users);
    r["scene.user_height_min"] = bind_double(&ExperimentConfig::user_height_min);
    r["scene.user_height_max"] = bind_double(&ExperimentConfig::user_height_max);
    r["scene.detector_area_m2"] = bind_double(&ExperimentConfig::detector_area_m2);
    r["scene.detector_fov_deg"] = bind_double(&ExperimentConfig::detector_fov_deg);
    r["scene.detector_responsivity"] =
        bind_double(&ExperimentConfig::detector_responsivity);
    r["scene.detector_azimuths_deg"] =
        bind_double_list(&ExperimentConfig::detector_azimuths_deg);
    r["scene.detector_elevations_deg"] =
        bind_double_list(&ExperimentConfig::detector_elevations_deg);
    r["scene.irs_rows"] = bind_int(&ExperimentConfig::irs_rows);
    r["scene.irs_cols"] = bind_int(&ExperimentConfig::irs_cols);
    r["scene.irs_element_width_m"] = bind_double(&ExperimentConfig::irs_element_width_m);
    r["scene.irs_element_height_m"] = bind_double(&ExperimentConfig::irs_element_height_m);
    r["scene.irs_spacing_m"] = bind_double(&ExperimentConfig::irs_spacing_m);
    r["scene.irs_wall"] = bind_string(&ExperimentConfig::irs_wall);
    r["scene.irs_center_height_m"] = bind_double(&ExperimentConfig::irs_center_height_m);
    r["scene.irs_reflectance"] = bind_double(&ExperimentConfig::irs_reflectance);
    r["scene.optical_filter_gain"] = bind_double(&ExperimentConfig::optical_filter_gain);
    r["scene.refractive_index"] = bind_double(&ExperimentConfig::refractive_index);
    r["link.p_opt_w"] = bind_double(&ExperimentConfig::p_opt_w);
    r["link.conversion_q"] = bind_double(&ExperimentConfig::conversion_q);
    r["link.bandwidth_hz"] = bind_double(&ExperimentConfig::bandwidth_hz);
    r["link.noise_psd"] = bind_double(&ExperimentConfig::noise_psd);
    r["link.p_max_w"] = bind_double(&ExperimentConfig::p_max_w);
    r["power.circuit_tx_mw"] = bind_double(&ExperimentConfig::circuit_tx_mw);
    r["power.led_mw"] = bind_double(&ExperimentConfig::led_mw);
    r["power.amplifier_mw"] = bind_double(&ExperimentConfig::amplifier_mw);
    r["power.filter_tx_mw"] = bind_double(&ExperimentConfig::filter_tx_mw);
    r["power.dac_mw"] = bind_double(&ExperimentConfig::dac_mw);
    r["power.element_mw"] = bind_double(&ExperimentConfig::element_mw);
    r["power.circuit_rx_mw"] = bind_double(&ExperimentConfig::circuit_rx_mw);
    r["power.filter_rx_mw"] = bind_double(&ExperimentConfig::filter_rx_mw);
    r["power.tia_mw"] = bind_double(&ExperimentConfig::tia_mw);
    r["power.adc_mw"] = bind_double(&ExperimentConfig::adc_mw);
    r["power.per_device"] = bind_bool(&ExperimentConfig::power_per_device);
    r["power.charge_all_mirrors"] =
        bind_bool(&ExperimentConfig::power_charge_all_mirrors);
    r["env.dt_s"] = bind_double(&ExperimentConfig::dt_s);
    r["env.r_min_mbps_low"] = bind_double(&ExperimentConfig::r_min_mbps_low);
    r["env.r_min_mbps_high"] = bind_double(&ExperimentConfig::r_min_mbps_high);
    r["env.traffic_per_step"] = bind_bool(&ExperimentConfig::traffic_per_step);
    r["env.blockage_probability"] = bind_double(&ExperimentConfig::blockage_probability);
    r["env.blockage_mean_duration_s"] =
        bind_double(&ExperimentConfig::blockage_mean_duration_s);
    r["env.speed_min_mps"] = bind_double(&ExperimentConfig::speed_min_mps);
    r["env.speed_max_mps"] = bind_double(&ExperimentConfig::speed_max_mps);
    r["env.pause_max_s"] = bind_double(&ExperimentConfig::pause_max_s);
    r["env.see_ref"] = bind_double(&ExperimentConfig::see_ref);
    r["env.w_ee"] = bind_double(&ExperimentConfig::w_ee);
    r["env.w_jain"] = bind_double(&ExperimentConfig::w_jain);
    r["env.lambda_qos"] = bind_double(&ExperimentConfig::lambda_qos);
    r["env.lambda_power"] = bind_double(&ExperimentConfig::lambda_power);
    r["agents.episodes"] = bind_int(&ExperimentConfig::episodes);
    r["agents.steps_per_episode"] = bind_int(&ExperimentConfig::steps_per_episode);
    r["agents.buffer_capacity"] = bind_long(&ExperimentConfig::buffer_capacity);
    r["agents.batch_size"] = bind_int(&ExperimentConfig::batch_size);
    r["agents.gamma"] = bind_double(&ExperimentConfig::gamma);
    r["agents.tau"] = bind_double(&ExperimentConfig::tau);
    r["agents.target_update_per_episode"] =
        bind_bool(&ExperimentConfig::target_update_per_episode);
    r["agents.actor_lr"] = bind_double(&ExperimentConfig::actor_lr);
    r["agents.critic_lr"] = bind_double(&ExperimentConfig::critic_lr);
    r["agents.sigma0"] = bind_double(&ExperimentConfig::sigma0);
    r["agents.sigma_decay"] = bind_double(&ExperimentConfig::sigma_decay);
    r["agents.sigma_min"] = bind_double(&ExperimentConfig::sigma_min);
    r["agents.grad_clip"] = bind_double(&ExperimentConfig::grad_clip);
    r["agents.hidden_power_actor"] = bind_int(&ExperimentConfig::hidden_power_actor);
    r["agents.hidden_angle_actor"] = bind_int(&ExperimentConfig::hidden_angle_actor);
    r["agents.hidden_critic"] = bind_int(&ExperimentConfig::hidden_critic);
    r["run.seeds"] = bind_seed_list(&ExperimentConfig::seeds);
    r["run.scheme"] = bind_string(&ExperimentConfig::scheme);
    r["run.checkpoint_interval"] = bind_int(&ExperimentConfig::checkpoint_interval);
    r["run.eval_episodes"] = bind_int(&ExperimentConfig::eval_episodes);
    r["run.jobs"] = bind_int(&ExperimentConfig::jobs);
    r["run.max_sweep_cells"] = bind_long(&ExperimentConfig::max_sweep_cells);
    r["baseline.fixed_alpha"] = bind_double_list(&ExperimentConfig::fixed_alpha);
    r["baseline.dqn_power_profiles"] = bind_int(&ExperimentConfig::dqn_power_profiles);
    r["baseline.dqn_angle_presets"] = bind_int(&ExperimentConfig::dqn_angle_presets);
    r["oracle.alpha_divisions"] = bind_int(&ExperimentConfig::oracle_alpha_divisions);
    r["oracle.angle_points"] = bind_int(&ExperimentConfig::oracle_angle_points);
    r["oracle.max_combinations"] = bind_long(&ExperimentConfig::oracle_max_combinations);
    return r;
  }();
  return reg;
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  const auto it = registry().find(key);
  if (it == registry().end()) throw ConfigError("unrecognized config key '" + key + "'");
  it->second.set(cfg, key, value);
}

}  // namespace

Scheme scheme_from_string(const std::string& s) {
  if (s == "two_agent") return Scheme::TwoAgent;
  if (s == "single_agent_ddpg") return Scheme::SingleAgentDdpg;
  if (s == "random_irs") return Scheme::RandomIrs;
  if (s == "no_irs") return Scheme::NoIrs;
  if (s == "fixed_power") return Scheme::FixedPower;
  if (s == "dqn_codebook") return Scheme::DqnCodebook;
  throw ConfigError("config key 'run.scheme': unknown scheme '" + s + "'");
}

std::string scheme_to_string(Scheme s) {
  switch (s) {
    case Scheme::TwoAgent: return "two_agent";
    case Scheme::SingleAgentDdpg: return "single_agent_ddpg";
    case Scheme::RandomIrs: return "random_irs";
    case Scheme::NoIrs: return "no_irs";
    case Scheme::FixedPower: return "fixed_power";
    case Scheme::DqnCodebook: return "dqn_codebook";
  }
  return "two_agent";
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    set_key(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like key=value, got '" + assignment + "'");
  set_key(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string resolved_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [key, binding] : registry()) {
    out += key;
    out += " = ";
    out += binding.get(cfg);
    out += "\n";
  }
  return out;
}

void validate(const ExperimentConfig& cfg) {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("config key '" + key + "': " + why);
  };
  if (cfg.room_x <= 0 || cfg.room_y <= 0 || cfg.room_z <= 0)
    fail("scene.room_x", "room dimensions must be positive");
  if (cfg.aps < 1) fail("scene.aps", "need at least one AP");
  if (cfg.ap_half_power_deg <= 1.0 || cfg.ap_half_power_deg >= 90.0)
    fail("scene.ap_half_power_deg", "must be in (1, 90) degrees");
  if (cfg.users < 1) fail("scene.users", "need at least one user");
  if (cfg.user_height_min > cfg.user_height_max || cfg.user_height_min < 0 ||
      cfg.user_height_max > cfg.room_z)
    fail("scene.user_height_min", "height range must fit inside the room");
  if (cfg.detector_area_m2 <= 0) fail("scene.detector_area_m2", "must be positive");
  if (cfg.detector_fov_deg <= 0 || cfg.detector_fov_deg > 90)
    fail("scene.detector_fov_deg", "must be in (0, 90] degrees");
  if (cfg.detector_responsivity <= 0) fail("scene.detector_responsivity", "must be positive");
  if (cfg.detector_azimuths_deg.empty() ||
      cfg.detector_azimuths_deg.size() != cfg.detector_elevations_deg.size())
    fail("scene.detector_azimuths_deg", "azimuth/elevation lists must match and be non-empty");
  if (cfg.irs_rows < 0 || cfg.irs_cols < 0) fail("scene.irs_rows", "must be >= 0");
  if (cfg.irs_reflectance <= 0 || cfg.irs_reflectance > 1)
    fail("scene.irs_reflectance", "must be in (0, 1]");
  if (cfg.irs_element_width_m <= 0 || cfg.irs_element_height_m <= 0)
    fail("scene.irs_element_width_m", "element size must be positive");
  irs_wall_from_string(cfg.irs_wall);
  if (cfg.p_opt_w <= 0) fail("link.p_opt_w", "must be positive");
  if (cfg.conversion_q <= 0) fail("link.conversion_q", "must be positive");
  if (cfg.bandwidth_hz <= 0) fail("link.bandwidth_hz", "must be positive");
  if (cfg.noise_psd <= 0) fail("link.noise_psd", "must be positive");
  if (cfg.p_max_w <= 0) fail("link.p_max_w", "must be positive");
  for (const auto& [key, v] :
       std::initializer_list<std::pair<const char*, double>>{
           {"power.circuit_tx_mw", cfg.circuit_tx_mw},
           {"power.led_mw", cfg.led_mw},
           {"power.amplifier_mw", cfg.amplifier_mw},
           {"power.filter_tx_mw", cfg.filter_tx_mw},
           {"power.dac_mw", cfg.dac_mw},
           {"power.element_mw", cfg.element_mw},
           {"power.circuit_rx_mw", cfg.circuit_rx_mw},
           {"power.filter_rx_mw", cfg.filter_rx_mw},
           {"power.tia_mw", cfg.tia_mw},
           {"power.adc_mw", cfg.adc_mw}}) {
    if (v < 0) fail(key, "must be >= 0");
  }
  if (cfg.dt_s <= 0) fail("env.dt_s", "must be positive");
  if (cfg.r_min_mbps_low < 0 || cfg.r_min_mbps_low > cfg.r_min_mbps_high)
    fail("env.r_min_mbps_low", "need 0 <= low <= high");
  if (cfg.blockage_probability < 0 || cfg.blockage_probability > 1)
    fail("env.blockage_probability", "must be in [0, 1]");
  if (cfg.blockage_mean_duration_s <= 0)
    fail("env.blockage_mean_duration_s", "must be positive");
  if (cfg.speed_min_mps < 0 || cfg.speed_min_mps > cfg.speed_max_mps)
    fail("env.speed_min_mps", "need 0 <= min <= max");
  if (cfg.pause_max_s < 0) fail("env.pause_max_s", "must be >= 0");
  if (cfg.see_ref <= 0) fail("env.see_ref", "must be positive");
  if (cfg.episodes < 0) fail("agents.episodes", "must be >= 0");
  if (cfg.steps_per_episode < 1) fail("agents.steps_per_episode", "must be >= 1");
  if (cfg.buffer_capacity < 1) fail("agents.buffer_capacity", "must be >= 1");
  if (cfg.batch_size < 1) fail("agents.batch_size", "must be >= 1");
  if (cfg.gamma < 0 || cfg.gamma > 1) fail("agents.gamma", "must be in [0, 1]");
  if (cfg.tau <= 0 || cfg.tau > 1) fail("agents.tau", "must be in (0, 1]");
  if (cfg.sigma0 < 0) fail("agents.sigma0", "must be >= 0");
  if (cfg.sigma_decay <= 0 || cfg.sigma_decay > 1)
    fail("agents.sigma_decay", "must be in (0, 1]");
  if (cfg.sigma_min < 0) fail("agents.sigma_min", "must be >= 0");
  if (cfg.hidden_power_actor < 1 || cfg.hidden_angle_actor < 1 || cfg.hidden_critic < 1)
    fail("agents.hidden_critic", "hidden sizes must be >= 1");
  if (cfg.checkpoint_interval < 1) fail("run.checkpoint_interval", "must be >= 1");
  if (cfg.eval_episodes < 1) fail("run.eval_episodes", "must be >= 1");
  if (cfg.jobs < 0) fail("run.jobs", "must be >= 0");
  if (cfg.max_sweep_cells < 1) fail("run.max_sweep_cells", "must be >= 1");
  scheme_from_string(cfg.scheme);
  if (!cfg.fixed_alpha.empty()) {
    if (static_cast<int>(cfg.fixed_alpha.size()) != cfg.users)
      fail("baseline.fixed_alpha", "length must equal scene.users");
    double sum = 0.0;
    for (double a : cfg.fixed_alpha) {
      if (a < 0) fail("baseline.fixed_alpha", "entries must be >= 0");
      sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail("baseline.fixed_alpha", "must sum to 1");
  }
  if (cfg.dqn_power_profiles < 1 || cfg.dqn_angle_presets < 1 ||
      cfg.dqn_power_profiles * cfg.dqn_angle_presets > 4096)
    fail("baseline.dqn_power_profiles", "codebook must have 1..4096 actions");
  if (cfg.oracle_alpha_divisions < 1) fail("oracle.alpha_divisions", "must be >= 1");
  if (cfg.oracle_angle_points < 1) fail("oracle.angle_points", "must be >= 1");
  if (cfg.oracle_max_combinations < 1) fail("oracle.max_combinations", "must be >= 1");
}

EnvConfig make_env_config(const ExperimentConfig& cfg) {
  validate(cfg);
  EnvConfig env;
  Scene& scene = env.scene;
  scene.room_x = cfg.room_x;
  scene.room_y = cfg.room_y;
  scene.room_z = cfg.room_z;
  scene.optical_filter_gain = cfg.optical_filter_gain;
  scene.refractive_index = cfg.refractive_index;
  scene.lambertian_order = lambertian_order(cfg.ap_half_power_deg * kDegToRad);
  scene.aps = make_ap_grid(scene, cfg.aps, cfg.ap_half_power_deg * kDegToRad);
  if (cfg.irs_rows > 0 && cfg.irs_cols > 0)
    scene.mirrors = make_irs_array(scene, irs_wall_from_string(cfg.irs_wall), cfg.irs_rows,
                                   cfg.irs_cols, cfg.irs_element_width_m,
                                   cfg.irs_element_height_m, cfg.irs_spacing_m,
                                   cfg.irs_reflectance, cfg.irs_center_height_m);
  scene.users.resize(static_cast<std::size_t>(cfg.users));
  for (UserTerminal& u : scene.users) {
    u.detectors.clear();
    for (std::size_t i = 0; i < cfg.detector_azimuths_deg.size(); ++i) {
      PhotoDetector pd;
      pd.area = cfg.detector_area_m2;
      pd.fov_semi_angle = cfg.detector_fov_deg * kDegToRad;
      pd.responsivity = cfg.detector_responsivity;
      pd.normal = orientation_from_az_el(cfg.detector_azimuths_deg[i] * kDegToRad,
                                         cfg.detector_elevations_deg[i] * kDegToRad);
      u.detectors.push_back(pd);
    }
  }
  env.link.electrical_power = cfg.p_opt_w / cfg.conversion_q;
  env.link.bandwidth = cfg.bandwidth_hz;
  env.link.noise_psd = cfg.noise_psd;
  env.link.responsivity = cfg.detector_responsivity;
  env.link.optical_conversion = cfg.conversion_q;
  env.power.circuit_tx = cfg.circuit_tx_mw * 1e-3;
  env.power.led_driver = cfg.led_mw * 1e-3;
  env.power.amplifier = cfg.amplifier_mw * 1e-3;
  env.power.filter_tx = cfg.filter_tx_mw * 1e-3;
  env.power.dac = cfg.dac_mw * 1e-3;
  env.power.per_mirror = cfg.element_mw * 1e-3;
  env.power.circuit_rx = cfg.circuit_rx_mw * 1e-3;
  env.power.filter_rx = cfg.filter_rx_mw * 1e-3;
  env.power.tia = cfg.tia_mw * 1e-3;
  env.power.adc = cfg.adc_mw * 1e-3;
  env.power.power_budget = cfg.p_max_w;
  env.power.per_device = cfg.power_per_device;
  env.power.charge_all_mirrors = cfg.power_charge_all_mirrors;
  env.mobility.speed_min = cfg.speed_min_mps;
  env.mobility.speed_max = cfg.speed_max_mps;
  env.mobility.pause_max = cfg.pause_max_s;
  env.blockage.probability = cfg.blockage_probability;
  env.blockage.mean_duration = cfg.blockage_mean_duration_s;
  env.traffic.r_min_low = cfg.r_min_mbps_low * 1e6;
  env.traffic.r_min_high = cfg.r_min_mbps_high * 1e6;
  env.traffic.per_step = cfg.traffic_per_step;
  env.reward.see_ref = cfg.see_ref;
  env.reward.w_ee = cfg.w_ee;
  env.reward.w_jain = cfg.w_jain;
  env.reward.lambda_qos = cfg.lambda_qos;
  env.reward.lambda_power = cfg.lambda_power;
  env.dt = cfg.dt_s;
  env.user_height_min = cfg.user_height_min;
  env.user_height_max = cfg.user_height_max;
  return env;
}

TrainerConfig make_trainer_config(const ExperimentConfig& cfg) {
  TrainerConfig t;
  t.episodes = cfg.episodes;
  t.steps_per_episode = cfg.steps_per_episode;
  t.buffer_capacity = static_cast<std::size_t>(cfg.buffer_capacity);
  t.batch_size = cfg.batch_size;
  t.gamma = cfg.gamma;
  t.tau = cfg.tau;
  t.target_update_per_episode = cfg.target_update_per_episode;
  t.actor_lr = cfg.actor_lr;
  t.critic_lr = cfg.critic_lr;
  t.sigma0 = cfg.sigma0;
  t.sigma_decay = cfg.sigma_decay;
  t.sigma_min = cfg.sigma_min;
  t.grad_clip = cfg.grad_clip;
  t.hidden_power_actor = cfg.hidden_power_actor;
  t.hidden_angle_actor = cfg.hidden_angle_actor;
  t.hidden_critic = cfg.hidden_critic;
  if (!cfg.fixed_alpha.empty()) {
    t.fixed_alpha.resize(static_cast<Eigen::Index>(cfg.fixed_alpha.size()));
    for (std::size_t i = 0; i < cfg.fixed_alpha.size(); ++i)
      t.fixed_alpha(static_cast<Eigen::Index>(i)) = cfg.fixed_alpha[i];
  }
  return t;
}

}  // namespace vlcnet
