#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlcnet/environment.hpp"
#include "vlcnet/trainer.hpp"

namespace vlcnet {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Scheme {
  TwoAgent,
  SingleAgentDdpg,
  RandomIrs,
  NoIrs,
  FixedPower,
  DqnCodebook
};

Scheme scheme_from_string(const std::string& s);
std::string scheme_to_string(Scheme s);

/// Everything an experiment run needs; every field has a default matching
/// the reference setup, so an empty file is a valid configuration.
struct ExperimentConfig {
  // scene
  double room_x = 5.0, room_y = 5.0, room_z = 3.0;
  int aps = 4;
  double ap_half_power_deg = 60.0;
  int users = 5;
  double user_height_min = 0.8, user_height_max = 1.2;
  double detector_area_m2 = 1e-4;
  double detector_fov_deg = 85.0;
  double detector_responsivity = 0.5;
  std::vector<double> detector_azimuths_deg{0.0};
  std::vector<double> detector_elevations_deg{90.0};
  int irs_rows = 7, irs_cols = 7;
  double irs_element_width_m = 0.25, irs_element_height_m = 0.15;
  double irs_spacing_m = 0.10;
  std::string irs_wall = "y0";
  double irs_center_height_m = 1.5;
  double irs_reflectance = 0.95;
  double optical_filter_gain = 1.0;
  double refractive_index = 1.5;
  // link
  double p_opt_w = 2.0;
  double conversion_q = 1.0;
  double bandwidth_hz = 20e6;
  double noise_psd = 1e-21;
  double p_max_w = 5.0;
  // power model, milliwatts as quoted by the reference figures
  double circuit_tx_mw = 3250.0, led_mw = 2758.0, amplifier_mw = 280.0,
         filter_tx_mw = 2.5, dac_mw = 175.0;
  double element_mw = 100.0;
  double circuit_rx_mw = 1.9, filter_rx_mw = 2.5, tia_mw = 2500.0, adc_mw = 95.0;
  bool power_per_device = true;
  bool power_charge_all_mirrors = true;
  // environment
  double dt_s = 0.1;
  double r_min_mbps_low = 1.0, r_min_mbps_high = 1.0;
  bool traffic_per_step = false;
  double blockage_probability = 0.1;
  double blockage_mean_duration_s = 2.0;
  double speed_min_mps = 0.0, speed_max_mps = 2.0;
  double pause_max_s = 1.0;
  double see_ref = 1e7;
  double w_ee = 1.0, w_jain = 1.0;
  double lambda_qos = 1.0, lambda_power = 1.0;
  // agents
  int episodes = 2000;
  int steps_per_episode = 100;
  long buffer_capacity = 100000;
  int batch_size = 128;
  double gamma = 0.99;
  double tau = 0.001;
  bool target_update_per_episode = false;
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  double sigma0 = 0.2, sigma_decay = 0.9999, sigma_min = 0.01;
  double grad_clip = 1.0;
  int hidden_power_actor = 128;
  int hidden_angle_actor = 64;
  int hidden_critic = 256;
  // run
  std::vector<std::uint64_t> seeds{1};
  std::string scheme = "two_agent";
  int checkpoint_interval = 100;
  int eval_episodes = 50;
  int jobs = 0;  // 0 = hardware concurrency
  long max_sweep_cells = 512;
  // baselines
  std::vector<double> fixed_alpha;  // empty = uniform
  int dqn_power_profiles = 8;
  int dqn_angle_presets = 8;
  // oracle
  int oracle_alpha_divisions = 20;
  int oracle_angle_points = 9;
  long oracle_max_combinations = 1000000;
};

/// Parses `key = value` lines ('#' starts a comment). Unknown keys and
/// malformed values are hard errors naming the key.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

/// Applies one `key=value` override in place.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// Every key with its current value, one per line, fixed order; parsing the
/// output reproduces the configuration.
std::string resolved_config(const ExperimentConfig& cfg);

/// Cross-field validation; throws ConfigError naming the offending key.
void validate(const ExperimentConfig& cfg);

EnvConfig make_env_config(const ExperimentConfig& cfg);
TrainerConfig make_trainer_config(const ExperimentConfig& cfg);

}  // namespace vlcnet
