// Experiment runner: train / evaluate / sweep / oracle over the IRS-assisted
// NOMA VLC simulator. Exit codes: 0 success, 2 configuration error, 3 runtime
// failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "vlcnet/baselines.hpp"
#include "vlcnet/config.hpp"
#include "vlcnet/metrics.hpp"
#include "vlcnet/trainer.hpp"

namespace fs = std::filesystem;
using namespace vlcnet;

namespace {

struct CommonArgs {
  std::string config_path = "default";
  std::vector<std::string> overrides;
  std::vector<std::uint64_t> seeds;
  std::string out;
};

ExperimentConfig resolve_config(const CommonArgs& args) {
  ExperimentConfig cfg;
  if (args.config_path != "default") cfg = load_config_file(args.config_path);
  for (const std::string& o : args.overrides) apply_override(cfg, o);
  if (!args.seeds.empty()) cfg.seeds = args.seeds;
  validate(cfg);
  return cfg;
}

fs::path out_dir(const CommonArgs& args, const std::string& fallback_name) {
  if (!args.out.empty()) return fs::path(args.out);
  const char* root = std::getenv("VLCNET_OUT_ROOT");
  return fs::path(root ? root : "runs") / fallback_name;
}

EnvConfig scheme_env_config(const ExperimentConfig& cfg, Scheme scheme) {
  EnvConfig env = make_env_config(cfg);
  if (scheme == Scheme::NoIrs) env.scene.mirrors.clear();
  return env;
}

/// Uniform handle over the scheme trainers.
struct Runner {
  virtual ~Runner() = default;
  virtual void train(const std::function<void(const EpisodeRecord&)>& sink) = 0;
  virtual std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t seed) = 0;
  virtual void save(const std::string& path) = 0;
};

struct TwoAgentRunner : Runner {
  TwoAgentTrainer t;
  explicit TwoAgentRunner(TwoAgentTrainer trainer) : t(std::move(trainer)) {}
  void train(const std::function<void(const EpisodeRecord&)>& sink) override {
    t.train(sink);
  }
  std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t seed) override {
    return t.evaluate(episodes, seed);
  }
  void save(const std::string& path) override { t.save_checkpoint(path); }
};

struct SingleAgentRunner : Runner {
  SingleAgentTrainer t;
  explicit SingleAgentRunner(SingleAgentTrainer trainer) : t(std::move(trainer)) {}
  void train(const std::function<void(const EpisodeRecord&)>& sink) override {
    t.train(sink);
  }
  std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t seed) override {
    return t.evaluate(episodes, seed);
  }
  void save(const std::string& path) override { t.save_checkpoint(path); }
};

struct DqnRunner : Runner {
  DqnCodebookTrainer t;
  explicit DqnRunner(DqnCodebookTrainer trainer) : t(std::move(trainer)) {}
  void train(const std::function<void(const EpisodeRecord&)>& sink) override {
    t.train(sink);
  }
  std::vector<EpisodeRecord> evaluate(int episodes, std::uint64_t seed) override {
    return t.evaluate(episodes, seed);
  }
  void save(const std::string&) override {}  // DQN runs are train+evaluate in-process
};

std::unique_ptr<Runner> make_runner(const ExperimentConfig& cfg, Scheme scheme,
                                    std::uint64_t seed) {
  const EnvConfig env = scheme_env_config(cfg, scheme);
  const TrainerConfig tc = make_trainer_config(cfg);
  switch (scheme) {
    case Scheme::TwoAgent:
      return std::make_unique<TwoAgentRunner>(TwoAgentTrainer(env, tc, seed));
    case Scheme::FixedPower:
      return std::make_unique<TwoAgentRunner>(
          TwoAgentTrainer(env, tc, seed, PowerMode::Fixed));
    case Scheme::SingleAgentDdpg:
      return std::make_unique<SingleAgentRunner>(
          SingleAgentTrainer(env, tc, seed, AngleMode::Learned));
    case Scheme::RandomIrs:
      return std::make_unique<SingleAgentRunner>(
          SingleAgentTrainer(env, tc, seed, AngleMode::RandomPerEpisode));
    case Scheme::NoIrs:
      return std::make_unique<SingleAgentRunner>(
          SingleAgentTrainer(env, tc, seed, AngleMode::None));
    case Scheme::DqnCodebook:
      return std::make_unique<DqnRunner>(
          DqnCodebookTrainer(env, tc, seed, cfg.dqn_power_profiles, cfg.dqn_angle_presets));
  }
  throw std::logic_error("unhandled scheme");
}

int cmd_train(const CommonArgs& args) {
  const ExperimentConfig cfg = resolve_config(args);
  const Scheme scheme = scheme_from_string(cfg.scheme);
  const fs::path dir = out_dir(args, "train-" + cfg.scheme);
  fs::create_directories(dir);
  {
    std::ofstream rc(dir / "config.resolved");
    rc << resolved_config(cfg);
  }
  std::ofstream metrics(dir / "metrics.csv");
  write_metrics_header(metrics);
  for (const std::uint64_t seed : cfg.seeds) {
    auto runner = make_runner(cfg, scheme, seed);
    const std::string run_id = cfg.scheme + "-s" + std::to_string(seed);
    const std::string stem = (dir / ("ckpt_s" + std::to_string(seed))).string();
    runner->train([&](const EpisodeRecord& r) {
      write_metrics_row(metrics, run_id, seed, r);
      if ((r.episode + 1) % cfg.checkpoint_interval == 0 && r.episode + 1 < cfg.episodes)
        runner->save(stem + "_ep" + std::to_string(r.episode + 1) + ".bin");
    });
    runner->save(stem + "_final.bin");
  }
  std::cout << "wrote " << (dir / "metrics.csv").string() << "\n";
  return 0;
}

int cmd_evaluate(const CommonArgs& args, const std::string& checkpoint, int episodes) {
  const ExperimentConfig cfg = resolve_config(args);
  const int n_episodes = episodes > 0 ? episodes : cfg.eval_episodes;
  const std::uint64_t seed = cfg.seeds.front();

  std::ifstream probe(checkpoint, std::ios::binary);
  if (!probe) throw std::runtime_error("cannot open checkpoint: " + checkpoint);
  char magic[4] = {};
  probe.read(magic, 4);
  if (!probe) throw std::runtime_error("checkpoint too short: " + checkpoint);
  probe.close();
  const std::string tag(magic, 4);

  std::vector<EpisodeRecord> records;
  std::string scheme_name;
  if (tag == "VLCK") {
    TwoAgentTrainer t = TwoAgentTrainer::load_checkpoint(
        checkpoint, scheme_env_config(cfg, Scheme::TwoAgent), make_trainer_config(cfg));
    scheme_name = t.power_mode() == PowerMode::Fixed ? "fixed_power" : "two_agent";
    records = t.evaluate(n_episodes, seed);
  } else if (tag == "VLK1") {
    // the stored angle mode decides which env shape the nets expect
    std::ifstream in(checkpoint, std::ios::binary);
    in.seekg(8);
    std::uint8_t mode_byte = 0;
    in.read(reinterpret_cast<char*>(&mode_byte), 1);
    in.close();
    const Scheme env_scheme =
        static_cast<AngleMode>(mode_byte) == AngleMode::None ? Scheme::NoIrs
                                                             : Scheme::SingleAgentDdpg;
    SingleAgentTrainer t = SingleAgentTrainer::load_checkpoint(
        checkpoint, scheme_env_config(cfg, env_scheme), make_trainer_config(cfg));
    switch (t.angle_mode()) {
      case AngleMode::Learned: scheme_name = "single_agent_ddpg"; break;
      case AngleMode::RandomPerEpisode: scheme_name = "random_irs"; break;
      case AngleMode::None: scheme_name = "no_irs"; break;
    }
    records = t.evaluate(n_episodes, seed);
  } else {
    throw std::runtime_error("unrecognized checkpoint format: " + checkpoint);
  }

  const fs::path dir = out_dir(args, "evaluate-" + scheme_name);
  fs::create_directories(dir);
  std::ofstream out(dir / "eval.csv");
  write_metrics_header(out);
  const std::string run_id = "eval-" + scheme_name + "-s" + std::to_string(seed);
  for (const EpisodeRecord& r : records) write_metrics_row(out, run_id, seed, r);
  const EpisodeRecord mean = mean_record(records);
  std::cout << "episodes=" << n_episodes
            << " mean_sum_rate=" << format_double(mean.sum_rate)
            << " mean_see=" << format_double(mean.see_value)
            << " mean_jain=" << format_double(mean.jain_index) << "\n";
  std::cout << "wrote " << (dir / "eval.csv").string() << "\n";
  return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& axis,
              const std::vector<double>& values, std::vector<std::string> schemes,
              int jobs_flag) {
  const ExperimentConfig base = resolve_config(args);
  if (axis != "power" && axis != "mirrors" && axis != "users")
    throw ConfigError("sweep axis must be power, mirrors or users");
  if (values.empty()) throw ConfigError("sweep needs at least one axis value");
  if (schemes.empty()) schemes.push_back(base.scheme);
  for (const std::string& s : schemes) scheme_from_string(s);

  struct Cell {
    double value;
    std::string scheme;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const double v : values)
    for (const std::string& s : schemes)
      for (const std::uint64_t seed : base.seeds) cells.push_back({v, s, seed});
  if (static_cast<long>(cells.size()) > base.max_sweep_cells)
    throw ConfigError("sweep would run " + std::to_string(cells.size()) +
                      " cells; raise run.max_sweep_cells to allow this");

  auto cell_config = [&](const Cell& c) {
    ExperimentConfig cfg = base;
    cfg.scheme = c.scheme;
    cfg.seeds = {c.seed};
    if (axis == "power") {
      cfg.p_opt_w = c.value;
    } else if (axis == "mirrors") {
      const int m = static_cast<int>(c.value);
      const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
      if (side * side != m)
        throw ConfigError("mirrors axis values must be perfect squares, got " +
                          std::to_string(m));
      cfg.irs_rows = side;
      cfg.irs_cols = side;
    } else {
      cfg.users = static_cast<int>(c.value);
      cfg.fixed_alpha.clear();  // a fixed allocation cannot span user counts
    }
    validate(cfg);
    return cfg;
  };

  std::vector<SweepRecord> rows(cells.size());
  std::mutex next_mutex;
  std::size_t next = 0;
  const unsigned jobs =
      jobs_flag > 0 ? static_cast<unsigned>(jobs_flag)
                    : (base.jobs > 0 ? static_cast<unsigned>(base.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency()));
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= cells.size()) return;
        i = next++;
      }
      const Cell& c = cells[i];
      const ExperimentConfig cfg = cell_config(c);
      auto runner = make_runner(cfg, scheme_from_string(c.scheme), c.seed);
      runner->train({});
      const auto records = runner->evaluate(cfg.eval_episodes, c.seed ^ 0x5eedULL);
      const EpisodeRecord mean = mean_record(records);
      rows[i] = {axis,          c.value,        c.scheme,        c.seed,
                 mean.sum_rate, mean.see_value, mean.jain_index, mean.objective_value};
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, cells.size()); ++t)
    pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::sort(rows.begin(), rows.end(), [](const SweepRecord& a, const SweepRecord& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.scheme != b.scheme) return a.scheme < b.scheme;
    return a.seed < b.seed;
  });

  const fs::path dir = out_dir(args, "sweep-" + axis);
  fs::create_directories(dir);
  {
    std::ofstream rc(dir / "config.resolved");
    rc << resolved_config(base);
  }
  std::ofstream out(dir / "sweep.csv");
  write_sweep_header(out);
  for (const SweepRecord& r : rows) write_sweep_row(out, r);
  std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
  return 0;
}

std::string join_vector(const Eigen::VectorXd& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += format_double(v(i));
  }
  return s;
}

int cmd_oracle(const CommonArgs& args, bool dump_grid) {
  const ExperimentConfig cfg = resolve_config(args);
  EnvConfig env_cfg = make_env_config(cfg);
  Environment env(env_cfg);
  env.reset(cfg.seeds.front());

  const fs::path dir = out_dir(args, "oracle");
  fs::create_directories(dir);
  std::ofstream out(dir / "oracle.csv");
  out << "kind,objective,feasible,sum_rate,see,jain,alpha,yaw,roll\n";

  std::ofstream grid_out;
  OraclePointVisitor visitor;
  if (dump_grid) {
    grid_out.open(dir / "oracle_grid.csv");
    grid_out << "objective,feasible,alpha,yaw,roll\n";
    visitor = [&](const Eigen::VectorXd& alpha, const Eigen::VectorXd& yaw,
                  const Eigen::VectorXd& roll, double objective, bool feasible) {
      grid_out << format_double(objective) << ',' << (feasible ? 1 : 0) << ','
               << join_vector(alpha) << ',' << join_vector(yaw) << ','
               << join_vector(roll) << "\n";
    };
  }
  const OracleResult res = grid_oracle(env.scene(), env.blockage(), env.rate_floors(),
                                       env_cfg.link, env_cfg.power,
                                       cfg.oracle_alpha_divisions, cfg.oracle_angle_points,
                                       cfg.oracle_max_combinations, visitor);

  out << "optimum," << format_double(res.objective) << ',' << (res.feasible ? 1 : 0) << ','
      << format_double(res.metrics.sum_rate) << ',' << format_double(res.metrics.see_value)
      << ',' << format_double(res.metrics.jain_index) << ',' << join_vector(res.alpha)
      << ',' << join_vector(res.yaw) << ',' << join_vector(res.roll) << "\n";
  std::cout << "oracle objective=" << format_double(res.objective)
            << " feasible=" << (res.feasible ? 1 : 0) << " evaluated=" << res.evaluated
            << "\n";
  std::cout << "wrote " << (dir / "oracle.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted NOMA VLC simulator and two-agent DDPG optimizer"};
  app.require_subcommand(1);

  CommonArgs targs, eargs, sargs, oargs;
  auto add_common = [](CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "config file path or 'default'");
    cmd->add_option("--set", a.overrides, "key=value override (repeatable)");
    cmd->add_option("--seed,--seeds", a.seeds, "seed list override")->delimiter(',');
    cmd->add_option("--out", a.out, "output directory");
  };

  CLI::App* train = app.add_subcommand("train", "train a scheme and write metrics.csv");
  add_common(train, targs);

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "noise-free rollout of a saved checkpoint");
  add_common(evaluate, eargs);
  std::string checkpoint;
  int eval_episodes = 0;
  evaluate->add_option("--checkpoint", checkpoint, "trainer checkpoint file")->required();
  evaluate->add_option("--episodes", eval_episodes, "evaluation episodes");

  CLI::App* sweep = app.add_subcommand("sweep", "train/evaluate cells along an axis");
  add_common(sweep, sargs);
  std::string axis;
  std::vector<double> values;
  std::vector<std::string> schemes;
  int jobs = 0;
  sweep->add_option("--axis", axis, "power | mirrors | users")->required();
  sweep->add_option("--values", values, "axis values")->required()->delimiter(',');
  sweep->add_option("--schemes", schemes, "schemes to run")->delimiter(',');
  sweep->add_option("--jobs", jobs, "parallel cells");

  CLI::App* oracle = app.add_subcommand("oracle", "grid-search optimum on a frozen scene");
  add_common(oracle, oargs);
  bool dump_grid = false;
  oracle->add_flag("--dump-grid", dump_grid, "also write every grid point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) return cmd_train(targs);
    if (evaluate->parsed()) return cmd_evaluate(eargs, checkpoint, eval_episodes);
    if (sweep->parsed()) return cmd_sweep(sargs, axis, values, schemes, jobs);
    if (oracle->parsed()) return cmd_oracle(oargs, dump_grid);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
