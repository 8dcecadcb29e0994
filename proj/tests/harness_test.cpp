#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <type_traits>

#include "narsrl/harness/aggregate.hpp"
#include "narsrl/harness/config.hpp"
#include "narsrl/harness/plot.hpp"
#include "narsrl/harness/runner.hpp"
#include "narsrl/harness/sweep.hpp"

using namespace narsrl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() /
                     ("narsrl_harness_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

const char* kLakeConfig =
    "[env]\n"
    "name = frozenlake4x4\n"
    "slippery = false\n"
    "\n"
    "[agent]\n"
    "type = qlearning\n"
    "alpha = 0.7\n"
    "gamma = 0.618\n"
    "\n"
    "[experiment]\n"
    "trials = 2\n"
    "steps = 2000\n"
    "base_seed = 5\n"
    "output_dir = %s\n";

std::string lake_config(const fs::path& dir) {
  std::string text = kLakeConfig;
  text.replace(text.find("%s"), 2, dir.string());
  return text;
}

}  // namespace

TEST_CASE("ini parsing") {
  const IniDoc doc = parse_ini(
      "# comment\n"
      "[env]\n"
      "name = taxi  ; trailing note\n"
      "\n"
      "[agent]\n"
      "type=qlearning\n");
  REQUIRE(doc.sections.size() == 2);
  CHECK(doc.sections[0].first == "env");
  CHECK(doc.sections[0].second[0] == std::pair<std::string, std::string>{"name", "taxi"});
  CHECK(doc.find("agent") != nullptr);
  CHECK(doc.find("missing") == nullptr);

  CHECK_THROWS(parse_ini("key_without_section = 1\n"));
  CHECK_THROWS(parse_ini("[a]\nx = 1\nx = 2\n"));
  CHECK_THROWS(parse_ini("[a]\n[a]\n"));
  CHECK_THROWS(parse_ini("[a]\nnot a pair\n"));
  CHECK_THROWS(parse_ini("[unclosed\n"));
}

TEST_CASE("experiment config happy path") {
  const ExperimentConfig cfg = parse_experiment_config(
      "[env]\n"
      "name = frozenlake\n"
      "map = SFFF FHFH FFFH HFFG\n"
      "slippery = true\n"
      "truncation = 64\n"
      "[agent]\n"
      "type = nars\n"
      "motorbabbling = 0.3\n"
      "capacity = 50\n"
      "[experiment]\n"
      "trials = 4\n"
      "steps = 1234\n"
      "base_seed = 9\n"
      "output_dir = /tmp/x\n");
  CHECK(cfg.env.name == "frozenlake");
  CHECK(cfg.env.map == std::vector<std::string>{"SFFF", "FHFH", "FFFH", "HFFG"});
  CHECK(cfg.env.slippery);
  CHECK(cfg.env.truncation == 64);
  CHECK(cfg.agent_kind == AgentKind::nars);
  CHECK(cfg.nars.motorbabbling == 0.3);
  CHECK(cfg.nars.capacity == 50);
  CHECK(cfg.nars.k == 1.0);  // untouched default
  CHECK(cfg.trials == 4);
  CHECK(cfg.steps == 1234);
  CHECK(cfg.base_seed == 9);
}

TEST_CASE("config rejects what it does not know") {
  auto base = [](const std::string& env_extra, const std::string& agent_extra) {
    return "[env]\nname = taxi\n" + env_extra +
           "[agent]\ntype = qlearning\n" + agent_extra +
           "[experiment]\ntrials = 1\nsteps = 10\noutput_dir = /tmp/x\n";
  };
  CHECK_THROWS_WITH_AS(parse_experiment_config(base("warp = 1\n", "")),
                       doctest::Contains("unknown key 'warp'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_experiment_config(base("", "capacity = 9\n")),
                       doctest::Contains("unknown key 'capacity'"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_experiment_config(base("slippery = true\n", "")),
                       doctest::Contains("slippery"), std::invalid_argument);
  CHECK_THROWS(parse_experiment_config(base("", "") + "[extra]\nx = 1\n"));
  CHECK_THROWS(parse_experiment_config(
      "[env]\nname = taxi\n[agent]\ntype = sarsa\n"
      "[experiment]\ntrials = 1\nsteps = 10\noutput_dir = /tmp/x\n"));
  // flappy keys are fenced to flappybird
  CHECK_THROWS(parse_experiment_config(base("gravity = 0.1\n", "")));
}

TEST_CASE("ona binary path falls back to the environment variable") {
  const std::string text =
      "[env]\nname = frozenlake4x4\n[agent]\ntype = ona\n"
      "[experiment]\ntrials = 1\nsteps = 10\noutput_dir = /tmp/x\n";
  ::unsetenv("NARS_RL_ONA_BIN");
  CHECK_THROWS(parse_experiment_config(text));
  ::setenv("NARS_RL_ONA_BIN", "/opt/ona/NAR", 1);
  const ExperimentConfig cfg = parse_experiment_config(text);
  CHECK(cfg.ona.binary_path == "/opt/ona/NAR");
  ::unsetenv("NARS_RL_ONA_BIN");

  // An explicit path wins over the variable.
  ::setenv("NARS_RL_ONA_BIN", "/opt/ona/NAR", 1);
  const ExperimentConfig cfg2 = parse_experiment_config(
      "[env]\nname = frozenlake4x4\n[agent]\ntype = ona\nbinary_path = /usr/bin/nar\n"
      "[experiment]\ntrials = 1\nsteps = 10\noutput_dir = /tmp/x\n");
  CHECK(cfg2.ona.binary_path == "/usr/bin/nar");
  ::unsetenv("NARS_RL_ONA_BIN");
}

TEST_CASE("metrics csv round-trip") {
  std::vector<MetricRow> rows(3);
  rows[0] = {0, 0, 0, false, std::nullopt, std::nullopt, 0, 1, 0};
  rows[1] = {0, 1, 0, true, -1.0, -104.0, 0, 1, 1};
  rows[2] = {0, 2, 1, false, std::nullopt, std::nullopt, 0, 2, 1};

  const std::string csv = metrics_to_csv(rows);
  const auto first_line = csv.substr(0, csv.find('\n'));
  CHECK(first_line == kMetricsHeader);
  CHECK(csv.find("0,1,0,episode_end,-1,-104,0,1,1\n") != std::string::npos);
  CHECK(metrics_from_csv(csv) == rows);

  CHECK_THROWS(metrics_from_csv("bogus header\n0,0,0,step,,,0,0,0\n"));
  CHECK_THROWS(metrics_from_csv(std::string(kMetricsHeader) + "\n0,0,0,step,,\n"));
  CHECK_THROWS(metrics_from_csv(std::string(kMetricsHeader) + "\n0,0,0,weird,,,0,0,0\n"));
}

TEST_CASE("trial rows satisfy the accounting invariants") {
  const fs::path dir = fresh_dir("inv");
  const ExperimentConfig cfg = parse_experiment_config(lake_config(dir));
  const TrialResult res = run_trial(cfg, 0);
  CHECK(!res.aborted);
  REQUIRE(res.rows.size() == 2000);

  long episode = 0, success = 0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const MetricRow& row = res.rows[i];
    CHECK(row.trial == 0);
    CHECK(row.step == static_cast<long>(i));
    CHECK(row.random_cum + row.nonrandom_cum == row.step + 1);
    CHECK(row.success_cum >= success);
    success = row.success_cum;
    CHECK(row.episode >= episode);
    CHECK(row.episode - episode <= 1);
    episode = row.episode;
    if (row.episode_end) {
      CHECK(row.reward.has_value());
      CHECK(row.episode_return.has_value());
    } else {
      CHECK(!row.reward.has_value());
      CHECK(!row.episode_return.has_value());
    }
  }
  CHECK(success > 0);  // 2000 random-ish steps on the small lake find the goal
}

namespace {
// Replays a fixed action sequence from each episode start.
class ScriptedAgent final : public TrialAgent {
 public:
  explicit ScriptedAgent(std::vector<ActionId> moves) : moves_(std::move(moves)) {}
  Decision decide(StateId, const std::string&, Rng&) override {
    return Chosen{moves_[i_++ % moves_.size()]};
  }
  void transition(StateId, ActionId, StateId, const std::string&, bool, bool,
                  bool) override {}
  void episode_start(StateId, const std::string&) override { i_ = 0; }
  void episode_end() override {}
  void dump(std::ostream&) const override { throw std::logic_error("no dump"); }

 private:
  std::vector<ActionId> moves_;
  std::size_t i_ = 0;
};
}  // namespace

TEST_CASE("cliff teleports surface in episode_return only") {
  ExperimentConfig cfg;
  cfg.env.name = "cliffwalking";
  cfg.trials = 1;
  cfg.steps = 140;
  cfg.base_seed = 5;
  auto env = make_env(cfg.env);
  // One deliberate fall (right off the start), then the 13-step optimal
  // path: up, right x11, down. 14 steps per episode, return -113.
  ScriptedAgent agent({1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2});
  const TrialResult res = run_trial_loop(cfg, 0, *env, agent);

  long ends = 0;
  for (const MetricRow& row : res.rows) {
    if (!row.episode_end) {
      CHECK(!row.reward.has_value());  // the -100 never makes a step row
      continue;
    }
    ++ends;
    CHECK(row.reward == -1.0);  // terminal step reward, not the fall
    CHECK(row.episode_return == -113.0);
  }
  CHECK(ends == 10);
}

TEST_CASE("reward flows only into agents that declare a reward port") {
  static_assert(std::is_base_of_v<RewardConsumer, QTrialAgent>);
  static_assert(!std::is_base_of_v<RewardConsumer, NarsTrialAgent>);
  static_assert(!std::is_base_of_v<RewardConsumer, OnaTrialAgent>);

  NarsTrialAgent nars(NarsConfig{}, 4);
  CHECK(dynamic_cast<RewardConsumer*>(static_cast<TrialAgent*>(&nars)) == nullptr);
  QTrialAgent q(QHyperParams{}, 4);
  CHECK(dynamic_cast<RewardConsumer*>(static_cast<TrialAgent*>(&q)) != nullptr);
}

TEST_CASE("experiment reruns are byte-identical") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");

  ExperimentConfig ca = parse_experiment_config(lake_config(a));
  ExperimentResult ra = run_experiment(ca);
  ExperimentConfig cb = parse_experiment_config(lake_config(b));
  ExperimentResult rb = run_experiment(cb);

  REQUIRE(ra.csv_paths.size() == 2);
  REQUIRE(rb.csv_paths.size() == 2);
  for (std::size_t i = 0; i < ra.csv_paths.size(); ++i)
    CHECK(read_file(ra.csv_paths[i]) == read_file(rb.csv_paths[i]));

  // Manifests differ only in the output path they echo.
  std::string ma = read_file(ra.manifest_path);
  std::string mb = read_file(rb.manifest_path);
  const auto scrub = [](std::string s, const std::string& dir) {
    for (std::size_t at; (at = s.find(dir)) != std::string::npos;)
      s.replace(at, dir.size(), "DIR");
    return s;
  };
  CHECK(scrub(ma, a.string()) == scrub(mb, b.string()));
  CHECK(ma.find("\"version\"") != std::string::npos);
  CHECK(ma.find("\"trial_seeds\": [") != std::string::npos);
  CHECK(ma.find("5,") != std::string::npos);  // base_seed + 0
  CHECK(ma.find("time") == std::string::npos);

  // Distinct trials explore differently.
  CHECK(read_file(ra.csv_paths[0]) != read_file(ra.csv_paths[1]));

  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("episode seeds differ across trials and episodes") {
  CHECK(episode_seed(5, 0) != episode_seed(5, 1));
  CHECK(episode_seed(5, 0) != episode_seed(6, 0));
  CHECK(episode_seed(5, 3) == episode_seed(5, 3));
}

TEST_CASE("aggregation: mean, std and carry-forward") {
  std::vector<MetricRow> t0(3), t1(3);
  for (long i = 0; i < 3; ++i) {
    t0[i] = {0, i, 0, false, std::nullopt, std::nullopt, 2, i + 1, 0};
    t1[i] = {1, i, 0, false, std::nullopt, std::nullopt, 4, i + 1, 0};
  }
  t0[1].episode_end = true;
  t0[1].reward = 1.0;
  t0[1].episode_return = 3.0;
  t1[1].episode_end = true;
  t1[1].reward = 0.0;
  t1[1].episode_return = 1.0;

  const AggregateSeries agg = aggregate({t0, t1});
  CHECK(agg.steps == std::vector<long>{0, 1, 2});

  const auto& [succ_mean, succ_std] = agg.metrics.at("success_cum");
  CHECK(succ_mean == std::vector<double>{3.0, 3.0, 3.0});
  CHECK(succ_std == std::vector<double>{1.0, 1.0, 1.0});  // population std

  const auto& [rew_mean, rew_std] = agg.metrics.at("reward");
  CHECK(rew_mean[0] == 0.0);  // nothing to carry yet
  CHECK(rew_mean[1] == 0.5);
  CHECK(rew_mean[2] == 0.5);  // carried forward
  CHECK(rew_std[1] == 0.5);

  const auto& [ret_mean, ret_std] = agg.metrics.at("episode_return");
  CHECK(ret_mean == std::vector<double>{0.0, 2.0, 2.0});
  CHECK(ret_std[1] == 1.0);

  CHECK_THROWS(aggregate({}));
  std::vector<MetricRow> shorter(t1.begin(), t1.begin() + 2);
  CHECK_THROWS(aggregate({t0, shorter}));
  std::vector<MetricRow> shifted = t1;
  shifted[2].step = 7;
  CHECK_THROWS(aggregate({t0, shifted}));
}

TEST_CASE("aggregate csv layout") {
  std::vector<MetricRow> row(1);
  row[0] = {0, 0, 0, false, std::nullopt, std::nullopt, 0, 1, 0};
  const std::string csv = aggregate_to_csv(aggregate({row}));
  CHECK(csv.substr(0, csv.find('\n')) ==
        "step,reward_mean,reward_std,episode_return_mean,episode_return_std,"
        "success_cum_mean,success_cum_std,random_cum_mean,random_cum_std,"
        "nonrandom_cum_mean,nonrandom_cum_std");
  CHECK(csv.find("\n0,0,0,0,0,0,0,1,0,0,0\n") != std::string::npos);
}

TEST_CASE("aggregate_dir reads the experiment output") {
  const fs::path dir = fresh_dir("aggdir");
  run_experiment(parse_experiment_config(lake_config(dir)));
  const AggregateSeries agg = aggregate_dir(dir.string());
  CHECK(agg.steps.size() == 2000);
  CHECK(agg.metrics.at("random_cum").first[0] == 1.0);
  CHECK_THROWS(aggregate_dir((dir / "nope").string()));
  fs::remove_all(dir);
}

TEST_CASE("plot svg structure") {
  std::vector<MetricRow> t0(5), t1(5);
  for (long i = 0; i < 5; ++i) {
    t0[i] = {0, i, 0, false, std::nullopt, std::nullopt, i, i + 1, 0};
    t1[i] = {1, i, 0, false, std::nullopt, std::nullopt, 2 * i, i + 1, 0};
  }
  std::vector<std::pair<std::string, AggregateSeries>> series;
  series.emplace_back("q<lake>", aggregate({t0, t1}));
  series.emplace_back("nars", aggregate({t0}));

  const std::string svg = render_plot_svg(series, "success_cum");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("Time steps") != std::string::npos);
  CHECK(svg.find("success_cum") != std::string::npos);
  CHECK(svg.find("q&lt;lake&gt;") != std::string::npos);
  CHECK(svg.find("nars") != std::string::npos);

  std::size_t polylines = 0, polygons = 0;
  for (std::size_t at = 0; (at = svg.find("<polyline", at)) != std::string::npos; ++at)
    ++polylines;
  for (std::size_t at = 0; (at = svg.find("<polygon", at)) != std::string::npos; ++at)
    ++polygons;
  CHECK(polylines >= 2);  // one mean line per series (legend may add more)
  CHECK(polygons == 2);   // one band per series

  CHECK_THROWS(render_plot_svg(series, "steps_per_second"));
  CHECK_THROWS(render_plot_svg({}, "reward"));
}

TEST_CASE("sweep ranks combinations and normalizes per env") {
  SweepSpec spec;
  spec.env_names = {"frozenlake4x4"};
  spec.alpha = {0.7, 0.05};
  spec.gamma = {0.618};
  spec.eps_max = {1.0};
  spec.eps_min = {0.01};
  spec.decay = {0.01};
  spec.trials = 2;
  spec.steps = 1500;
  spec.base_seed = 3;
  spec.output_dir = "-";

  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].score >= rows[1].score);
  CHECK(rows[0].score == 1.0);  // the best combination defines the scale
  for (const SweepRow& r : rows) {
    CHECK(r.score >= 0.0);
    CHECK(r.score <= 1.0);
    CHECK(r.env_mean_success.count("frozenlake4x4") == 1);
  }

  const std::string csv = sweep_ranking_csv(spec, rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "rank,alpha,gamma,eps_max,eps_min,decay,score,"
        "frozenlake4x4_mean_success");
  CHECK(csv.find("\n1,") != std::string::npos);
}

TEST_CASE("sweep config parsing") {
  const SweepSpec spec = parse_sweep_config(
      "[sweep]\n"
      "envs = frozenlake4x4 cliffwalking\n"
      "alpha = 0.5 0.7\n"
      "trials = 2\n"
      "steps = 100\n"
      "output_dir = /tmp/sweep\n");
  CHECK(spec.env_names == std::vector<std::string>{"frozenlake4x4", "cliffwalking"});
  CHECK(spec.alpha == std::vector<double>{0.5, 0.7});
  CHECK(spec.gamma == std::vector<double>{0.618});  // default grid point
  CHECK_THROWS(parse_sweep_config("[sweep]\nenvs = mars\noutput_dir = /tmp/x\n"));
  CHECK_THROWS(parse_sweep_config("[sweep]\nwarp = 1\n"));
}

TEST_CASE("nars trial runs keep counters conserved without rewards") {
  const fs::path dir = fresh_dir("narstrial");
  std::string text = lake_config(dir);
  text.replace(text.find("type = qlearning\nalpha = 0.7\ngamma = 0.618\n"),
               std::string("type = qlearning\nalpha = 0.7\ngamma = 0.618\n").size(),
               "type = nars\n");
  const ExperimentConfig cfg = parse_experiment_config(text);
  const TrialResult res = run_trial(cfg, 1);
  REQUIRE(res.rows.size() == 2000);
  for (const MetricRow& row : res.rows)
    CHECK(row.random_cum + row.nonrandom_cum == row.step + 1);
  CHECK(res.rows.back().success_cum > 0);
  CHECK(res.rows.back().nonrandom_cum > 0);  // learned choices do appear
}
