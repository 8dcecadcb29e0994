#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <variant>

#include "narsrl/harness/metrics.hpp"
#include "narsrl/harness/runner.hpp"
#include "narsrl/ona.hpp"

using namespace narsrl;
namespace fs = std::filesystem;

namespace {

OnaProcessConfig fake_config(std::vector<std::string> extra_args = {}) {
  OnaProcessConfig cfg;
  cfg.binary_path = FAKE_ONA_BIN;
  cfg.startup_args = {"shell"};
  for (auto& a : extra_args) cfg.startup_args.push_back(std::move(a));
  cfg.op_names = {"^left", "^down", "^right", "^up"};
  cfg.read_timeout_ms = 50;
  return cfg;
}

std::vector<std::string> sent_lines(const OnaBridge& bridge) {
  std::vector<std::string> out;
  for (const WireEntry& e : bridge.wire_log())
    if (e.dir == WireEntry::Dir::sent) out.push_back(e.line);
  return out;
}

ExperimentConfig ona_experiment(std::vector<std::string> fake_args, long steps) {
  ExperimentConfig cfg;
  cfg.env.name = "frozenlake";
  cfg.env.map = {"SG"};  // one step to the right reaches the goal
  cfg.agent_kind = AgentKind::ona;
  cfg.ona = fake_config(std::move(fake_args));
  cfg.trials = 1;
  cfg.steps = steps;
  cfg.base_seed = 0;
  cfg.output_dir = "-";
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  OnaProcessConfig cfg = fake_config();
  cfg.op_names = {};
  CHECK_THROWS(cfg.validate());
  cfg = fake_config();
  cfg.op_names = {"^a", "^a"};
  CHECK_THROWS(cfg.validate());
  cfg = fake_config();
  cfg.read_timeout_ms = 0;
  CHECK_THROWS(cfg.validate());
  cfg = fake_config();
  cfg.motorbabbling = 1.2;
  CHECK_THROWS(cfg.validate());
  fake_config().validate();
}

TEST_CASE("handshake matches the pinned transcript") {
  auto bridge = OnaBridge::start(fake_config());
  const std::string fixture =
      read_file(std::string(TEST_FIXTURE_DIR) + "/handshake_frozenlake4x4.txt");
  std::string wire;
  for (const std::string& line : sent_lines(*bridge)) wire += line + "\n";
  CHECK(wire == fixture);
}

TEST_CASE("motorbabbling override extends the handshake") {
  OnaProcessConfig cfg = fake_config();
  cfg.motorbabbling = 0.1;
  auto bridge = OnaBridge::start(cfg);
  const auto sent = sent_lines(*bridge);
  REQUIRE(sent.size() == 6);
  CHECK(sent[4] == "*babblingops=4");
  CHECK(sent[5] == "*motorbabbling=0.1");
}

TEST_CASE("missing binary is unavailable, not lost") {
  OnaProcessConfig cfg = fake_config();
  cfg.binary_path = "/nonexistent/ona";
  CHECK_THROWS_AS(OnaBridge::start(cfg), BridgeUnavailable);

  OnaProcessConfig dead = fake_config({"quit-now"});
  CHECK_THROWS_AS(OnaBridge::start(dead), BridgeUnavailable);
}

TEST_CASE("step exchange turns execution reports into decisions") {
  auto bridge = OnaBridge::start(fake_config({"fixed", "3"}));
  bridge->begin_episode();
  const Decision d = bridge->step_exchange("0", false);
  REQUIRE(std::holds_alternative<Chosen>(d));
  CHECK(std::get<Chosen>(d).op == 2);  // ^right is the third registered op

  const auto sent = sent_lines(*bridge);
  CHECK(sent[sent.size() - 2] == "0. :|:");
  CHECK(sent.back() == "G! :|:");
}

TEST_CASE("silent shell means no suggestion") {
  auto bridge = OnaBridge::start(fake_config());
  bridge->begin_episode();
  CHECK(std::holds_alternative<NoSuggestion>(bridge->step_exchange("0", false)));
}

TEST_CASE("goal_reached flag and notify_goal put G events on the wire") {
  auto bridge = OnaBridge::start(fake_config());
  bridge->begin_episode();
  bridge->step_exchange("5", true);
  auto sent = sent_lines(*bridge);
  REQUIRE(sent.size() >= 3);
  CHECK(sent[sent.size() - 3] == "5. :|:");
  CHECK(sent[sent.size() - 2] == "G. :|:");
  CHECK(sent.back() == "G! :|:");

  bridge->notify_goal();
  CHECK(sent_lines(*bridge).back() == "G. :|:");
}

TEST_CASE("goal reissue cadence") {
  SUBCASE("every step") {
    auto bridge = OnaBridge::start(fake_config());
    bridge->begin_episode();
    for (int i = 0; i < 3; ++i) bridge->step_exchange(std::to_string(i), false);
    int goals = 0;
    for (const auto& l : sent_lines(*bridge)) goals += l == "G! :|:";
    CHECK(goals == 3);
  }
  SUBCASE("every other step") {
    OnaProcessConfig cfg = fake_config();
    cfg.goal_reissue_steps = 2;
    auto bridge = OnaBridge::start(cfg);
    bridge->begin_episode();
    for (int i = 0; i < 4; ++i) bridge->step_exchange(std::to_string(i), false);
    int goals = 0;
    for (const auto& l : sent_lines(*bridge)) goals += l == "G! :|:";
    CHECK(goals == 2);
  }
  SUBCASE("once per episode") {
    OnaProcessConfig cfg = fake_config();
    cfg.goal_reissue_steps = 0;
    auto bridge = OnaBridge::start(cfg);
    bridge->begin_episode();
    for (int i = 0; i < 3; ++i) bridge->step_exchange(std::to_string(i), false);
    bridge->begin_episode();
    bridge->step_exchange("0", false);
    int goals = 0;
    for (const auto& l : sent_lines(*bridge)) goals += l == "G! :|:";
    CHECK(goals == 2);
  }
}

TEST_CASE("wire determinism across bridge instances") {
  auto a = OnaBridge::start(fake_config({"fixed", "1"}));
  auto b = OnaBridge::start(fake_config({"fixed", "1"}));
  a->begin_episode();
  b->begin_episode();
  for (int i = 0; i < 5; ++i) {
    a->step_exchange(std::to_string(i), i == 2);
    b->step_exchange(std::to_string(i), i == 2);
  }
  CHECK(sent_lines(*a) == sent_lines(*b));
}

TEST_CASE("dead shell mid-run raises BridgeLost") {
  auto bridge = OnaBridge::start(fake_config({"die"}));
  bridge->begin_episode();
  auto drive = [&] {
    for (int i = 0; i < 50; ++i) bridge->step_exchange("0", false);
  };
  CHECK_THROWS_AS(drive(), BridgeLost);
}

TEST_CASE("ona trial: every step sends one event and one goal line") {
  const ExperimentConfig cfg = ona_experiment({}, 40);
  auto env = make_env(cfg.env);
  auto agent = make_trial_agent(cfg, env->spec());
  const TrialResult res = run_trial_loop(cfg, 0, *env, *agent);
  REQUIRE(res.rows.size() == 40);
  CHECK(!res.aborted);
  CHECK(res.ona_banner == "fake ona shell ready");

  const auto& bridge = dynamic_cast<const OnaTrialAgent&>(*agent).bridge();
  long events = 0, goals = 0, achieved = 0;
  for (const WireEntry& e : bridge.wire_log()) {
    if (e.dir != WireEntry::Dir::sent) continue;
    if (e.line == "G! :|:") ++goals;
    else if (e.line == "G. :|:") ++achieved;
    else if (e.line.find(". :|:") != std::string::npos) ++events;
    // Rewards never cross this boundary in any encoding.
    CHECK(e.line.find("reward") == std::string::npos);
  }
  CHECK(events == 40);
  CHECK(goals == 40);
  CHECK(achieved == res.rows.back().success_cum);

  // All decisions were fallbacks: the silent shell never suggested anything.
  CHECK(res.rows.back().random_cum == 40);
  CHECK(res.rows.back().nonrandom_cum == 0);
}

TEST_CASE("ona trial with a decisive shell counts nonrandom steps") {
  const ExperimentConfig cfg = ona_experiment({"fixed", "3"}, 30);
  auto env = make_env(cfg.env);
  auto agent = make_trial_agent(cfg, env->spec());
  const TrialResult res = run_trial_loop(cfg, 0, *env, *agent);
  REQUIRE(res.rows.size() == 30);

  // ^right succeeds immediately on the SG strip, every single episode.
  CHECK(res.rows.back().success_cum == 30);
  CHECK(res.rows.back().nonrandom_cum == 30);
  CHECK(res.rows.back().random_cum == 0);

  const auto& bridge = dynamic_cast<const OnaTrialAgent&>(*agent).bridge();
  long achieved = 0;
  for (const WireEntry& e : bridge.wire_log())
    achieved += e.dir == WireEntry::Dir::sent && e.line == "G. :|:";
  CHECK(achieved == 30);
}

TEST_CASE("bridge loss mid-experiment aborts the trial with partial rows") {
  const ExperimentConfig cfg = ona_experiment({"die"}, 100);
  auto env = make_env(cfg.env);
  auto agent = make_trial_agent(cfg, env->spec());
  const TrialResult res = run_trial_loop(cfg, 0, *env, *agent);
  CHECK(res.aborted);
  CHECK(!res.abort_reason.empty());
  CHECK(res.rows.size() < 100);
}

TEST_CASE("unavailable binary skips the whole experiment with a reason") {
  ExperimentConfig cfg = ona_experiment({}, 10);
  cfg.ona.binary_path = "/nonexistent/ona";
  const fs::path dir =
      fs::temp_directory_path() / ("narsrl_ona_skip_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  cfg.output_dir = dir.string();
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.skipped);
  CHECK(res.skip_reason.find("/nonexistent/ona") != std::string::npos);
  CHECK(res.csv_paths.empty());
  const std::string manifest = read_file(res.manifest_path);
  CHECK(manifest.find("\"skipped\": true") != std::string::npos);
  fs::remove_all(dir);
}
