#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "narsrl/nars_agent.hpp"  // Decision

namespace narsrl {

struct BridgeUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BridgeLost : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-oriented child process: blocking writes, timeout reads via poll.
class LineProcess {
 public:
  LineProcess(const std::string& binary, const std::vector<std::string>& args);
  ~LineProcess();
  LineProcess(const LineProcess&) = delete;
  LineProcess& operator=(const LineProcess&) = delete;

  void write_line(const std::string& line);

  /// Next full line, waiting at most timeout_ms for more bytes. nullopt on
  /// quiet timeout or child EOF.
  std::optional<std::string> read_line(int timeout_ms);

  /// True once the child closed its stdout. Death shows up here one poll
  /// later, while waitpid() can lag several milliseconds behind.
  bool eof() const { return eof_; }

  bool running() const;

 private:
  int pid_ = -1;
  int in_fd_ = -1;   // child stdin, write side
  int out_fd_ = -1;  // child stdout, read side
  bool eof_ = false;
  std::string buffer_;
};

struct OnaProcessConfig {
  std::string binary_path;
  std::vector<std::string> startup_args = {"shell"};
  std::optional<double> motorbabbling;
  std::vector<std::string> op_names;
  int read_timeout_ms = 50;
  // Goal re-issue cadence: every N steps; 0 = once per episode.
  int goal_reissue_steps = 1;

  void validate() const;
};

struct WireEntry {
  enum class Dir { sent, received };
  Dir dir;
  std::string line;
};

/// Speaks the stdio protocol of an ONA shell: registers ops, feeds state and
/// goal events, and turns execution-report output into decisions.
class OnaBridge {
 public:
  /// Spawns and performs the handshake. Throws BridgeUnavailable when the
  /// binary is missing or dies during startup.
  static std::unique_ptr<OnaBridge> start(const OnaProcessConfig& config);

  /// One harness step: state event, optional goal-achievement event, goal
  /// re-issue per cadence, then a drain for execution reports.
  Decision step_exchange(const std::string& state_token, bool goal_reached);

  /// Immediate "G. :|:", sent right when the env reports success so the
  /// event lands between this step's execution and the next state event.
  void notify_goal();

  void begin_episode();

  const std::vector<WireEntry>& wire_log() const { return wire_log_; }
  const OnaProcessConfig& config() const { return config_; }

 private:
  explicit OnaBridge(const OnaProcessConfig& config);
  void send(const std::string& line);
  void handshake();

  OnaProcessConfig config_;
  std::unique_ptr<LineProcess> proc_;
  std::vector<WireEntry> wire_log_;
  long step_counter_ = 0;
  long steps_since_goal_issue_ = -1;
};

}  // namespace narsrl
