#include "narsrl/ona.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <set>

#include "narsrl/format.hpp"
#include "narsrl/narsese.hpp"

namespace narsrl {

LineProcess::LineProcess(const std::string& binary,
                         const std::vector<std::string>& args) {
  ::signal(SIGPIPE, SIG_IGN);
  if (::access(binary.c_str(), X_OK) != 0)
    throw BridgeUnavailable("not an executable: " + binary);

  int to_child[2];
  int from_child[2];
  if (::pipe(to_child) != 0) throw BridgeUnavailable("pipe failed");
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw BridgeUnavailable("pipe failed");
  }

  pid_ = ::fork();
  if (pid_ < 0) throw BridgeUnavailable("fork failed");
  if (pid_ == 0) {
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_WRONLY);
    if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(binary.c_str()));
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execv(binary.c_str(), argv.data());
    ::_exit(127);
  }
  ::close(to_child[0]);
  ::close(from_child[1]);
  in_fd_ = to_child[1];
  out_fd_ = from_child[0];
}

LineProcess::~LineProcess() {
  if (in_fd_ >= 0) ::close(in_fd_);
  if (out_fd_ >= 0) ::close(out_fd_);
  if (pid_ > 0) {
    // stdin EOF normally ends the child; escalate if it lingers.
    for (int i = 0; i < 20; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) != 0) return;
      if (i == 4) ::kill(pid_, SIGTERM);
      ::usleep(10 * 1000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
  }
}

void LineProcess::write_line(const std::string& line) {
  std::string data = line;
  data += '\n';
  std::size_t off = 0;
  while (off < data.size()) {
    const ssize_t n = ::write(in_fd_, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BridgeLost(std::string("write failed: ") + std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::optional<std::string> LineProcess::read_line(int timeout_ms) {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }

    struct pollfd pfd = {out_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, timeout_ms);
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw BridgeLost(std::string("poll failed: ") + std::strerror(errno));
    }
    if (ready == 0) return std::nullopt;  // quiet window elapsed

    char chunk[4096];
    const ssize_t n = ::read(out_fd_, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw BridgeLost(std::string("read failed: ") + std::strerror(errno));
    }
    if (n == 0) {  // EOF; callers check eof() after their drain
      eof_ = true;
      return std::nullopt;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

bool LineProcess::running() const {
  if (pid_ <= 0) return false;
  return ::waitpid(pid_, nullptr, WNOHANG) == 0;
}

void OnaProcessConfig::validate() const {
  if (binary_path.empty()) throw std::invalid_argument("ona: binary_path missing");
  if (op_names.empty()) throw std::invalid_argument("ona: op_names must be non-empty");
  const std::set<std::string> distinct(op_names.begin(), op_names.end());
  if (distinct.size() != op_names.size())
    throw std::invalid_argument("ona: op_names must be distinct");
  if (read_timeout_ms <= 0) throw std::invalid_argument("ona: read_timeout must be > 0");
  if (motorbabbling && (*motorbabbling < 0.0 || *motorbabbling > 1.0))
    throw std::invalid_argument("ona: motorbabbling must be in [0,1]");
  if (goal_reissue_steps < 0)
    throw std::invalid_argument("ona: goal_reissue_steps must be >= 0");
}

OnaBridge::OnaBridge(const OnaProcessConfig& config) : config_(config) {}

std::unique_ptr<OnaBridge> OnaBridge::start(const OnaProcessConfig& config) {
  config.validate();
  std::unique_ptr<OnaBridge> bridge(new OnaBridge(config));
  bridge->proc_ =
      std::make_unique<LineProcess>(config.binary_path, config.startup_args);
  try {
    bridge->handshake();
  } catch (const BridgeLost& e) {
    // Dying this early is a startup failure, not a lost trial.
    throw BridgeUnavailable(e.what());
  }
  return bridge;
}

void OnaBridge::send(const std::string& line) {
  wire_log_.push_back({WireEntry::Dir::sent, line});
  proc_->write_line(line);
}

void OnaBridge::handshake() {
  for (std::size_t i = 0; i < config_.op_names.size(); ++i)
    send(narsese::emit_setopname(static_cast<int>(i) + 1, config_.op_names[i]));
  send("*babblingops=" + std::to_string(config_.op_names.size()));
  if (config_.motorbabbling)
    send("*motorbabbling=" + format_double(*config_.motorbabbling));

  // Drain whatever the shell prints at startup; only liveness matters here.
  while (auto line = proc_->read_line(config_.read_timeout_ms))
    wire_log_.push_back({WireEntry::Dir::received, *line});
  if (proc_->eof() || !proc_->running())
    throw BridgeUnavailable("ona exited during handshake: " + config_.binary_path);
}

void OnaBridge::notify_goal() {
  send(narsese::emit_event(narsese::kGoalTerm));
}

void OnaBridge::begin_episode() { steps_since_goal_issue_ = -1; }

Decision OnaBridge::step_exchange(const std::string& state_token,
                                  bool goal_reached) {
  send(narsese::emit_event(state_token));
  if (goal_reached) send(narsese::emit_event(narsese::kGoalTerm));

  bool issue = false;
  if (config_.goal_reissue_steps == 0) {
    issue = steps_since_goal_issue_ < 0;
  } else {
    issue = steps_since_goal_issue_ < 0 ||
            steps_since_goal_issue_ >= config_.goal_reissue_steps - 1;
  }
  if (issue) {
    send(narsese::emit_goal());
    steps_since_goal_issue_ = 0;
  } else {
    ++steps_since_goal_issue_;
  }
  ++step_counter_;

  std::optional<ActionId> chosen;
  while (auto line = proc_->read_line(config_.read_timeout_ms)) {
    wire_log_.push_back({WireEntry::Dir::received, *line});
    const auto parsed = narsese::parse_line(*line);
    if (const auto* report = std::get_if<narsese::ExecutionReport>(&parsed)) {
      const auto it = std::find(config_.op_names.begin(), config_.op_names.end(),
                                report->op);
      if (it != config_.op_names.end())
        chosen = static_cast<ActionId>(it - config_.op_names.begin());
    }
  }
  if ((proc_->eof() || !proc_->running()) && !chosen)
    throw BridgeLost("ona process exited mid-exchange");

  if (chosen) return Chosen{*chosen};
  return NoSuggestion{};
}

}  // namespace narsrl
