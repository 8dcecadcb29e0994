#include "narsrl/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

#include "narsrl/harness/metrics.hpp"

namespace narsrl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: " + key + " expects a real, got '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: " + key + " expects an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("config: " + key + " expects true/false, got '" + v + "'");
}

/// Pulls keys out of a section and errors on anything left unclaimed.
class KeyReader {
 public:
  KeyReader(std::string section, const IniDoc::Section* entries)
      : section_(std::move(section)) {
    if (entries)
      for (const auto& [k, v] : *entries) pending_.emplace_back(k, v);
  }

  const std::string* get(const std::string& key) {
    for (auto& [k, v] : pending_)
      if (k == key) {
        value_ = v;
        pending_.erase(std::remove_if(pending_.begin(), pending_.end(),
                                      [&](const auto& p) { return p.first == key; }),
                       pending_.end());
        return &value_;
      }
    return nullptr;
  }

  void finish() const {
    if (!pending_.empty())
      throw std::invalid_argument("config: unknown key '" + pending_[0].first +
                                  "' in [" + section_ + "]");
  }

 private:
  std::string section_;
  std::vector<std::pair<std::string, std::string>> pending_;
  std::string value_;
};

}  // namespace

const IniDoc::Section* IniDoc::find(const std::string& name) const {
  for (const auto& [sec, entries] : sections)
    if (sec == name) return &entries;
  return nullptr;
}

IniDoc parse_ini(const std::string& text) {
  IniDoc doc;
  IniDoc::Section* current = nullptr;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    // A marker preceded by whitespace starts a trailing comment; markers
    // embedded in a value (no space before them) are kept.
    for (std::size_t i = 1; i < line.size(); ++i) {
      if ((line[i] == '#' || line[i] == ';') &&
          (line[i - 1] == ' ' || line[i - 1] == '\t')) {
        line = trim(line.substr(0, i));
        break;
      }
    }
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": empty section name");
      if (doc.find(name))
        throw std::invalid_argument("config: duplicate section [" + name + "]");
      doc.sections.emplace_back(name, IniDoc::Section{});
      current = &doc.sections.back().second;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    if (!current)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    for (const auto& [k, v] : *current)
      if (k == key)
        throw std::invalid_argument("config: duplicate key '" + key + "'");
    current->emplace_back(key, value);
  }
  return doc;
}

std::string to_string(AgentKind kind) {
  switch (kind) {
    case AgentKind::qlearning: return "qlearning";
    case AgentKind::nars: return "nars";
    case AgentKind::ona: return "ona";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
  if (output_dir.empty()) throw std::invalid_argument("config: output_dir missing");
  const auto& names = EnvOptions::known_names();
  if (std::find(names.begin(), names.end(), env.name) == names.end())
    throw std::invalid_argument("config: unknown env name: " + env.name);
  switch (agent_kind) {
    case AgentKind::qlearning: q.validate(); break;
    case AgentKind::nars: nars.validate(); break;
    case AgentKind::ona:
      if (ona.binary_path.empty())
        throw std::invalid_argument(
            "config: ona needs binary_path (or NARS_RL_ONA_BIN)");
      break;
  }
}

namespace {

EnvOptions read_env_section(const IniDoc& doc) {
  const auto* sec = doc.find("env");
  if (!sec) throw std::invalid_argument("config: missing [env] section");
  KeyReader r("env", sec);
  EnvOptions env;
  if (const auto* v = r.get("name")) env.name = *v;
  if (env.name.empty()) throw std::invalid_argument("config: [env] name missing");

  const bool is_lake = env.name.rfind("frozenlake", 0) == 0;
  const bool is_flappy = env.name == "flappybird";
  if (const auto* v = r.get("map")) {
    if (!is_lake)
      throw std::invalid_argument("config: map is only valid for frozenlake envs");
    env.map = split_words(*v);
  }
  if (const auto* v = r.get("slippery")) {
    if (!is_lake)
      throw std::invalid_argument("config: slippery is only valid for frozenlake envs");
    env.slippery = to_bool("slippery", *v);
  }
  if (const auto* v = r.get("truncation"))
    env.truncation = static_cast<int>(to_long("truncation", *v));

  auto flappy_real = [&](const char* key, double& field) {
    if (const auto* v = r.get(key)) {
      if (!is_flappy)
        throw std::invalid_argument(std::string("config: ") + key +
                                    " is only valid for flappybird");
      field = to_double(key, *v);
    }
  };
  flappy_real("gravity", env.flappy.gravity);
  flappy_real("flap_velocity", env.flappy.flap_velocity);
  flappy_real("scroll_speed", env.flappy.scroll_speed);
  flappy_real("gap_half_height", env.flappy.gap_half_height);
  flappy_real("pipe_spacing", env.flappy.pipe_spacing);
  flappy_real("hole_margin", env.flappy.hole_margin);
  if (const auto* v = r.get("pipes_to_pass")) {
    if (!is_flappy)
      throw std::invalid_argument("config: pipes_to_pass is only valid for flappybird");
    env.flappy.pipes_to_pass = static_cast<int>(to_long("pipes_to_pass", *v));
  }
  if (const auto* v = r.get("signed_state_mapping")) {
    if (!is_flappy)
      throw std::invalid_argument(
          "config: signed_state_mapping is only valid for flappybird");
    env.flappy.signed_state_mapping = to_bool("signed_state_mapping", *v);
  }
  r.finish();
  return env;
}

void read_agent_section(const IniDoc& doc, ExperimentConfig& cfg) {
  const auto* sec = doc.find("agent");
  if (!sec) throw std::invalid_argument("config: missing [agent] section");
  KeyReader r("agent", sec);
  const auto* type = r.get("type");
  if (!type) throw std::invalid_argument("config: [agent] type missing");

  if (*type == "qlearning") {
    cfg.agent_kind = AgentKind::qlearning;
    if (const auto* v = r.get("alpha")) cfg.q.alpha = to_double("alpha", *v);
    if (const auto* v = r.get("gamma")) cfg.q.gamma = to_double("gamma", *v);
    if (const auto* v = r.get("eps_max")) cfg.q.eps_max = to_double("eps_max", *v);
    if (const auto* v = r.get("eps_min")) cfg.q.eps_min = to_double("eps_min", *v);
    if (const auto* v = r.get("decay")) cfg.q.decay = to_double("decay", *v);
  } else if (*type == "nars") {
    cfg.agent_kind = AgentKind::nars;
    if (const auto* v = r.get("k")) cfg.nars.k = to_double("k", *v);
    if (const auto* v = r.get("motorbabbling"))
      cfg.nars.motorbabbling = to_double("motorbabbling", *v);
    if (const auto* v = r.get("decision_threshold"))
      cfg.nars.decision_threshold = to_double("decision_threshold", *v);
    if (const auto* v = r.get("max_chain_depth"))
      cfg.nars.max_chain_depth = static_cast<int>(to_long("max_chain_depth", *v));
    if (const auto* v = r.get("capacity"))
      cfg.nars.capacity = static_cast<int>(to_long("capacity", *v));
    if (const auto* v = r.get("anticipation_window"))
      cfg.nars.anticipation_window =
          static_cast<int>(to_long("anticipation_window", *v));
  } else if (*type == "ona") {
    cfg.agent_kind = AgentKind::ona;
    if (const auto* v = r.get("binary_path")) cfg.ona.binary_path = *v;
    if (cfg.ona.binary_path.empty()) {
      if (const char* env_bin = std::getenv("NARS_RL_ONA_BIN"))
        cfg.ona.binary_path = env_bin;
    }
    if (const auto* v = r.get("startup_args")) cfg.ona.startup_args = split_words(*v);
    if (const auto* v = r.get("motorbabbling"))
      cfg.ona.motorbabbling = to_double("motorbabbling", *v);
    if (const auto* v = r.get("read_timeout_ms"))
      cfg.ona.read_timeout_ms = static_cast<int>(to_long("read_timeout_ms", *v));
    if (const auto* v = r.get("goal_reissue_steps"))
      cfg.ona.goal_reissue_steps =
          static_cast<int>(to_long("goal_reissue_steps", *v));
  } else {
    throw std::invalid_argument("config: unknown agent type: " + *type);
  }
  r.finish();
}

void read_experiment_section(const IniDoc& doc, ExperimentConfig& cfg) {
  const auto* sec = doc.find("experiment");
  if (!sec) throw std::invalid_argument("config: missing [experiment] section");
  KeyReader r("experiment", sec);
  if (const auto* v = r.get("trials")) cfg.trials = static_cast<int>(to_long("trials", *v));
  if (const auto* v = r.get("steps")) cfg.steps = to_long("steps", *v);
  if (const auto* v = r.get("base_seed"))
    cfg.base_seed = static_cast<std::uint64_t>(to_long("base_seed", *v));
  if (const auto* v = r.get("output_dir")) cfg.output_dir = *v;
  r.finish();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
  const IniDoc doc = parse_ini(text);
  for (const auto& [name, entries] : doc.sections)
    if (name != "env" && name != "agent" && name != "experiment")
      throw std::invalid_argument("config: unknown section [" + name + "]");
  ExperimentConfig cfg;
  cfg.env = read_env_section(doc);
  read_agent_section(doc, cfg);
  read_experiment_section(doc, cfg);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  return parse_experiment_config(read_file(path));
}

void SweepSpec::validate() const {
  if (env_names.empty()) throw std::invalid_argument("sweep: envs missing");
  if (alpha.empty() || gamma.empty() || eps_max.empty() || eps_min.empty() ||
      decay.empty())
    throw std::invalid_argument("sweep: every hyperparameter needs >= 1 value");
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (steps < 1) throw std::invalid_argument("sweep: steps must be >= 1");
  if (output_dir.empty()) throw std::invalid_argument("sweep: output_dir missing");
  const auto& names = EnvOptions::known_names();
  for (const auto& e : env_names)
    if (std::find(names.begin(), names.end(), e) == names.end())
      throw std::invalid_argument("sweep: unknown env name: " + e);
}

SweepSpec parse_sweep_config(const std::string& text) {
  const IniDoc doc = parse_ini(text);
  for (const auto& [name, entries] : doc.sections)
    if (name != "sweep")
      throw std::invalid_argument("sweep config: unknown section [" + name + "]");
  const auto* sec = doc.find("sweep");
  if (!sec) throw std::invalid_argument("sweep config: missing [sweep] section");
  KeyReader r("sweep", sec);
  SweepSpec spec;
  if (const auto* v = r.get("envs")) spec.env_names = split_words(*v);
  auto reals = [&](const char* key, std::vector<double>& out) {
    if (const auto* v = r.get(key)) {
      out.clear();
      for (const auto& w : split_words(*v)) out.push_back(to_double(key, w));
    }
  };
  spec.alpha = {0.7};
  spec.gamma = {0.618};
  spec.eps_max = {1.0};
  spec.eps_min = {0.01};
  spec.decay = {0.01};
  reals("alpha", spec.alpha);
  reals("gamma", spec.gamma);
  reals("eps_max", spec.eps_max);
  reals("eps_min", spec.eps_min);
  reals("decay", spec.decay);
  if (const auto* v = r.get("trials")) spec.trials = static_cast<int>(to_long("trials", *v));
  if (const auto* v = r.get("steps")) spec.steps = to_long("steps", *v);
  if (const auto* v = r.get("base_seed"))
    spec.base_seed = static_cast<std::uint64_t>(to_long("base_seed", *v));
  if (const auto* v = r.get("output_dir")) spec.output_dir = *v;
  r.finish();
  spec.validate();
  return spec;
}

SweepSpec load_sweep_config(const std::string& path) {
  return parse_sweep_config(read_file(path));
}

}  // namespace narsrl
