#include "narsrl/harness/sweep.hpp"

#include <algorithm>
#include <filesystem>

#include "narsrl/format.hpp"
#include "narsrl/harness/runner.hpp"

namespace narsrl {

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();

  std::vector<QHyperParams> combos;
  for (const double a : spec.alpha)
    for (const double g : spec.gamma)
      for (const double emax : spec.eps_max)
        for (const double emin : spec.eps_min)
          for (const double d : spec.decay)
            combos.push_back(QHyperParams{a, g, emax, emin, d});
  for (const auto& c : combos) c.validate();

  std::vector<SweepRow> rows(combos.size());
  for (std::size_t i = 0; i < combos.size(); ++i) rows[i].params = combos[i];

  for (const auto& env_name : spec.env_names) {
    ExperimentConfig cfg;
    cfg.env.name = env_name;
    cfg.agent_kind = AgentKind::qlearning;
    cfg.trials = spec.trials;
    cfg.steps = spec.steps;
    cfg.base_seed = spec.base_seed;
    cfg.output_dir = "-";  // in-memory only; validate() wants it non-empty

    for (std::size_t i = 0; i < combos.size(); ++i) {
      cfg.q = combos[i];
      double total = 0.0;
      for (int k = 0; k < spec.trials; ++k) {
        const auto result = run_trial(cfg, k);
        total += static_cast<double>(result.rows.back().success_cum);
      }
      rows[i].env_mean_success[env_name] = total / spec.trials;
    }

    double best = 0.0;
    for (const auto& r : rows) best = std::max(best, r.env_mean_success.at(env_name));
    for (auto& r : rows)
      r.score += best > 0.0 ? r.env_mean_success.at(env_name) / best : 1.0;
  }
  for (auto& r : rows) r.score /= static_cast<double>(spec.env_names.size());

  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.score > b.score; });
  return rows;
}

std::string sweep_ranking_csv(const SweepSpec& spec,
                              const std::vector<SweepRow>& rows) {
  std::string out = "rank,alpha,gamma,eps_max,eps_min,decay,score";
  for (const auto& env : spec.env_names) out += ',' + env + "_mean_success";
  out += '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += std::to_string(i + 1);
    out += ',' + format_double(r.params.alpha);
    out += ',' + format_double(r.params.gamma);
    out += ',' + format_double(r.params.eps_max);
    out += ',' + format_double(r.params.eps_min);
    out += ',' + format_double(r.params.decay);
    out += ',' + format_double(r.score);
    for (const auto& env : spec.env_names)
      out += ',' + format_double(r.env_mean_success.at(env));
    out += '\n';
  }
  return out;
}

std::string run_sweep_to_dir(const SweepSpec& spec) {
  const auto rows = run_sweep(spec);
  std::filesystem::create_directories(spec.output_dir);
  const std::string path =
      (std::filesystem::path(spec.output_dir) / "ranking.csv").string();
  write_file_atomic(path, sweep_ranking_csv(spec, rows));
  return path;
}

}  // namespace narsrl
