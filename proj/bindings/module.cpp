// Python face of the library: environments, the two learners, narsese
// helpers and the experiment harness. Thin wrappers only; all semantics
// live in the C++ core.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <memory>
#include <sstream>
#include <variant>

#include "narsrl/envs/factory.hpp"
#include "narsrl/harness/agents.hpp"
#include "narsrl/harness/aggregate.hpp"
#include "narsrl/harness/plot.hpp"
#include "narsrl/harness/runner.hpp"
#include "narsrl/harness/sweep.hpp"
#include "narsrl/nal.hpp"
#include "narsrl/narsese.hpp"
#include "narsrl/nars_agent.hpp"
#include "narsrl/ona.hpp"
#include "narsrl/qlearning.hpp"

namespace py = pybind11;
using namespace narsrl;

namespace {

py::object decision_to_py(const Decision& d) {
  if (const auto* c = std::get_if<Chosen>(&d))
    return py::make_tuple("chosen", c->op);
  if (const auto* b = std::get_if<Babble>(&d))
    return py::make_tuple("babble", b->op);
  return py::make_tuple("none", py::none());
}

py::dict aggregate_to_py(const AggregateSeries& series) {
  py::dict out;
  out["steps"] = series.steps;
  for (const auto& [name, ms] : series.metrics)
    out[py::str(name)] = py::make_tuple(ms.first, ms.second);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tabular RL vs NARS-style sensorimotor comparison core";

  // --- environments ---------------------------------------------------
  py::class_<EnvSpec>(m, "EnvSpec")
      .def_readonly("name", &EnvSpec::name)
      .def_readonly("n_states", &EnvSpec::n_states)
      .def_readonly("n_actions", &EnvSpec::n_actions)
      .def_readonly("action_names", &EnvSpec::action_names)
      .def_readonly("truncation_limit", &EnvSpec::truncation_limit);

  py::class_<StepOutcome>(m, "StepOutcome")
      .def_readonly("next_state", &StepOutcome::next_state)
      .def_readonly("reward", &StepOutcome::reward)
      .def_readonly("terminated", &StepOutcome::terminated)
      .def_readonly("truncated", &StepOutcome::truncated)
      .def_readonly("success", &StepOutcome::success)
      .def("__repr__", [](const StepOutcome& o) {
        std::ostringstream s;
        s << "StepOutcome(next_state=" << o.next_state << ", reward=" << o.reward
          << ", terminated=" << o.terminated << ", truncated=" << o.truncated
          << ", success=" << o.success << ")";
        return s.str();
      });

  py::class_<EnvOptions>(m, "EnvOptions")
      .def(py::init<>())
      .def_readwrite("name", &EnvOptions::name)
      .def_readwrite("map", &EnvOptions::map)
      .def_readwrite("slippery", &EnvOptions::slippery)
      .def_readwrite("truncation", &EnvOptions::truncation);

  py::class_<Environment>(m, "Environment")
      .def("reset", &Environment::reset, py::arg("seed"))
      .def("step", &Environment::step, py::arg("action"))
      .def("current_state", &Environment::current_state)
      .def("state_token", &Environment::state_token)
      .def("episode_over", &Environment::episode_over)
      .def_property_readonly("spec", &Environment::spec,
                             py::return_value_policy::reference_internal);

  m.def(
      "make_env",
      [](const std::string& name) {
        EnvOptions opts;
        opts.name = name;
        return make_env(opts);
      },
      py::arg("name"));
  m.def("make_env",
        [](const EnvOptions& opts) { return make_env(opts); },
        py::arg("options"));

  // --- rng --------------------------------------------------------------
  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("uniform_index", &Rng::uniform_index, py::arg("n"))
      .def("bernoulli", &Rng::bernoulli, py::arg("p"));
  m.def("mix_seed", &mix_seed, py::arg("seed"), py::arg("stream"));

  // --- q-learning -------------------------------------------------------
  py::class_<QHyperParams>(m, "QHyperParams")
      .def(py::init<>())
      .def_readwrite("alpha", &QHyperParams::alpha)
      .def_readwrite("gamma", &QHyperParams::gamma)
      .def_readwrite("eps_max", &QHyperParams::eps_max)
      .def_readwrite("eps_min", &QHyperParams::eps_min)
      .def_readwrite("decay", &QHyperParams::decay);

  m.def("epsilon_at", &epsilon_at, py::arg("params"), py::arg("episode_counter"));

  py::class_<QTable>(m, "QTable")
      .def(py::init<int>(), py::arg("n_actions"))
      .def_property_readonly("n_actions", &QTable::n_actions)
      .def("value", &QTable::value, py::arg("state"), py::arg("action"))
      .def("set_value", &QTable::set_value, py::arg("state"), py::arg("action"),
           py::arg("value"))
      .def("max_value", &QTable::max_value, py::arg("state"))
      .def("states", &QTable::states);

  m.def(
      "select_action",
      [](const QTable& t, StateId s, double eps, Rng& rng) {
        const ActionChoice c = select_action(t, s, eps, rng);
        return py::make_tuple(c.action, c.was_random);
      },
      py::arg("table"), py::arg("state"), py::arg("eps"), py::arg("rng"));
  m.def("q_update", &q_update, py::arg("table"), py::arg("state"),
        py::arg("action"), py::arg("reward"), py::arg("next_state"),
        py::arg("terminal"), py::arg("params"));
  m.def("greedy_action", &greedy_action, py::arg("table"), py::arg("state"));

  // --- nal truth calculus -------------------------------------------------
  auto nal_mod = m.def_submodule("nal");
  py::class_<nal::Evidence>(nal_mod, "Evidence")
      .def(py::init<double, double>(), py::arg("w_pos") = 0.0,
           py::arg("w_total") = 0.0)
      .def_readwrite("w_pos", &nal::Evidence::w_pos)
      .def_readwrite("w_total", &nal::Evidence::w_total);
  py::class_<nal::TruthValue>(nal_mod, "TruthValue")
      .def_readonly("frequency", &nal::TruthValue::frequency)
      .def_readonly("confidence", &nal::TruthValue::confidence)
      .def("__repr__", [](const nal::TruthValue& t) {
        std::ostringstream s;
        s << "TruthValue(" << t.frequency << ", " << t.confidence << ")";
        return s.str();
      });
  nal_mod.def("revise", &nal::revise);
  nal_mod.def("truth_of", &nal::truth_of, py::arg("evidence"), py::arg("k") = 1.0);
  nal_mod.def("expectation", &nal::expectation);
  nal_mod.def("deduction", &nal::deduction);

  // --- narsese --------------------------------------------------------
  auto nrs = m.def_submodule("narsese");
  nrs.def("emit_event", &narsese::emit_event, py::arg("state_token"));
  nrs.def("emit_goal", &narsese::emit_goal);
  nrs.def("emit_setopname", &narsese::emit_setopname, py::arg("index"),
          py::arg("op"));
  nrs.def("valid_term_token", &narsese::valid_term_token);
  nrs.def(
      "parse_line",
      [](const std::string& line) -> py::dict {
        const narsese::ParseResult r = narsese::parse_line(line);
        py::dict out;
        if (const auto* s = std::get_if<narsese::Sentence>(&r)) {
          out["kind"] = "sentence";
          out["term"] = s->term.name;
          out["punctuation"] =
              s->punctuation == narsese::Punctuation::judgment ? "." : "!";
          out["present"] = s->present;
          if (s->truth)
            out["truth"] = py::make_tuple(s->truth->frequency, s->truth->confidence);
        } else if (const auto* o = std::get_if<narsese::OpRegistration>(&r)) {
          out["kind"] = "setopname";
          out["index"] = o->index;
          out["op"] = o->op;
        } else if (const auto* e = std::get_if<narsese::ExecutionReport>(&r)) {
          out["kind"] = "execution";
          out["op"] = e->op;
        } else if (const auto* u = std::get_if<narsese::Unrecognized>(&r)) {
          out["kind"] = "unrecognized";
          out["line"] = u->line;
        } else {
          out["kind"] = "error";
          out["message"] = std::get<narsese::ParseError>(r).message;
        }
        return out;
      },
      py::arg("line"));
  nrs.def(
      "serialize",
      [](const std::string& term, const std::string& punctuation, bool present,
         std::optional<std::pair<double, double>> truth) {
        narsese::Sentence s;
        s.term.name = term;
        if (punctuation == ".")
          s.punctuation = narsese::Punctuation::judgment;
        else if (punctuation == "!")
          s.punctuation = narsese::Punctuation::goal;
        else
          throw std::invalid_argument("punctuation must be '.' or '!'");
        s.present = present;
        if (truth) s.truth = narsese::TruthAnnotation{truth->first, truth->second};
        return narsese::serialize(s);
      },
      py::arg("term"), py::arg("punctuation") = ".", py::arg("present") = false,
      py::arg("truth") = py::none());

  // --- sensorimotor learner ------------------------------------------------
  py::class_<NarsConfig>(m, "NarsConfig")
      .def(py::init<>())
      .def_readwrite("k", &NarsConfig::k)
      .def_readwrite("motorbabbling", &NarsConfig::motorbabbling)
      .def_readwrite("decision_threshold", &NarsConfig::decision_threshold)
      .def_readwrite("max_chain_depth", &NarsConfig::max_chain_depth)
      .def_readwrite("capacity", &NarsConfig::capacity)
      .def_readwrite("anticipation_window", &NarsConfig::anticipation_window);

  py::class_<NarsAgent>(m, "NarsAgent")
      .def(py::init<int, NarsConfig>(), py::arg("n_actions"),
           py::arg("config") = NarsConfig{})
      .def("observe", &NarsAgent::observe, py::arg("state"), py::arg("step"))
      .def("note_executed", &NarsAgent::note_executed, py::arg("state"),
           py::arg("op"), py::arg("step"))
      .def("process_goal_event", &NarsAgent::process_goal_event, py::arg("step"))
      .def(
          "decide",
          [](NarsAgent& a, StateId s, Rng& rng) {
            return decision_to_py(a.decide(s, rng));
          },
          py::arg("state"), py::arg("rng"))
      .def("end_episode", &NarsAgent::end_episode)
      .def("desire_expectation", &NarsAgent::desire_expectation, py::arg("state"),
           py::arg("op"))
      .def("n_links", [](const NarsAgent& a) { return a.links().size(); });

  // --- harness ---------------------------------------------------------
  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_readwrite("steps", &ExperimentConfig::steps)
      .def_readwrite("base_seed", &ExperimentConfig::base_seed)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir);

  m.def("parse_experiment_config", &parse_experiment_config, py::arg("text"));
  m.def("load_experiment_config", &load_experiment_config, py::arg("path"));
  m.def(
      "run_experiment",
      [](const ExperimentConfig& cfg) {
        const ExperimentResult r = run_experiment(cfg);
        py::dict out;
        out["skipped"] = r.skipped;
        out["skip_reason"] = r.skip_reason;
        out["csv_paths"] = r.csv_paths;
        out["manifest_path"] = r.manifest_path;
        return out;
      },
      py::arg("config"));
  m.def(
      "aggregate_dir",
      [](const std::string& dir) { return aggregate_to_py(aggregate_dir(dir)); },
      py::arg("dir"));
  m.def(
      "plot_svg",
      [](const std::vector<std::string>& dirs, const std::string& metric) {
        std::vector<std::pair<std::string, AggregateSeries>> series;
        for (const std::string& dir : dirs) {
          auto label = std::filesystem::path(dir).filename().string();
          if (label.empty()) label = dir;
          series.emplace_back(label, aggregate_dir(dir));
        }
        return render_plot_svg(series, metric);
      },
      py::arg("dirs"), py::arg("metric"));
}
