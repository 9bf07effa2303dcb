#include "hoim/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "hoim/second_order.hpp"

namespace hoim {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
  return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  if (v < 0 || v != std::floor(v) || v > 1.8e19) {
    throw std::invalid_argument(key + ": expected a non-negative integer, got '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw std::invalid_argument(key + ": expected a boolean, got '" + value + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string artifact_stem(const std::string& out) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t CampaignConfig::effective_trials() const {
  if (trials) return *trials;
  return problem == "maxcut" ? 1000 : 100;
}

SolveMode parse_mode(const std::string& name) {
  if (name == "uncolored") return SolveMode::uncolored;
  if (name == "colored") return SolveMode::colored;
  if (name == "async") return SolveMode::async;
  throw std::invalid_argument("unknown mode '" + name + "' (uncolored, colored, async)");
}

std::string mode_name(SolveMode mode) {
  switch (mode) {
    case SolveMode::uncolored: return "uncolored";
    case SolveMode::colored: return "colored";
    case SolveMode::async: return "async";
  }
  return "?";
}

void apply_setting(CampaignConfig& c, std::string key, const std::string& raw) {
  std::replace(key.begin(), key.end(), '_', '-');
  const std::string value = trim(raw);
  auto& s = c.schedule;
  if (key == "problem") {
    if (value != "maxsat" && value != "maxcut" && value != "3r3x") throw std::invalid_argument("unknown problem '" + value + "'");
    c.problem = value;
  } else if (key == "input") {
    c.input = value;
  } else if (key == "vars") {
    c.vars = parse_count(key, value);
  } else if (key == "instance-seed") {
    c.instance_seed = parse_count(key, value);
  } else if (key == "mode") {
    if (value == "second-order") {
      c.second_order = true;
    } else {
      c.mode = parse_mode(value);
    }
  } else if (key == "second-order") {
    c.second_order = parse_bool(key, value);
  } else if (key == "tau0") {
    s.tau0 = parse_double(key, value);
  } else if (key == "cap-c") {
    s.cap_c = parse_double(key, value);
  } else if (key == "delta") {
    c.delta_sweep.clear();
    std::istringstream list(value);
    std::string item;
    while (std::getline(list, item, ',')) c.delta_sweep.push_back(parse_double(key, trim(item)));
    if (c.delta_sweep.empty()) throw std::invalid_argument("delta: empty list");
    s.delta = c.delta_sweep.front();
    if (c.delta_sweep.size() == 1) c.delta_sweep.clear();
  } else if (key == "b-param") {
    s.b_param = parse_double(key, value);
    c.noise_mean.reset();
  } else if (key == "noise-mean") {
    c.noise_mean = parse_double(key, value);
  } else if (key == "schedule-amplitude") {
    c.schedule_amplitude = parse_double(key, value);
  } else if (key == "epsilon") {
    s.epsilon = parse_double(key, value);
  } else if (key == "eta") {
    s.eta = parse_double(key, value);
  } else if (key == "amplitude-a") {
    s.amplitude_a = parse_double(key, value);
  } else if (key == "autotune-a") {
    c.autotune_a = parse_bool(key, value);
  } else if (key == "quantize-16bit") {
    s.quantize_16bit = parse_bool(key, value);
  } else if (key == "q-scale") {
    s.q_scale = parse_double(key, value);
  } else if (key == "convention") {
    if (value == "metropolis") {
      s.convention = ThresholdConvention::metropolis;
    } else if (value == "alternate") {
      s.convention = ThresholdConvention::alternate;
    } else {
      throw std::invalid_argument("unknown convention '" + value + "'");
    }
  } else if (key == "max-steps") {
    c.max_steps = parse_count(key, value);
  } else if (key == "target") {
    c.target = parse_double(key, value);
  } else if (key == "trials") {
    c.trials = parse_count(key, value);
  } else if (key == "seed") {
    s.seed = parse_count(key, value);
  } else if (key == "workers") {
    c.workers = parse_count(key, value);
  } else if (key == "trace-every") {
    c.trace_every = parse_count(key, value);
  } else if (key == "event-log") {
    c.event_log = parse_bool(key, value);
  } else if (key == "out") {
    c.out = value;
  } else {
    throw std::invalid_argument("unknown setting '" + key + "'");
  }
}

CampaignConfig parse_campaign_config(const std::string& text) {
  CampaignConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    try {
      apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

CampaignConfig read_campaign_config(const std::string& path) { return parse_campaign_config(read_text(path)); }

double Problem::objective(const SpinState& original) const {
  if (kind == "maxsat") return static_cast<double>(satisfied_count(cnf, original));
  if (kind == "maxcut") return cut_value(graph, original);
  return static_cast<double>(satisfied_equations(planted, original));
}

std::optional<double> Problem::objective_from_energy(double energy) const {
  if (qubo) return std::nullopt;
  if (kind == "maxsat") {
    if (!sat.uniform_length()) return std::nullopt;
    return static_cast<double>(sat.satisfied_at(energy));
  }
  if (kind == "maxcut") return cut_from_energy(graph, energy);
  return (static_cast<double>(planted.num_equations()) - energy) / 2.0;
}

double Problem::energy_target(double target) const {
  if (kind == "maxsat") {
    const double c = std::ceil(target);
    if (c < 0 || c > static_cast<double>(sat.num_clauses)) throw std::invalid_argument("SAT target out of range");
    const auto count = static_cast<std::size_t>(c);
    if (qubo) return -cnf3_qubo_optimum(count, sat.num_clauses);
    return sat.energy_at(count);
  }
  if (kind == "maxcut") return energy_for_cut(graph, target);
  const double c = std::ceil(target);
  const auto m = planted.num_equations();
  if (c < 0 || c > static_cast<double>(m)) throw std::invalid_argument("XORSAT target out of range");
  if (qubo) return -xorsat_qubo_optimum(static_cast<std::size_t>(c), m);
  return static_cast<double>(m) - 2.0 * c;
}

std::optional<double> Problem::default_target() const {
  if (kind == "maxsat") return static_cast<double>(sat.num_clauses);
  if (kind == "3r3x") return static_cast<double>(planted.num_equations());
  return std::nullopt;
}

SpinState Problem::original_part(const SpinState& full) const { return qubo ? project_original(*qubo, full) : full; }

Problem load_problem(const CampaignConfig& config) {
  Problem p;
  p.kind = config.problem;
  if (config.problem == "maxsat") {
    if (config.input.empty()) throw std::invalid_argument("maxsat needs an input file");
    p.cnf = read_dimacs_cnf(config.input);
    p.sat = cnf_to_ising(p.cnf);
    p.num_original = p.cnf.num_vars;
    if (config.second_order) {
      p.qubo = quadratize_cnf3(p.cnf);
    } else {
      p.system = p.sat.system;
    }
  } else if (config.problem == "maxcut") {
    if (config.input.empty()) throw std::invalid_argument("maxcut needs an input file");
    if (config.second_order) throw std::invalid_argument("MAX-CUT is already second order");
    p.graph = read_gset(config.input);
    p.system = maxcut_to_ising(p.graph);
    p.num_original = p.graph.num_vertices;
  } else if (config.problem == "3r3x") {
    NoiseSource noise(config.instance_seed);
    p.planted = gen_3r3x(config.vars, noise);
    p.num_original = config.vars;
    if (config.second_order) {
      p.qubo = quadratize_3r3x(p.planted);
    } else {
      p.system = p.planted.system;
    }
  } else {
    throw std::invalid_argument("unknown problem '" + config.problem + "'");
  }
  if (p.qubo) p.system = lower_qubo(*p.qubo);
  return p;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(trial + 0x5851f42d4c957f2dULL));
}

CampaignResult run_campaign(const CampaignConfig& config) { return run_campaign(config, load_problem(config)); }

CampaignResult run_campaign(const CampaignConfig& config, const Problem& problem) {
  CampaignResult result;
  const ClauseSystem& system = problem.system;
  const std::size_t trials = config.effective_trials();

  AnnealSchedule base = config.schedule;
  if (config.noise_mean) base.b_param = AnnealSchedule::b_for_mean(*config.noise_mean, base.convention);
  if (config.schedule_amplitude) base.tau0 = *config.schedule_amplitude / base.cap_c;
  if (config.mode == SolveMode::async) {
    if (!base.eta) base.eta = system.num_spins() ? 1.0 / static_cast<double>(system.num_spins()) : 1.0;
    if (config.autotune_a || !base.amplitude_a) {
      NoiseSource probe(derive_seed(base.seed, UINT64_MAX));
      base.amplitude_a = autotune_amplitude(system, probe);
    }
  }
  base.validate();
  for (auto& w : base.warnings()) result.warnings.push_back(w);

  result.target = config.target ? config.target : problem.default_target();
  if (result.target) result.target_energy = problem.energy_target(*result.target);

  Coloring coloring;
  if (config.mode == SolveMode::colored && system.num_spins() > 0) {
    coloring = dsatur_color(conflict_graph(system));
    result.num_colors = coloring.num_colors();
  }

  std::vector<double> deltas = config.delta_sweep;
  if (deltas.empty()) deltas.push_back(base.delta);

  const std::string stem = artifact_stem(config.out);
  const bool traces = !config.out.empty() && config.trace_every > 0;
  const bool events = !config.out.empty() && config.event_log;

  for (std::size_t d = 0; d < deltas.size(); ++d) {
    AnnealSchedule schedule = base;
    schedule.delta = deltas[d];
    schedule.validate();

    std::vector<TrialRecord> records(trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
      for (std::size_t t = next++; t < trials; t = next++) {
        try {
          TrialRecord& rec = records[t];
          rec.seed = derive_seed(schedule.seed, t);
          NoiseSource noise(rec.seed);
          SpinState init = random_spins(problem.num_original, noise);
          if (problem.qubo) init = lift_initial_state(*problem.qubo, init, noise);

          SolveBudget budget{config.max_steps, result.target_energy};
          SolveOptions options{events, traces ? config.trace_every : 0};
          const auto start = std::chrono::steady_clock::now();
          RunResult run;
          switch (config.mode) {
            case SolveMode::uncolored: run = solve_uncolored(system, schedule, budget, noise, init, options); break;
            case SolveMode::colored:
              run = solve_colored(system, schedule, coloring, budget, noise, init, options);
              break;
            case SolveMode::async: run = solve_async_bernoulli(system, schedule, budget, noise, init, options); break;
          }
          rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          rec.best_energy = run.best_energy;
          rec.best_objective = problem.objective(problem.original_part(run.best_spins));
          rec.final_objective = problem.objective(problem.original_part(run.final_spins));
          rec.success = run.reached_target;
          rec.steps_to_target = run.reached_target ? run.best_step : config.max_steps;
          rec.steps_executed = run.steps_executed;

          const std::string prefix = stem + ".d" + std::to_string(d) + ".t" + std::to_string(t);
          if (traces) {
            std::ostringstream csv;
            csv << "step,energy,best_energy,objective\n";
            for (const auto& pt : run.objective_trace) {
              csv << pt.step << ',' << pt.energy << ',' << pt.best_energy << ',';
              if (auto obj = problem.objective_from_energy(pt.energy)) csv << *obj;
              csv << '\n';
            }
            write_text(prefix + ".trace.csv", csv.str());
          }
          if (events) {
            std::ostringstream csv;
            csv << "step,spin\n";
            for (const auto& ev : run.event_log) csv << ev.step << ',' << ev.spin << '\n';
            write_text(prefix + ".events.csv", csv.str());
          }
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    };

    std::size_t workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::max<std::size_t>(1, std::min(workers, trials));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    result.sweeps.push_back({deltas[d], schedule, TrialStats::from_trials(std::move(records), config.max_steps)});
  }

  // Best sweep value: highest success probability, then lowest capped median.
  // Without a target: highest median best objective.
  auto median_best = [](const TrialStats& st) {
    std::vector<double> v;
    for (const auto& r : st.per_trial) v.push_back(r.best_objective);
    std::sort(v.begin(), v.end());
    return v.empty() ? 0.0 : v[(v.size() - 1) / 2];
  };
  for (std::size_t d = 1; d < result.sweeps.size(); ++d) {
    const auto& a = result.sweeps[d].stats;
    const auto& b = result.sweeps[result.best_index].stats;
    const bool better = result.target ? a.success_prob > b.success_prob ||
                                            (a.success_prob == b.success_prob &&
                                             a.median_steps_capped < b.median_steps_capped)
                                      : median_best(a) > median_best(b);
    if (better) result.best_index = d;
  }

  if (!config.out.empty()) write_text(config.out, campaign_summary_json(config, problem, result));
  return result;
}

std::string campaign_summary_json(const CampaignConfig& config, const Problem& problem, const CampaignResult& result) {
  using nlohmann::json;
  auto optional_number = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  auto finite_or_null = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };

  json doc;
  doc["schema_version"] = kSummarySchemaVersion;
  doc["problem"] = {{"kind", problem.kind},
                    {"input", config.input},
                    {"num_spins", problem.system.num_spins()},
                    {"num_original", problem.num_original},
                    {"num_terms", problem.system.num_terms()},
                    {"max_order", problem.system.max_order()}};
  if (problem.kind == "3r3x") {
    doc["problem"]["vars"] = config.vars;
    doc["problem"]["instance_seed"] = config.instance_seed;
  }
  doc["mode"] = mode_name(config.mode);
  doc["second_order"] = static_cast<bool>(problem.qubo);
  doc["num_colors"] = result.num_colors;
  doc["max_steps"] = config.max_steps;
  doc["trials"] = config.effective_trials();
  doc["target"] = optional_number(result.target);
  doc["target_energy"] = optional_number(result.target_energy);

  json sweeps = json::array();
  for (const auto& sw : result.sweeps) {
    const auto& s = sw.schedule;
    json entry;
    entry["delta"] = sw.delta;
    entry["schedule"] = {{"tau0", s.tau0},
                         {"cap_c", s.cap_c},
                         {"delta", s.delta},
                         {"b_param", s.b_param},
                         {"noise_mean", s.noise_mean()},
                         {"epsilon", s.epsilon},
                         {"eta", optional_number(s.eta)},
                         {"amplitude_a", optional_number(s.amplitude_a)},
                         {"quantize_16bit", s.quantize_16bit},
                         {"q_scale", s.quantize_16bit ? json(quantization_scale(s)) : json(nullptr)},
                         {"convention", s.convention == ThresholdConvention::metropolis ? "metropolis" : "alternate"},
                         {"seed", s.seed}};
    const auto& st = sw.stats;
    entry["trials"] = st.trials;
    entry["successes"] = st.successes;
    entry["success_prob"] = st.success_prob;
    entry["tts_steps"] = finite_or_null(st.tts_steps);
    entry["median_steps_capped"] = st.median_steps_capped;
    entry["tts_seconds"] = finite_or_null(st.tts_seconds);
    json per = json::array();
    for (std::size_t t = 0; t < st.per_trial.size(); ++t) {
      const auto& r = st.per_trial[t];
      per.push_back({{"trial", t},
                     {"seed", r.seed},
                     {"success", r.success},
                     {"best_objective", r.best_objective},
                     {"best_energy", r.best_energy},
                     {"final_objective", r.final_objective},
                     {"steps_to_target", r.steps_to_target},
                     {"steps_executed", r.steps_executed},
                     {"wall_seconds", r.wall_seconds}});
    }
    entry["per_trial"] = std::move(per);
    sweeps.push_back(std::move(entry));
  }
  doc["sweeps"] = std::move(sweeps);
  doc["best_delta"] = result.sweeps.empty() ? json(nullptr) : json(result.sweeps[result.best_index].delta);
  doc["warnings"] = result.warnings;
  return doc.dump(2) + "\n";
}

}  // namespace hoim
