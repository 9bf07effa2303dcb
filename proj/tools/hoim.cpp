// hoim: higher-order Ising machine command line.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "hoim/campaign.hpp"
#include "hoim/coloring.hpp"
#include "hoim/quadratize.hpp"
#include "hoim/resource.hpp"

namespace {

using Settings = std::map<std::string, std::string>;

const char* const kValueFlags[] = {"mode", "tau0", "cap-c", "delta", "b-param", "noise-mean", "schedule-amplitude",
                                   "epsilon", "eta", "amplitude-a", "q-scale", "convention", "max-steps",
                                   "target", "trials", "seed", "workers", "trace-every", "out"};
const char* const kSwitches[] = {"autotune-a", "quantize-16bit", "event-log", "second-order"};

struct SolveFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags) {
  for (const char* name : kValueFlags) {
    cmd->add_option_function<std::string>(
        std::string("--") + name, [&flags, name](const std::string& v) { flags.values[name] = v; },
        std::string("set ") + name);
  }
  for (const char* name : kSwitches) {
    flags.switches[name] = false;
    cmd->add_flag(std::string("--") + name, flags.switches[name]);
  }
}

void apply_flags(hoim::CampaignConfig& config, const SolveFlags& flags) {
  for (const auto& [k, v] : flags.values) hoim::apply_setting(config, k, v);
  for (const auto& [k, on] : flags.switches) {
    if (on) hoim::apply_setting(config, k, "true");
  }
}

void print_result(const hoim::CampaignConfig& config, const hoim::Problem& problem, const hoim::CampaignResult& result) {
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "problem " << problem.kind << ": " << problem.system.num_spins() << " spins, "
            << problem.system.num_terms() << " terms, order " << problem.system.max_order() << '\n';
  std::cout << "mode " << hoim::mode_name(config.mode) << (problem.qubo ? " (second order)" : "");
  if (result.num_colors) std::cout << ", " << result.num_colors << " colors";
  std::cout << '\n';
  if (result.target) std::cout << "target " << *result.target << " (energy " << *result.target_energy << ")\n";
  for (std::size_t d = 0; d < result.sweeps.size(); ++d) {
    const auto& st = result.sweeps[d].stats;
    double best = 0.0;
    for (std::size_t t = 0; t < st.per_trial.size(); ++t) {
      best = t == 0 ? st.per_trial[t].best_objective : std::max(best, st.per_trial[t].best_objective);
    }
    const char* mark = d == result.best_index && result.sweeps.size() > 1 ? "  <- best" : "";
    if (!result.target) {
      std::printf("delta %-10g  trials %zu  best objective %g%s\n", result.sweeps[d].delta, st.trials, best, mark);
      continue;
    }
    std::printf("delta %-10g  P_S %.4f (%zu/%zu)  median steps %.0f  TTS steps %g  best objective %g%s\n",
                result.sweeps[d].delta, st.success_prob, st.successes, st.trials, st.median_steps_capped,
                st.tts_steps, best, mark);
  }
  if (!config.out.empty()) std::cout << "summary written to " << config.out << '\n';
}

int run_solve(hoim::CampaignConfig config, const SolveFlags& flags) {
  apply_flags(config, flags);
  const hoim::Problem problem = hoim::load_problem(config);
  for (const auto& w : problem.cnf.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& w : problem.sat.warnings) std::cerr << "warning: " << w << '\n';
  const auto result = hoim::run_campaign(config, problem);
  print_result(config, problem, result);
  return 0;
}

hoim::ClauseSystem load_any(const std::string& path, const std::string& format) {
  const bool cnf = format == "cnf" || (format == "auto" && path.size() >= 4 && path.substr(path.size() - 4) == ".cnf");
  if (cnf) return hoim::cnf_to_ising(hoim::read_dimacs_cnf(path)).system;
  return hoim::maxcut_to_ising(hoim::read_gset(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order Ising machine: annealed search over clause outputs"};
  app.require_subcommand(1);

  SolveFlags maxsat_flags, maxcut_flags, xor_flags, campaign_flags;
  std::string cnf_path, gset_path, config_path, color_path, color_format = "auto", color_json, quad_out;
  std::size_t gen_vars = 10;
  std::uint64_t gen_seed = 1;
  bool gen_solve = false;
  std::string gen_out;

  auto* maxsat = app.add_subcommand("solve-maxsat", "anneal a DIMACS CNF formula");
  maxsat->add_option("cnf", cnf_path, "DIMACS CNF file")->required()->check(CLI::ExistingFile);
  add_solve_flags(maxsat, maxsat_flags);

  auto* maxcut = app.add_subcommand("solve-maxcut", "anneal a Gset MAX-CUT graph");
  maxcut->add_option("gset", gset_path, "Gset graph file")->required()->check(CLI::ExistingFile);
  add_solve_flags(maxcut, maxcut_flags);

  auto* gen = app.add_subcommand("gen-3r3x", "generate (and optionally solve) a planted 3R-3X instance");
  gen->add_option("--vars", gen_vars, "number of variables (= equations)")->check(CLI::Range(4, 1 << 24));
  gen->add_option("--instance-seed", gen_seed, "generator seed");
  gen->add_option("--instance-out", gen_out, "write the instance as JSON");
  gen->add_flag("--solve", gen_solve, "run the annealer on the instance");
  add_solve_flags(gen, xor_flags);

  auto* quad = app.add_subcommand("quadratize", "rewrite a 3-SAT formula with one auxiliary spin per clause");
  quad->add_option("cnf", cnf_path, "DIMACS CNF file")->required()->check(CLI::ExistingFile);
  quad->add_option("--out", quad_out, "QUBO JSON path (stdout if omitted)");

  auto* color = app.add_subcommand("color", "DSATUR coloring of the spin conflict graph");
  color->add_option("input", color_path, "CNF or Gset file")->required()->check(CLI::ExistingFile);
  color->add_option("--format", color_format, "cnf, gset or auto")->check(CLI::IsMember({"cnf", "gset", "auto"}));
  color->add_option("--json", color_json, "write spin colors as JSON");

  auto* campaign = app.add_subcommand("campaign", "run a configured multi-trial campaign");
  campaign->add_option("config", config_path, "key = value configuration file")->required()->check(CLI::ExistingFile);
  add_solve_flags(campaign, campaign_flags);

  auto* resources = app.add_subcommand("resource-report", "quadratization overhead of a CNF formula");
  resources->add_option("cnf", cnf_path, "DIMACS CNF file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (maxsat->parsed()) {
      hoim::CampaignConfig config;
      config.problem = "maxsat";
      config.input = cnf_path;
      return run_solve(config, maxsat_flags);
    }
    if (maxcut->parsed()) {
      hoim::CampaignConfig config;
      config.problem = "maxcut";
      config.input = gset_path;
      return run_solve(config, maxcut_flags);
    }
    if (gen->parsed()) {
      hoim::CampaignConfig config;
      config.problem = "3r3x";
      config.vars = gen_vars;
      config.instance_seed = gen_seed;
      if (!gen_out.empty() || !gen_solve) {
        hoim::NoiseSource noise(gen_seed);
        const auto inst = hoim::gen_3r3x(gen_vars, noise);
        nlohmann::json doc;
        doc["num_vars"] = inst.num_vars();
        doc["equations"] = inst.equations;
        doc["rhs_bits"] = inst.rhs_bits;
        std::vector<int> planted(inst.planted_spins.values().begin(), inst.planted_spins.values().end());
        doc["planted_spins"] = planted;
        const std::string text = doc.dump() + "\n";
        if (gen_out.empty()) {
          std::cout << text;
        } else {
          std::ofstream(gen_out) << text;
        }
      }
      if (gen_solve) return run_solve(config, xor_flags);
      return 0;
    }
    if (quad->parsed()) {
      const auto qubo = hoim::quadratize_cnf3(hoim::read_dimacs_cnf(cnf_path));
      for (const auto& w : qubo.warnings) std::cerr << "warning: " << w << '\n';
      const std::string text = hoim::qubo_to_json(qubo);
      if (quad_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(quad_out);
        if (!(out << text)) throw std::runtime_error("cannot write " + quad_out);
        std::cout << qubo.num_spins << " spins (" << qubo.num_auxiliary() << " auxiliary), " << qubo.pairwise.size()
                  << " couplings, " << qubo.linear.size() << " biases\n";
      }
      return 0;
    }
    if (color->parsed()) {
      const auto system = load_any(color_path, color_format);
      const auto coloring = hoim::dsatur_color(hoim::conflict_graph(system));
      std::cout << "colors " << coloring.num_colors() << '\n';
      for (std::size_t r = 0; r < coloring.groups.size(); ++r) {
        std::cout << "group " << r << ": " << coloring.groups[r].size() << " spins\n";
      }
      if (2 * coloring.num_colors() >= system.num_spins()) {
        std::cerr << "warning: " << coloring.num_colors() << " colors for " << system.num_spins()
                  << " spins; colored updates are close to serial\n";
      }
      if (!color_json.empty()) {
        nlohmann::json doc;
        doc["num_colors"] = coloring.num_colors();
        doc["spin_color"] = coloring.spin_color;
        std::ofstream(color_json) << doc.dump() << '\n';
      }
      return 0;
    }
    if (campaign->parsed()) return run_solve(hoim::read_campaign_config(config_path), campaign_flags);
    if (resources->parsed()) {
      const auto r = hoim::resource_report(hoim::read_dimacs_cnf(cnf_path));
      std::printf("variables %zu\nauxiliaries %zu\nclauses %zu\nH rows %zu\nH nonzeros %zu\n", r.variables,
                  r.auxiliaries, r.clauses, r.h_rows, r.h_nonzeros);
      std::printf("variable_ratio %.6g\ninterconnection_ratio_dense %.6g\ninterconnection_ratio_nonzero %.6g\n",
                  r.variable_ratio, r.interconnection_ratio_dense, r.interconnection_ratio_nonzero);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
