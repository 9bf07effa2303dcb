// Multi-trial campaigns: problem loading, seeded worker pool, TTS summary.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hoim/cnf.hpp"
#include "hoim/coloring.hpp"
#include "hoim/maxcut.hpp"
#include "hoim/noise_annealer.hpp"
#include "hoim/quadratize.hpp"
#include "hoim/solver.hpp"
#include "hoim/tts.hpp"
#include "hoim/xorsat.hpp"

namespace hoim {

inline constexpr int kSummarySchemaVersion = 1;

enum class SolveMode { uncolored, colored, async };

struct CampaignConfig {
  std::string problem = "maxsat";  // maxsat | maxcut | 3r3x
  std::string input;               // file for maxsat / maxcut
  std::size_t vars = 10;           // 3r3x size
  std::uint64_t instance_seed = 1; // 3r3x generator seed
  SolveMode mode = SolveMode::uncolored;
  bool second_order = false;

  AnnealSchedule schedule;
  std::optional<double> noise_mean;         // overrides b_param
  std::optional<double> schedule_amplitude; // tau0 = amplitude / cap_c
  bool autotune_a = false;
  std::vector<double> delta_sweep;          // empty: schedule.delta

  std::uint64_t max_steps = 1000000;
  std::optional<double> target;             // objective units
  std::optional<std::size_t> trials;        // default 100, 1000 for maxcut
  std::size_t workers = 0;                  // 0: hardware concurrency
  std::uint64_t trace_every = 0;
  bool event_log = false;
  std::string out;                          // summary path; traces share the stem

  std::size_t effective_trials() const;
};

/// Applies one key=value setting. Keys use '-' or '_' interchangeably.
/// Throws std::invalid_argument on an unknown key or a bad value.
void apply_setting(CampaignConfig& config, std::string key, const std::string& value);

/// Flat "key = value" file, '#' comments.
CampaignConfig parse_campaign_config(const std::string& text);
CampaignConfig read_campaign_config(const std::string& path);

SolveMode parse_mode(const std::string& name);
std::string mode_name(SolveMode mode);

/// A loaded instance plus the conversions between energy and objective.
struct Problem {
  std::string kind;
  CnfFormula cnf;
  SatEncoding sat;
  WeightedGraph graph;
  PlantedInstance planted;
  std::optional<QuboSystem> qubo;  // set for second-order runs

  ClauseSystem system;  // what the solver sees
  std::size_t num_original = 0;

  /// Satisfied clauses / cut weight / satisfied equations of an original assignment.
  double objective(const SpinState& original) const;
  /// Exact objective implied by an energy of `system`, when one exists.
  std::optional<double> objective_from_energy(double energy) const;
  /// Energy at or below which the objective is at least `target`.
  double energy_target(double target) const;
  /// Full satisfaction for SAT and XORSAT, none for MAX-CUT.
  std::optional<double> default_target() const;
  SpinState original_part(const SpinState& full) const;
};

Problem load_problem(const CampaignConfig& config);

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial);

struct DeltaResult {
  double delta = 0.0;
  AnnealSchedule schedule;
  TrialStats stats;
};

struct CampaignResult {
  std::vector<DeltaResult> sweeps;
  std::size_t best_index = 0;
  std::optional<double> target;
  std::optional<double> target_energy;
  std::size_t num_colors = 0;
  std::vector<std::string> warnings;
};

/// Runs every trial of every sweep value. Results do not depend on the
/// worker count. Writes artifacts when config.out is set.
CampaignResult run_campaign(const CampaignConfig& config);
CampaignResult run_campaign(const CampaignConfig& config, const Problem& problem);

/// Deterministic JSON; wall-time fields are the only run-to-run variation.
std::string campaign_summary_json(const CampaignConfig& config, const Problem& problem,
                                  const CampaignResult& result);

}  // namespace hoim
