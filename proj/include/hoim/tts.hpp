// Time-to-solution statistics.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hoim {

/// T_comp * log(0.01) / log(1 - p); T_comp when p > 0.99, +inf when p = 0.
/// Throws std::invalid_argument outside 0 <= p <= 1 or for t_comp <= 0.
double tts(double success_prob, double t_comp);

/// Failures (nullopt) count as `cap`; even counts take the lower middle value.
/// Throws std::invalid_argument on empty input.
double median_tts_capped(std::span<const std::optional<double>> per_trial, double cap);

struct TrialRecord {
  std::uint64_t seed = 0;
  double best_objective = 0.0;
  double best_energy = 0.0;
  bool success = false;
  std::uint64_t steps_to_target = 0;  // cap when unsuccessful
  std::uint64_t steps_executed = 0;
  double final_objective = 0.0;
  double wall_seconds = 0.0;
};

struct TrialStats {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_prob = 0.0;
  std::vector<TrialRecord> per_trial;
  double tts_steps = 0.0;             // T_comp = step cap
  double tts_seconds = 0.0;           // T_comp = mean wall time per trial
  double median_steps_capped = 0.0;

  static TrialStats from_trials(std::vector<TrialRecord> records, std::uint64_t step_cap);
};

}  // namespace hoim
