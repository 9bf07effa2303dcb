#include "hoim/tts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hoim {

double tts(double success_prob, double t_comp) {
  if (!(success_prob >= 0.0 && success_prob <= 1.0)) throw std::invalid_argument("success probability outside [0, 1]");
  if (!(t_comp > 0.0)) throw std::invalid_argument("t_comp must be positive");
  if (success_prob > 0.99) return t_comp;
  if (success_prob == 0.0) return std::numeric_limits<double>::infinity();
  return t_comp * std::log(0.01) / std::log(1.0 - success_prob);
}

double median_tts_capped(std::span<const std::optional<double>> per_trial, double cap) {
  if (per_trial.empty()) throw std::invalid_argument("median of no trials");
  std::vector<double> values;
  values.reserve(per_trial.size());
  for (const auto& v : per_trial) values.push_back(v ? *v : cap);
  const std::size_t mid = (values.size() - 1) / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  return values[mid];
}

TrialStats TrialStats::from_trials(std::vector<TrialRecord> records, std::uint64_t step_cap) {
  TrialStats stats;
  stats.trials = records.size();
  double wall = 0.0;
  std::vector<std::optional<double>> steps;
  for (const auto& r : records) {
    if (r.success) ++stats.successes;
    wall += r.wall_seconds;
    steps.push_back(r.success ? std::optional<double>(static_cast<double>(r.steps_to_target)) : std::nullopt);
  }
  stats.per_trial = std::move(records);
  if (stats.trials == 0) return stats;
  stats.success_prob = static_cast<double>(stats.successes) / static_cast<double>(stats.trials);
  const double cap = static_cast<double>(std::max<std::uint64_t>(step_cap, 1));
  stats.tts_steps = tts(stats.success_prob, cap);
  const double mean_wall = wall / static_cast<double>(stats.trials);
  stats.tts_seconds = mean_wall > 0.0 ? tts(stats.success_prob, mean_wall) : 0.0;
  stats.median_steps_capped = median_tts_capped(steps, cap);
  return stats;
}

}  // namespace hoim
