// Annealed search over clause outputs: rejection-free serial updates, colored
// group updates and Bernoulli-blocked asynchronous updates.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hoim/coloring.hpp"
#include "hoim/core_model.hpp"
#include "hoim/noise_annealer.hpp"

namespace hoim {

struct SolveBudget {
  std::uint64_t max_steps = 0;
  std::optional<double> target_energy;  // stop once best_energy <= target
};

struct SolveOptions {
  bool record_events = false;
  std::uint64_t trace_every = 0;  // 0 disables the energy trace
};

struct SpikeEvent {
  std::uint64_t step;
  SpinIndex spin;
};

struct TracePoint {
  std::uint64_t step;
  double energy;
  double best_energy;
};

struct RunResult {
  double best_energy = 0.0;
  SpinState best_spins;
  std::uint64_t best_step = 0;
  std::uint64_t steps_executed = 0;
  double final_energy = 0.0;
  SpinState final_spins;
  bool reached_target = false;
  std::vector<SpikeEvent> event_log;
  std::vector<TracePoint> objective_trace;
};

/// {i : spin_input(i) < -thresholds[i]}, ascending.
std::vector<SpinIndex> latent_fire_mask(const ClauseSystem& system, const ClauseState& state,
                                        std::span<const double> thresholds);

/// Uniform pick among `active`; one draw when non-empty, none otherwise.
std::optional<SpinIndex> arbiter_select(std::span<const SpinIndex> active, NoiseSource& noise);

/// Negates every clause output holding an odd number of fired spins, flips
/// the fired spins and updates the energy. With `require_independent` (the
/// colored and serial contract) a clause holding two fired spins is an error
/// in debug builds; the parity rule is applied either way. An independent set
/// updates the energy exactly as serial flips in the given order would.
void parity_toggle(const ClauseSystem& system, std::span<const SpinIndex> fired, ClauseState& state,
                   SpinState& spins, bool require_independent = true);

/// Uniform random +-1 assignment, one draw per spin.
SpinState random_spins(std::size_t n, NoiseSource& noise);

RunResult solve_uncolored(const ClauseSystem& system, const AnnealSchedule& schedule,
                          const SolveBudget& budget, NoiseSource& noise, const SpinState& init,
                          const SolveOptions& options = {});

/// Throws std::invalid_argument if the coloring is not valid for the system.
RunResult solve_colored(const ClauseSystem& system, const AnnealSchedule& schedule,
                        const Coloring& coloring, const SolveBudget& budget, NoiseSource& noise,
                        const SpinState& init, const SolveOptions& options = {});

/// Throws std::logic_error unless eta and amplitude_a are set.
RunResult solve_async_bernoulli(const ClauseSystem& system, const AnnealSchedule& schedule,
                                const SolveBudget& budget, NoiseSource& noise, const SpinState& init,
                                const SolveOptions& options = {});

}  // namespace hoim
