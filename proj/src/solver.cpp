#include "hoim/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hoim {
namespace {

constexpr double kTwo53 = 0x1p53;
constexpr std::size_t kMaxTableLevels = std::size_t{1} << 22;
[[maybe_unused]] constexpr std::uint64_t kConsistencyCheckEvery = 10000;

enum class Mode { serial, colored, async };

class Machine {
 public:
  Machine(const ClauseSystem& system, const AnnealSchedule& schedule, const SpinState& init,
          const SolveBudget& budget, const SolveOptions& options, Mode mode)
      : system_(system), schedule_(schedule), budget_(budget), options_(options), spins_(init) {
    schedule_.validate();
    if (init.size() != system.num_spins()) {
      throw std::invalid_argument("initial state has " + std::to_string(init.size()) +
                                  " spins, system has " + std::to_string(system.num_spins()));
    }
    if (mode == Mode::async && (!schedule.eta || !schedule.amplitude_a)) {
      throw std::logic_error("asynchronous mode needs eta and amplitude_a");
    }
    async_ = mode == Mode::async;
    explicit_threshold_ = async_ || schedule.quantize_16bit;
    upper_ = schedule.convention == ThresholdConvention::alternate;
    if (schedule.quantize_16bit) q_scale_ = quantization_scale(schedule);

    state_ = clause_outputs(system, spins_);
    contributions_.resize(system.num_terms());
    for (TermIndex k = 0; k < system.num_terms(); ++k) {
      contributions_[k] = state_.outputs[k] > 0 ? system.term_weight(k) : -system.term_weight(k);
    }
    inputs_.resize(system.num_spins());
    for (SpinIndex i = 0; i < system.num_spins(); ++i) inputs_[i] = spin_input(system, state_, i);
    marks_.assign(system.num_terms(), 0);
    setup_table();

    result_.best_energy = state_.energy;
    result_.best_spins = spins_;
    result_.best_step = 0;
    result_.reached_target = hits_target(state_.energy);
    trace(0);
  }

  bool finished() const { return result_.reached_target; }

  void begin_step(std::uint64_t step) {
    step_ = step;
    tau_ = temperature(schedule_, step);
    ++stamp_;
  }

  bool fires(SpinIndex i, NoiseSource& noise) {
    const double s = inputs_[i];
    if (explicit_threshold_) {
      double mu = threshold_from_uniform(schedule_, tau_, noise.uniform());
      if (schedule_.quantize_16bit) mu = quantize_threshold(mu, q_scale_) * q_scale_;
      if (async_) mu += bernoulli_blocker(schedule_, noise);
      return s < -mu;
    }
    const std::uint64_t k = noise.next() >> 11;
    const std::uint64_t cut = table_enabled_ ? cached_cut(s) : firing_cut(s);
    return upper_ ? k >= cut : k < cut;
  }

  void flip(SpinIndex j) {
    for (TermIndex k : system_.spin_terms(j)) toggle(k);
    spins_.flip(j);
    if (options_.record_events) result_.event_log.push_back({step_, j});
  }

  /// Fired spins share no term, so serial flips equal the parity update.
  void apply_independent(std::span<const SpinIndex> fired) {
    for (SpinIndex j : fired) flip(j);
  }

  void apply(std::span<const SpinIndex> fired) {
    if (fired.size() == 1) {
      flip(fired[0]);
      return;
    }
    touched_.clear();
    for (SpinIndex j : fired) {
      for (TermIndex k : system_.spin_terms(j)) {
        if (!(marks_[k] & 2)) {
          marks_[k] = 2;
          touched_.push_back(k);
        }
        marks_[k] ^= 1;
      }
    }
    for (TermIndex k : touched_) {
      if (marks_[k] & 1) toggle(k);
      marks_[k] = 0;
    }
    for (SpinIndex j : fired) {
      spins_.flip(j);
      if (options_.record_events) result_.event_log.push_back({step_, j});
    }
  }

  /// Returns true when the run should stop.
  bool end_step() {
    result_.steps_executed = step_ + 1;
    if (state_.energy < result_.best_energy) {
      result_.best_energy = state_.energy;
      result_.best_spins = spins_;
      result_.best_step = step_ + 1;
      result_.reached_target = hits_target(state_.energy);
    }
    if (options_.trace_every && result_.steps_executed % options_.trace_every == 0) {
      trace(result_.steps_executed);
    }
#ifndef NDEBUG
    if (result_.steps_executed % kConsistencyCheckEvery == 0) check_consistency();
#endif
    return result_.reached_target;
  }

  RunResult finish() {
    sync_outputs();
    if (options_.trace_every && (result_.objective_trace.empty() ||
                                 result_.objective_trace.back().step != result_.steps_executed)) {
      trace(result_.steps_executed);
    }
    if (!system_.exact_weights()) {
      result_.best_energy = energy(system_, result_.best_spins);
      state_.energy = energy(system_, spins_);
    }
    result_.final_energy = state_.energy;
    result_.final_spins = spins_;
    return std::move(result_);
  }

 private:
  bool hits_target(double e) const {
    if (!budget_.target_energy) return false;
    const double target = *budget_.target_energy;
    const double slack = system_.exact_weights() ? 0.0 : 1e-9 * std::max(1.0, std::abs(target));
    return e <= target + slack;
  }

  void toggle(TermIndex k) {
    const double jt = contributions_[k];
    contributions_[k] = -jt;
    state_.energy += 2.0 * jt;
    for (SpinIndex i : system_.term_spins(k)) inputs_[i] -= 2.0 * jt;
  }

  void sync_outputs() {
    for (TermIndex k = 0; k < system_.num_terms(); ++k) {
      state_.outputs[k] = (contributions_[k] > 0) == (system_.term_weight(k) > 0) ? Spin{1} : Spin{-1};
    }
  }

  // Integer cut-off on the 53-bit uniform: the metropolis rule
  // s < -tau log(u/B + eps) is u < B (exp(-s/tau) - eps); the alternate rule
  // s < tau log(B u + eps) is u > (exp(s/tau) - eps) / B.
  std::uint64_t firing_cut(double s) const {
    double bound;
    if (upper_) {
      const double q = (std::exp(s / tau_) - schedule_.epsilon) / schedule_.b_param;
      bound = std::floor(q * kTwo53) + 1.0;
    } else {
      const double p = schedule_.b_param * (std::exp(-s / tau_) - schedule_.epsilon);
      bound = std::ceil(p * kTwo53);
    }
    if (!(bound > 0.0)) return 0;
    if (bound > kTwo53) return static_cast<std::uint64_t>(kTwo53) + 1;
    return static_cast<std::uint64_t>(bound);
  }

  std::uint64_t cached_cut(double s) {
    // s is an exact multiple of the quantum here.
    const auto index = static_cast<std::size_t>(static_cast<std::int64_t>(s * inverse_quantum_) + level_offset_);
    if (table_stamp_[index] != stamp_) {
      table_stamp_[index] = stamp_;
      table_cut_[index] = firing_cut(s);
    }
    return table_cut_[index];
  }

  void setup_table() {
    if (explicit_threshold_ || !system_.exact_weights() || system_.num_terms() == 0) return;
    double reach = 0.0;
    for (SpinIndex i = 0; i < system_.num_spins(); ++i) {
      double sum = 0.0;
      for (TermIndex k : system_.spin_terms(i)) sum += std::abs(system_.term_weight(k));
      reach = std::max(reach, sum);
    }
    inverse_quantum_ = 1.0 / system_.weight_quantum();
    const double levels = reach * inverse_quantum_;
    if (levels * 2 + 1 > static_cast<double>(kMaxTableLevels)) return;
    level_offset_ = static_cast<std::int64_t>(levels);
    table_cut_.assign(2 * level_offset_ + 1, 0);
    table_stamp_.assign(2 * level_offset_ + 1, 0);
    table_enabled_ = true;
  }

  void trace(std::uint64_t step) {
    if (options_.trace_every) result_.objective_trace.push_back({step, state_.energy, result_.best_energy});
  }

  [[maybe_unused]] void check_consistency() {
    sync_outputs();
    const ClauseState fresh = clause_outputs(system_, spins_);
    if (fresh.outputs != state_.outputs) throw std::logic_error("clause outputs drifted from spins");
    const double tol = system_.exact_weights() ? 0.0 : 1e-6 * (1.0 + std::abs(fresh.energy));
    if (std::abs(fresh.energy - state_.energy) > tol) throw std::logic_error("energy drifted");
    for (SpinIndex i = 0; i < system_.num_spins(); ++i) {
      if (std::abs(spin_input(system_, fresh, i) - inputs_[i]) > tol) {
        throw std::logic_error("spin input cache drifted");
      }
    }
  }

  const ClauseSystem& system_;
  const AnnealSchedule& schedule_;
  const SolveBudget& budget_;
  const SolveOptions& options_;

  SpinState spins_;
  ClauseState state_;
  std::vector<double> contributions_;  // J_k T_k
  std::vector<double> inputs_;
  std::vector<std::uint8_t> marks_;
  std::vector<TermIndex> touched_;

  bool async_ = false;
  bool explicit_threshold_ = false;
  bool upper_ = false;
  double q_scale_ = 0.0;

  bool table_enabled_ = false;
  double inverse_quantum_ = 1.0;
  std::int64_t level_offset_ = 0;
  std::vector<std::uint64_t> table_cut_;
  std::vector<std::uint64_t> table_stamp_;
  std::uint64_t stamp_ = 0;

  std::uint64_t step_ = 0;
  double tau_ = 0.0;
  RunResult result_;
};

}  // namespace

std::vector<SpinIndex> latent_fire_mask(const ClauseSystem& system, const ClauseState& state,
                                        std::span<const double> thresholds) {
  if (thresholds.size() != system.num_spins()) {
    throw std::invalid_argument("expected " + std::to_string(system.num_spins()) + " thresholds, got " +
                                std::to_string(thresholds.size()));
  }
  std::vector<SpinIndex> fired;
  for (SpinIndex i = 0; i < system.num_spins(); ++i) {
    if (spin_input(system, state, i) < -thresholds[i]) fired.push_back(i);
  }
  return fired;
}

std::optional<SpinIndex> arbiter_select(std::span<const SpinIndex> active, NoiseSource& noise) {
  if (active.empty()) return std::nullopt;
  return active[noise.below(active.size())];
}

void parity_toggle(const ClauseSystem& system, std::span<const SpinIndex> fired, ClauseState& state,
                   SpinState& spins, bool require_independent) {
  if (spins.size() != system.num_spins() || state.outputs.size() != system.num_terms()) {
    throw std::invalid_argument("state does not match the system");
  }
  std::vector<SpinIndex> sorted(fired.begin(), fired.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("fired set repeats a spin");
  }
  if (!sorted.empty() && sorted.back() >= system.num_spins()) {
    throw std::out_of_range("fired spin out of range");
  }

  std::vector<std::uint32_t> count(system.num_terms(), 0);
  bool independent = true;
  for (SpinIndex j : sorted) {
    for (TermIndex k : system.spin_terms(j)) independent = ++count[k] == 1 && independent;
  }
  assert(!require_independent || independent);
  (void)require_independent;
  if (independent) {
    // Same arithmetic as flipping the spins one by one in the given order.
    for (SpinIndex j : fired) {
      double delta = 0.0;
      for (TermIndex k : system.spin_terms(j)) {
        delta += state.outputs[k] > 0 ? system.term_weight(k) : -system.term_weight(k);
        state.outputs[k] = static_cast<Spin>(-state.outputs[k]);
      }
      state.energy += 2.0 * delta;
      spins.flip(j);
    }
    return;
  }
  for (TermIndex k = 0; k < system.num_terms(); ++k) {
    if (count[k] % 2 == 1) {
      const Spin old = state.outputs[k];
      state.energy += 2.0 * system.term_weight(k) * old;
      state.outputs[k] = static_cast<Spin>(-old);
    }
  }
  for (SpinIndex j : sorted) spins.flip(j);
}

SpinState random_spins(std::size_t n, NoiseSource& noise) {
  std::vector<Spin> values(n);
  for (auto& s : values) s = noise.random_spin();
  return SpinState(std::move(values));
}

RunResult solve_uncolored(const ClauseSystem& system, const AnnealSchedule& schedule,
                          const SolveBudget& budget, NoiseSource& noise, const SpinState& init,
                          const SolveOptions& options) {
  Machine machine(system, schedule, init, budget, options, Mode::serial);
  if (system.num_terms() == 0) return machine.finish();
  std::vector<SpinIndex> active;
  active.reserve(system.num_spins());
  for (std::uint64_t step = 0; step < budget.max_steps && !machine.finished(); ++step) {
    machine.begin_step(step);
    active.clear();
    for (SpinIndex i = 0; i < system.num_spins(); ++i) {
      if (machine.fires(i, noise)) active.push_back(i);
    }
    if (auto chosen = arbiter_select(active, noise)) machine.flip(*chosen);
    if (machine.end_step()) break;
  }
  return machine.finish();
}

RunResult solve_colored(const ClauseSystem& system, const AnnealSchedule& schedule,
                        const Coloring& coloring, const SolveBudget& budget, NoiseSource& noise,
                        const SpinState& init, const SolveOptions& options) {
  if (system.num_spins() > 0 && !validate_coloring(system, coloring)) {
    throw std::invalid_argument("coloring is not valid for this system");
  }
  Machine machine(system, schedule, init, budget, options, Mode::colored);
  if (system.num_terms() == 0 || coloring.groups.empty()) return machine.finish();
  std::vector<SpinIndex> fired;
  std::size_t group = 0;
  for (std::uint64_t step = 0; step < budget.max_steps && !machine.finished(); ++step) {
    machine.begin_step(step);
    fired.clear();
    for (SpinIndex i : coloring.groups[group]) {
      if (machine.fires(i, noise)) fired.push_back(i);
    }
    machine.apply_independent(fired);
    if (++group == coloring.groups.size()) group = 0;
    if (machine.end_step()) break;
  }
  return machine.finish();
}

RunResult solve_async_bernoulli(const ClauseSystem& system, const AnnealSchedule& schedule,
                                const SolveBudget& budget, NoiseSource& noise, const SpinState& init,
                                const SolveOptions& options) {
  Machine machine(system, schedule, init, budget, options, Mode::async);
  if (system.num_terms() == 0) return machine.finish();
  std::vector<SpinIndex> fired;
  for (std::uint64_t step = 0; step < budget.max_steps && !machine.finished(); ++step) {
    machine.begin_step(step);
    fired.clear();
    for (SpinIndex i = 0; i < system.num_spins(); ++i) {
      if (machine.fires(i, noise)) fired.push_back(i);
    }
    if (!fired.empty()) machine.apply(fired);
    if (machine.end_step()) break;
  }
  return machine.finish();
}

}  // namespace hoim
