#include "hoim/noise_annealer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hoim {

void AnnealSchedule::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(tau0 > 0.0 && std::isfinite(tau0), "tau0 must be positive");
  require(cap_c > 0.0 && std::isfinite(cap_c), "cap_c must be positive");
  require(delta > 0.0 && std::isfinite(delta), "delta must be positive");
  require(b_param > 0.0 && std::isfinite(b_param), "b_param must be positive");
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
  require(!eta || (*eta >= 0.0 && *eta <= 1.0), "eta must lie in [0, 1]");
  require(!amplitude_a || std::isfinite(*amplitude_a), "amplitude_a must be finite");
  require(q_scale >= 0.0 && std::isfinite(q_scale), "q_scale must be non-negative");
}

std::vector<std::string> AnnealSchedule::warnings() const {
  std::vector<std::string> out;
  if (amplitude_a) {
    const double bound = tau0 * std::abs(std::log(epsilon));
    if (*amplitude_a <= bound) {
      out.push_back("amplitude_a " + std::to_string(*amplitude_a) +
                    " does not exceed tau0*|log(epsilon)| = " + std::to_string(bound) +
                    "; Bernoulli blocking may not keep updates asynchronous");
    }
  }
  return out;
}

double AnnealSchedule::b_for_mean(double mean, ThresholdConvention convention) {
  return convention == ThresholdConvention::metropolis ? std::exp(-1.0 - mean) : std::exp(mean + 1.0);
}

double AnnealSchedule::noise_mean() const {
  return convention == ThresholdConvention::metropolis ? -1.0 - std::log(b_param)
                                                    : std::log(b_param) - 1.0;
}

double temperature(const AnnealSchedule& schedule, std::uint64_t step) {
  const double t = 1.0 + static_cast<double>(step) * schedule.delta;
  return schedule.tau0 / std::log1p(t / schedule.cap_c);
}

std::uint64_t NoiseSource::below(std::uint64_t n) {
  // Reject the low (2^64 mod n) outputs so the remainder is unbiased.
  const std::uint64_t floor = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= floor) return r % n;
  }
}

double threshold_from_uniform(const AnnealSchedule& schedule, double tau, double u) {
  if (schedule.convention == ThresholdConvention::metropolis) {
    return tau * std::log(u / schedule.b_param + schedule.epsilon);
  }
  return -tau * std::log(schedule.b_param * u + schedule.epsilon);
}

double exponential_threshold(const AnnealSchedule& schedule, std::uint64_t step, NoiseSource& noise) {
  return threshold_from_uniform(schedule, temperature(schedule, step), noise.uniform());
}

double bernoulli_blocker(const AnnealSchedule& schedule, NoiseSource& noise) {
  if (!schedule.eta || !schedule.amplitude_a) {
    throw std::logic_error("Bernoulli blocking needs eta and amplitude_a (asynchronous mode)");
  }
  return noise.uniform() < 1.0 - *schedule.eta ? *schedule.amplitude_a : 0.0;
}

std::int16_t quantize_threshold(double value, double scale) {
  const double q = std::nearbyint(value / scale);
  if (!(q > -32768.0)) return std::numeric_limits<std::int16_t>::min();
  if (q > 32767.0) return std::numeric_limits<std::int16_t>::max();
  return static_cast<std::int16_t>(q);
}

double default_quantization_scale(const AnnealSchedule& schedule) {
  return temperature(schedule, 0) * std::abs(std::log(schedule.epsilon)) / 32767.0;
}

double quantization_scale(const AnnealSchedule& schedule) {
  return schedule.q_scale > 0.0 ? schedule.q_scale : default_quantization_scale(schedule);
}

double autotune_amplitude(const ClauseSystem& system, NoiseSource& noise, std::size_t probe_iterations) {
  if (system.num_spins() == 0 || system.num_terms() == 0) {
    throw std::invalid_argument("cannot autotune the amplitude of an empty system");
  }
  if (probe_iterations == 0) throw std::invalid_argument("probe_iterations must be >= 1");

  std::vector<Spin> initial(system.num_spins());
  for (auto& s : initial) s = noise.random_spin();
  SpinState spins(std::move(initial));
  ClauseState state = clause_outputs(system, spins);

  double largest = 0.0;
  auto scan = [&] {
    for (SpinIndex i = 0; i < system.num_spins(); ++i) {
      largest = std::max(largest, std::abs(delta_energy(system, state, i)));
    }
  };
  scan();
  for (std::size_t it = 0; it < probe_iterations; ++it) {
    apply_flip(system, state, spins, static_cast<SpinIndex>(noise.below(system.num_spins())));
    scan();
  }
  return largest * kAutotuneMargin;
}

}  // namespace hoim
