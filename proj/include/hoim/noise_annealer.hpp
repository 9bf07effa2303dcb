// Fowler-Nordheim cooling schedule and the noisy latent-neuron thresholds.
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hoim/core_model.hpp"

namespace hoim {

/// Which closed form turns a uniform draw into a threshold.
///
/// `metropolis`: mu = tau * log(u / B + eps), fire iff S_i < -mu. This is the
/// Metropolis acceptance B * exp(-S_i / tau) > u rewritten on the input side.
/// `alternate`: mu = -tau * log(B * u + eps) under the same firing rule; kept
/// for comparison runs only.
enum class ThresholdConvention { metropolis, alternate };

struct AnnealSchedule {
  double tau0 = 0.15625;
  double cap_c = 8e4;
  double delta = 2e-3;
  double b_param = 1.0;
  double epsilon = 1e-12;

  // Asynchronous (Bernoulli-blocked) mode only.
  std::optional<double> eta;
  std::optional<double> amplitude_a;

  bool quantize_16bit = false;
  double q_scale = 0.0;  // 0 selects default_quantization_scale()

  ThresholdConvention convention = ThresholdConvention::metropolis;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument when a positivity or range constraint fails.
  void validate() const;

  /// Non-fatal findings, e.g. a Bernoulli amplitude too small to block.
  std::vector<std::string> warnings() const;

  /// B such that E[N^E] equals `mean` (eps -> 0) under `convention`.
  /// metropolis: E[log(u/B)] = -1 - log B; alternate: E[log(B u)] = log B - 1.
  static double b_for_mean(double mean, ThresholdConvention convention = ThresholdConvention::metropolis);
  double noise_mean() const;
};

/// tau_n = tau0 / log(1 + t_n / C) sampled at t_n = 1 + n * delta.
double temperature(const AnnealSchedule& schedule, std::uint64_t step);

/// Seeded, bit-reproducible random stream (mt19937_64 output is fixed by the
/// standard; conversions below avoid implementation-defined distributions).
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  /// Uniform integer in [0, n); n > 0. Unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t n);
  Spin random_spin() { return (engine_() >> 63) ? Spin{1} : Spin{-1}; }

 private:
  std::mt19937_64 engine_;
};

/// Threshold for a given uniform draw under the schedule's convention.
double threshold_from_uniform(const AnnealSchedule& schedule, double tau, double u);

/// Draws one uniform and returns the noisy threshold mu for `step`.
double exponential_threshold(const AnnealSchedule& schedule, std::uint64_t step, NoiseSource& noise);

/// A * N^B: amplitude_a with probability 1 - eta, else 0. One draw.
/// Throws std::logic_error when eta or amplitude_a is unset.
double bernoulli_blocker(const AnnealSchedule& schedule, NoiseSource& noise);

/// round(value / scale) saturated to int16.
std::int16_t quantize_threshold(double value, double scale);

/// tau(0) * |log eps| / 32767: the largest step-0 threshold just fits.
double default_quantization_scale(const AnnealSchedule& schedule);

/// Effective scale (explicit q_scale or the default).
double quantization_scale(const AnnealSchedule& schedule);

inline constexpr double kAutotuneMargin = 1.25;
inline constexpr std::size_t kAutotuneProbeIterations = 100;

/// Largest |delta_energy| seen over a random single-flip walk of
/// `probe_iterations` flips (all spins scanned at every visited state),
/// times kAutotuneMargin. Throws std::invalid_argument on an empty system.
double autotune_amplitude(const ClauseSystem& system, NoiseSource& noise,
                          std::size_t probe_iterations = kAutotuneProbeIterations);

}  // namespace hoim
