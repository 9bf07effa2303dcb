// Planted 3-regular 3-XORSAT instances.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hoim/core_model.hpp"
#include "hoim/noise_annealer.hpp"

namespace hoim {

struct PlantedInstance {
  ClauseSystem system;                             // term k is equation k
  std::vector<std::array<SpinIndex, 3>> equations; // ascending, lexicographic order
  std::vector<std::uint8_t> rhs_bits;              // b_k
  SpinState planted_spins;                         // s = (-1)^x

  std::size_t num_vars() const { return system.num_spins(); }
  std::size_t num_equations() const { return equations.size(); }
};

inline constexpr int kPlantingRetries = 1000;

/// N equations over N variables, each variable in exactly three equations,
/// no equation repeating a variable and no two equations alike. A random x is
/// planted, b_k = sum of x over equation k (mod 2), J_k = (-1)^b_k.
/// Throws std::invalid_argument for num_vars < 4 and std::runtime_error if
/// pairing keeps failing.
PlantedInstance gen_3r3x(std::size_t num_vars, NoiseSource& noise);

/// Rows and columns of the incidence each hold exactly three ones.
bool is_three_regular(const PlantedInstance& instance);

/// Equations with prod s = (-1)^b_k.
std::size_t satisfied_equations(const PlantedInstance& instance, const SpinState& spins);

}  // namespace hoim
