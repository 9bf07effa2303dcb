// Second-order baseline: a quadratized objective run through the same solver.
#pragma once

#include "hoim/core_model.hpp"
#include "hoim/noise_annealer.hpp"
#include "hoim/quadratize.hpp"

namespace hoim {

/// E = -H: one pairwise term per coupling (J = Q_ij), one single-spin term
/// per bias (J = h_i).
ClauseSystem lower_qubo(const QuboSystem& qubo);

/// Originals copied from `original`, auxiliaries drawn from `noise`.
SpinState lift_initial_state(const QuboSystem& qubo, const SpinState& original, NoiseSource& noise);

/// The first num_original spins of a full assignment.
SpinState project_original(const QuboSystem& qubo, const SpinState& full);

}  // namespace hoim
