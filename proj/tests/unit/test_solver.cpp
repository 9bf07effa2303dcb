#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "hoim/cnf.hpp"
#include "hoim/solver.hpp"
#include "hoim/xorsat.hpp"
#include "oracles.hpp"

using namespace hoim;

namespace {

// Straight transcription of the serial loop on the public primitives.
RunResult reference_uncolored(const ClauseSystem& sys, const AnnealSchedule& s, std::uint64_t steps,
                              NoiseSource& noise, SpinState spins) {
  auto st = clause_outputs(sys, spins);
  RunResult r;
  r.best_energy = st.energy;
  r.best_spins = spins;
  for (std::uint64_t n = 0; n < steps; ++n) {
    const double tau = temperature(s, n);
    std::vector<double> mu(sys.num_spins());
    for (auto& m : mu) m = threshold_from_uniform(s, tau, noise.uniform());
    const auto active = latent_fire_mask(sys, st, mu);
    if (auto pick = arbiter_select(active, noise)) apply_flip(sys, st, spins, *pick);
    r.steps_executed = n + 1;
    if (st.energy < r.best_energy) {
      r.best_energy = st.energy;
      r.best_spins = spins;
      r.best_step = n + 1;
    }
  }
  r.final_spins = spins;
  r.final_energy = st.energy;
  return r;
}

RunResult reference_single_groups(const ClauseSystem& sys, const AnnealSchedule& s, std::uint64_t steps,
                                  NoiseSource& noise, SpinState spins) {
  auto st = clause_outputs(sys, spins);
  RunResult r;
  r.best_energy = st.energy;
  r.best_spins = spins;
  for (std::uint64_t n = 0; n < steps; ++n) {
    const auto i = static_cast<SpinIndex>(n % sys.num_spins());
    const double mu = threshold_from_uniform(s, temperature(s, n), noise.uniform());
    if (spin_input(sys, st, i) < -mu) apply_flip(sys, st, spins, i);
    r.steps_executed = n + 1;
    if (st.energy < r.best_energy) {
      r.best_energy = st.energy;
      r.best_spins = spins;
      r.best_step = n + 1;
    }
  }
  r.final_spins = spins;
  return r;
}

ClauseSystem sat_system(std::uint64_t seed, std::size_t n, std::size_t m, CnfFormula* out = nullptr) {
  auto cnf = oracle::satisfiable_ksat(seed, n, m, 3);
  if (out) *out = cnf;
  return cnf_to_ising(cnf).system;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("fire mask extremes and a pair term") {
  const auto sys = build_clause_system(std::vector<Term>{{{0, 1}, 1.0}}, 2);
  SpinState spins({1, 1});
  auto st = clause_outputs(sys, spins);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(latent_fire_mask(sys, st, std::vector<double>{inf, inf}).empty());
  CHECK(latent_fire_mask(sys, st, std::vector<double>{-inf, -inf}) == std::vector<SpinIndex>{0, 1});
  CHECK(latent_fire_mask(sys, st, std::vector<double>{0, 0}).empty());
  apply_flip(sys, st, spins, 0);
  CHECK(latent_fire_mask(sys, st, std::vector<double>{0, 0}) == std::vector<SpinIndex>{0, 1});
  CHECK(spin_input(sys, st, 1) == -1.0);
  CHECK_THROWS_AS(latent_fire_mask(sys, st, std::vector<double>{0}), std::invalid_argument);
}

TEST_CASE("arbiter picks uniformly") {
  NoiseSource noise(1);
  const std::vector<SpinIndex> one{7};
  CHECK(arbiter_select(one, noise) == 7u);
  CHECK_FALSE(arbiter_select(std::vector<SpinIndex>{}, noise).has_value());
  const std::vector<SpinIndex> four{1, 2, 3, 4};
  int counts[5] = {};
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[*arbiter_select(four, noise)];
  for (int v = 1; v <= 4; ++v) CHECK(std::abs(counts[v] / double(n) - 0.25) <= 0.01);
}

TEST_CASE("parity toggle cases") {
  oracle::Rng rng(31);
  const auto sys = build_clause_system(oracle::random_terms(rng, 10, 20, 3, true), 10);
  const SpinState start = oracle::to_state(oracle::random_spins(rng, 10));

  SpinState a = start, b = start;
  auto sa = clause_outputs(sys, a), sb = sa;
  parity_toggle(sys, std::vector<SpinIndex>{4}, sa, a);
  apply_flip(sys, sb, b, 4);
  CHECK(sa == sb);
  CHECK(a == b);

  SpinState c = start;
  auto sc = clause_outputs(sys, c);
  const auto before = sc;
  parity_toggle(sys, std::vector<SpinIndex>{}, sc, c);
  CHECK(sc == before);
  CHECK(c == start);

  // Two spins sharing a pair term: that term keeps its output.
  const auto pair = build_clause_system(std::vector<Term>{{{0, 1}, 1.0}, {{0}, 1.0}, {{1}, 1.0}}, 2);
  SpinState p({1, 1});
  auto ps = clause_outputs(pair, p);
  parity_toggle(pair, std::vector<SpinIndex>{0, 1}, ps, p, false);
  CHECK(ps == clause_outputs(pair, p));
  CHECK(ps.outputs[1] == 1);  // canonical order: {0}, {0, 1}, {1}
  CHECK_THROWS_AS(parity_toggle(pair, std::vector<SpinIndex>{0, 0}, ps, p, false), std::invalid_argument);
}

TEST_CASE("zero budget returns the initial evaluation") {
  const auto sys = sat_system(1, 12, 40);
  NoiseSource noise(2);
  const auto init = random_spins(12, noise);
  const auto r = solve_uncolored(sys, AnnealSchedule{}, SolveBudget{0, std::nullopt}, noise, init);
  CHECK(r.steps_executed == 0);
  CHECK(r.best_step == 0);
  CHECK(r.best_spins == init);
  CHECK(r.best_energy == energy(sys, init));
}

TEST_CASE("term-free systems return immediately") {
  const auto sys = build_clause_system(std::vector<Term>{}, 3);
  NoiseSource noise(3);
  const auto r = solve_uncolored(sys, AnnealSchedule{}, SolveBudget{100, std::nullopt}, noise, SpinState::all_up(3));
  CHECK(r.steps_executed == 0);
  CHECK(r.best_energy == 0.0);
}

TEST_CASE("serial mode matches the reference loop exactly") {
  for (std::uint64_t seed : {1, 2, 3}) {
    CnfFormula cnf;
    const auto sys = sat_system(seed, 15, 60, &cnf);
    AnnealSchedule s;
    s.b_param = AnnealSchedule::b_for_mean(-0.083703);
    s.tau0 = 0.02;
    NoiseSource n1(seed * 7), n2(seed * 7);
    const auto init = random_spins(15, n1);
    random_spins(15, n2);
    const auto fast = solve_uncolored(sys, s, SolveBudget{20000, std::nullopt}, n1, init);
    const auto ref = reference_uncolored(sys, s, 20000, n2, init);
    CHECK(fast.best_energy == ref.best_energy);
    CHECK(fast.best_step == ref.best_step);
    CHECK(fast.best_spins == ref.best_spins);
    CHECK(fast.final_spins == ref.final_spins);
    CHECK(n1.next() == n2.next());
  }
}

TEST_CASE("singleton color groups match a serial scan") {
  const auto sys = sat_system(4, 12, 45);
  Coloring c;
  for (SpinIndex i = 0; i < 12; ++i) {
    c.groups.push_back({i});
    c.spin_color.push_back(i);
  }
  AnnealSchedule s;
  s.tau0 = 0.01;
  NoiseSource n1(9), n2(9);
  const SpinState init = SpinState::all_up(12);
  const auto fast = solve_colored(sys, s, c, SolveBudget{30000, std::nullopt}, n1, init);
  const auto ref = reference_single_groups(sys, s, 30000, n2, init);
  CHECK(fast.best_energy == ref.best_energy);
  CHECK(fast.best_step == ref.best_step);
  CHECK(fast.final_spins == ref.final_spins);
}

TEST_CASE("run invariants and determinism") {
  const auto sys = sat_system(5, 20, 85);
  AnnealSchedule s;
  s.tau0 = 0.05;
  Coloring c = dsatur_color(conflict_graph(sys));
  for (int mode = 0; mode < 3; ++mode) {
    AnnealSchedule sm = s;
    if (mode == 2) {
      sm.eta = 0.05;
      sm.amplitude_a = 50.0;
    }
    auto run = [&](std::uint64_t seed) {
      NoiseSource noise(seed);
      const auto init = random_spins(20, noise);
      SolveOptions opt{true, 100};
      SolveBudget budget{20000, std::nullopt};
      if (mode == 0) return solve_uncolored(sys, sm, budget, noise, init, opt);
      if (mode == 1) return solve_colored(sys, sm, c, budget, noise, init, opt);
      return solve_async_bernoulli(sys, sm, budget, noise, init, opt);
    };
    const auto a = run(77), b = run(77);
    CHECK(a.best_spins == b.best_spins);
    CHECK(a.event_log.size() == b.event_log.size());
    CHECK(a.best_energy == energy(sys, a.best_spins));
    CHECK(a.final_energy == energy(sys, a.final_spins));
    CHECK(a.best_step <= a.steps_executed);
    for (std::size_t i = 1; i < a.objective_trace.size(); ++i) {
      CHECK(a.objective_trace[i].best_energy <= a.objective_trace[i - 1].best_energy);
      CHECK(a.objective_trace[i].step > a.objective_trace[i - 1].step);
    }
    CHECK(a.objective_trace.back().step == a.steps_executed);
  }
}

TEST_CASE("target energy stops the run") {
  CnfFormula cnf;
  const auto sys = sat_system(6, 20, 80, &cnf);
  const auto enc = cnf_to_ising(cnf);
  NoiseSource noise(4);
  const auto init = random_spins(20, noise);
  AnnealSchedule s;
  s.b_param = AnnealSchedule::b_for_mean(-0.083703);
  const auto r = solve_uncolored(sys, s, SolveBudget{5000000, -80.0}, noise, init);
  REQUIRE(r.reached_target);
  CHECK(r.steps_executed == r.best_step);
  CHECK(satisfied_count(cnf, r.best_spins) == 80);
}

TEST_CASE("uphill acceptance follows B exp(-dE / (2 tau))") {
  // One spin, one linear term: S = J T, dE = 2 S.
  const auto sys = build_clause_system(std::vector<Term>{{{0}, 1.0}}, 1);
  for (double b : {1.0, 0.5}) {
    AnnealSchedule s;
    s.b_param = b;
    s.tau0 = std::log1p(1.0 / s.cap_c);  // tau(0) = 1
    const int n = 100000;
    int flips = 0;
    NoiseSource noise(100);
    for (int t = 0; t < n; ++t) {
      const auto r = solve_uncolored(sys, s, SolveBudget{1, std::nullopt}, noise, SpinState::all_up(1));
      flips += r.final_spins[0] == -1;
    }
    const double tau = temperature(s, 0);
    const double p = b * std::exp(-2.0 * 0.5 / tau);
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(flips / double(n) - p) <= 3 * sigma);
  }
}

TEST_CASE("downhill moves always fire when B >= 1") {
  const auto sys = build_clause_system(std::vector<Term>{{{0}, 1.0}}, 1);
  AnnealSchedule s;
  NoiseSource noise(101);
  for (int t = 0; t < 2000; ++t) {
    const auto r = solve_uncolored(sys, s, SolveBudget{1, std::nullopt}, noise, SpinState({-1}));
    CHECK(r.final_spins[0] == 1);
  }
}

TEST_CASE("planted 3R-3X ground state is reached") {
  NoiseSource gen(8);
  const auto inst = gen_3r3x(10, gen);
  AnnealSchedule s;
  s.b_param = AnnealSchedule::b_for_mean(-0.083703);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    NoiseSource noise(seed + 500);
    const auto init = random_spins(10, noise);
    hits += solve_uncolored(inst.system, s, SolveBudget{1000000, -10.0}, noise, init).reached_target;
  }
  CHECK(hits >= 9);
}

TEST_CASE("longer budgets never raise the median best energy") {
  const auto sys = sat_system(7, 20, 91);
  AnnealSchedule s;
  s.b_param = AnnealSchedule::b_for_mean(-0.083703);
  std::vector<double> medians;
  for (std::uint64_t budget : {1000ULL, 10000ULL, 100000ULL}) {
    std::vector<double> best;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      NoiseSource noise(seed);
      const auto init = random_spins(20, noise);
      best.push_back(solve_uncolored(sys, s, SolveBudget{budget, std::nullopt}, noise, init).best_energy);
    }
    std::sort(best.begin(), best.end());
    medians.push_back(best[24]);
  }
  CHECK(medians[1] <= medians[0]);
  CHECK(medians[2] <= medians[1]);
}

TEST_CASE("asynchronous mode limits") {
  const auto sys = sat_system(9, 20, 80);
  NoiseSource noise(10);
  const auto init = random_spins(20, noise);

  AnnealSchedule frozen;
  frozen.eta = 0.0;
  frozen.amplitude_a = 1e9;
  const auto r = solve_async_bernoulli(sys, frozen, SolveBudget{2000, std::nullopt}, noise, init, {true, 0});
  CHECK(r.event_log.empty());
  CHECK(r.final_spins == init);

  AnnealSchedule open;
  open.eta = 1.0;
  open.amplitude_a = 1e9;
  const auto o = solve_async_bernoulli(sys, open, SolveBudget{10, std::nullopt}, noise, init, {true, 0});
  CHECK(o.event_log.size() > 10);

  AnnealSchedule sparse;
  sparse.tau0 = 1e3 * std::log1p(1.0 / sparse.cap_c);  // tau(0) = 1000
  sparse.delta = 1e-5;
  sparse.b_param = 1.0;
  sparse.eta = 1.0 / 20;
  sparse.amplitude_a = 1e9;
  const std::uint64_t steps = 10000;
  const auto sp = solve_async_bernoulli(sys, sparse, SolveBudget{steps, std::nullopt}, noise, init, {true, 0});
  const double mean = sp.event_log.size() / double(steps);
  CHECK(mean == doctest::Approx(1.0).epsilon(0.05));

  CHECK_THROWS_AS(solve_async_bernoulli(sys, AnnealSchedule{}, SolveBudget{1, std::nullopt}, noise, init),
                  std::logic_error);
}

TEST_CASE("quantized thresholds still anneal") {
  CnfFormula cnf;
  const auto sys = sat_system(10, 20, 80, &cnf);
  AnnealSchedule s;
  s.quantize_16bit = true;
  s.b_param = AnnealSchedule::b_for_mean(-0.083703);
  s.delta = 0.02;
  NoiseSource noise(11);
  const auto init = random_spins(20, noise);
  const auto r = solve_uncolored(sys, s, SolveBudget{2000000, -80.0}, noise, init);
  CHECK(satisfied_count(cnf, r.best_spins) >= 79);
}

TEST_CASE("bad inputs are rejected") {
  const auto sys = sat_system(11, 10, 30);
  NoiseSource noise(12);
  Coloring bad{{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}, std::vector<std::uint32_t>(10, 0)};
  CHECK_THROWS_AS(solve_colored(sys, AnnealSchedule{}, bad, SolveBudget{1, std::nullopt}, noise, SpinState::all_up(10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_uncolored(sys, AnnealSchedule{}, SolveBudget{1, std::nullopt}, noise, SpinState::all_up(9)),
                  std::invalid_argument);
}

}
