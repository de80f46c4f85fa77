#pragma once

// Derivative-free search for encodings that maximize extractable information.
//
// One register per measurement, alphabet = outcome count. The search space is
// the box [0,1]^D holding a weight per register cell (normalized to p_cell)
// followed by per-cell state parameters:
//   polytope / restricted classical: convex weights over vertices / internal states
//   norm constraint: s = 2t - 1, pulled radially back into the ball
//   qubit: Bloch vector 2t - 1, normalized when outside the ball
//   quantum d > 2: pure-state amplitudes (re, im) = 2t - 1

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "icp/ensemble.hpp"

namespace icp {

enum class Strategy { Grid, CoordinateDescent, RandomRestart };

std::string_view to_string(Strategy s) noexcept;
/// "grid", "coordinate-descent", "random-restart". Throws InvalidArgument.
Strategy parse_strategy(std::string_view name);

struct OptimizerConfig {
  Strategy strategy = Strategy::CoordinateDescent;
  double resolution = 1e-4;
  /// Objective evaluations allowed per restart.
  std::uint64_t max_evals = 400'000;
  bool equal_gain_constraint = false;
  std::uint64_t seed = 42;
  int restarts = 20;
  int threads = 0;
};

void validate(const OptimizerConfig& config);

struct OptimizeResult {
  CorrelatedEnsemble ensemble;
  ObservableAssignment assignment;
  ICPReport report;
  /// Extractable information minus the equal-gain penalty, as seen by the search.
  double objective = 0.0;
  /// max_i g_i - min_i g_i of the returned report.
  double gain_spread = 0.0;
  bool constraint_satisfied = true;
  std::uint64_t evaluations = 0;
  bool budget_exhausted = false;
  int best_restart = 0;
  std::vector<double> parameters;
};

/// `warm_start`, when non-empty, replaces the starting point of restart 0.
OptimizeResult maximize_extractable(std::shared_ptr<const Theory> theory,
                                    const std::vector<Measurement>& measurements,
                                    const OptimizerConfig& config,
                                    std::span<const double> warm_start = {});

/// Number of search parameters for the theory and measurements.
std::size_t parameter_count(const Theory& theory, const std::vector<Measurement>& measurements);

struct SweepRow {
  double theta = 0.0;
  std::vector<double> gains;
  double gain_sum = 0.0;
  double redundancy = 0.0;
  double extractable = 0.0;
  double bound = 1.0;
  double margin = 0.0;
};

/// Qubit with X and an observable at angle theta from X in the X-Z plane
/// (theta = pi/2 is Z, theta = 0 is X). Each theta maximizes extractable
/// information under equal gains, warm-started from the neighbouring theta
/// on the side of pi/2. Rows come back in input order.
std::vector<SweepRow> qubit_rotation_sweep(std::span<const double> thetas,
                                           const OptimizerConfig& config);

/// `count` evenly spaced angles from 0 to pi/2 inclusive.
std::vector<double> default_sweep_grid(int count = 50);

}  // namespace icp
