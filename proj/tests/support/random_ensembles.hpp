#pragma once

// Random correlated ensembles shared by the unit and acceptance suites.

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "icp/catalog.hpp"
#include "icp/ensemble.hpp"
#include "icp/error.hpp"
#include "icp/quantum.hpp"
#include "icp/random.hpp"

namespace icp::testing {

struct RandomInstance {
  CorrelatedEnsemble ensemble;
  ObservableAssignment assignment;
};

/// Random point of a polytope or a random density operator, depending on
/// the theory.
inline State random_state(random::Engine& rng, const Theory& theory) {
  if (const auto* poly = std::get_if<PolytopeSpace>(&theory.variant)) {
    const auto w = random::flat_simplex(rng, poly->vertices.size());
    RealVector c(poly->vertices.front().coords.size(), 0.0);
    for (std::size_t v = 0; v < w.size(); ++v) {
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += w[v] * poly->vertices[v].coords[i];
    }
    return State{c, theory.id};
  }
  if (const auto* rc = std::get_if<RestrictedClassicalSpace>(&theory.variant)) {
    return State{random::flat_simplex(rng, static_cast<std::size_t>(rc->internal_states)), theory.id};
  }
  if (const auto* q = std::get_if<QuantumSpace>(&theory.variant)) {
    return quantum::density_state(theory.id, random::random_density(rng, q->hilbert_dim));
  }
  throw Error(ErrorKind::NotApplicable, "no random state sampler for " + theory.id);
}

/// Full product of register values, each cell with its own random state and
/// a flat-simplex weight. Measurements are assigned to registers in order and
/// each register's alphabet is its measurement's outcome count, or a random
/// 2 or 3 when `random_alphabets` is set.
inline RandomInstance random_instance(random::Engine& rng, std::shared_ptr<const Theory> theory,
                                      const std::vector<Measurement>& measurements,
                                      bool random_alphabets = false) {
  std::vector<int> alphabets;
  std::uniform_int_distribution<int> two_or_three(2, 3);
  for (const auto& m : measurements) {
    alphabets.push_back(random_alphabets ? two_or_three(rng) : static_cast<int>(m.outcome_count()));
  }
  std::size_t cells = 1;
  for (int a : alphabets) cells *= static_cast<std::size_t>(a);
  const auto w = random::flat_simplex(rng, cells);
  std::vector<EnsembleEntry> entries;
  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<int> regs(alphabets.size());
    std::size_t rest = c;
    for (std::size_t r = alphabets.size(); r-- > 0;) {
      regs[r] = static_cast<int>(rest % static_cast<std::size_t>(alphabets[r]));
      rest /= static_cast<std::size_t>(alphabets[r]);
    }
    entries.push_back({w[c], random_state(rng, *theory), regs});
  }
  double total = 0.0;
  for (const auto& e : entries) total += e.p;
  for (auto& e : entries) e.p /= total;
  RandomInstance out;
  out.ensemble = build_ensemble(theory, std::move(entries), alphabets);
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    out.assignment.pairs.push_back({measurements[i], static_cast<int>(i)});
  }
  return out;
}

/// Two-outcome qubit observable along a uniformly random Bloch direction.
inline Measurement random_qubit_axis(random::Engine& rng, const std::string& label) {
  std::normal_distribution<double> g;
  double x = g(rng), y = g(rng), z = g(rng);
  const double n = std::sqrt(x * x + y * y + z * z);
  return quantum::qubit_axis_measurement("qubit", x / n, y / n, z / n, label);
}

}  // namespace icp::testing
