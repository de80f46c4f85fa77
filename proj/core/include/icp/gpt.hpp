#pragma once

// Generalized probabilistic theories: states and effects are real coordinate
// vectors, probabilities are Euclidean inner products, and a theory is one of
// four state-space variants plus a catalog of named measurements.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace icp {

using RealVector = std::vector<double>;

/// Tolerance separating modeling error from float noise in membership tests.
inline constexpr double kMembershipTol = 1e-9;
/// Tolerance on probability normalization (measurement sums, outcome sums).
inline constexpr double kNormalizationTol = 1e-12;

struct State {
  RealVector coords;
  std::string theory_id;
};

struct Effect {
  RealVector coords;
  std::string theory_id;
};

struct Measurement {
  std::vector<Effect> effects;
  std::string label;

  std::size_t outcome_count() const noexcept { return effects.size(); }
};

/// Convex hull of finitely many vertices; the effect set is generated by the
/// extreme effects, their complements and the unit effect.
struct PolytopeSpace {
  std::vector<State> vertices;
  std::vector<Effect> extreme_effects;
  Effect unit;
};

/// States (s_1..s_k, 1) with sum |s_i|^p <= 1. `p` may be +infinity (max-norm).
/// Only the k fiducial two-outcome measurements are exposed.
struct NormConstraintSpace {
  double p = 2.0;
  int k = 2;
};

/// Probability vectors over `internal_states` hidden configurations, readable
/// only through the listed coarse-grained measurements.
struct RestrictedClassicalSpace {
  int internal_states = 4;
  std::vector<Measurement> allowed_measurements;
};

/// Density operators on C^hilbert_dim in a real Hermitian-coordinate chart
/// (see quantum.hpp); projective measurements only.
struct QuantumSpace {
  int hilbert_dim = 2;
};

using TheoryVariant =
    std::variant<PolytopeSpace, NormConstraintSpace, RestrictedClassicalSpace, QuantumSpace>;

struct Theory {
  std::string id;
  TheoryVariant variant;
  std::vector<Measurement> measurements;
  /// Filled by catalog constructors so hot paths need not repeat the search.
  std::optional<int> known_observed_dimension;

  std::size_t ambient_dimension() const;
  Effect unit_effect() const;
  const Measurement* find_measurement(std::string_view label) const noexcept;
  std::string_view variant_name() const noexcept;
};

Theory make_polytope_theory(std::string id, std::vector<State> vertices,
                            std::vector<Effect> extreme_effects, Effect unit,
                            std::vector<Measurement> measurements);
Theory make_norm_constraint_theory(std::string id, double p, int k);
Theory make_restricted_classical_theory(std::string id, int internal_states,
                                        std::vector<Measurement> allowed);
Theory make_quantum_theory(std::string id, int hilbert_dim,
                           std::vector<Measurement> measurements);

struct Check {
  bool accepted = true;
  std::string diagnostic;

  explicit operator bool() const noexcept { return accepted; }
};

double dot(std::span<const double> a, std::span<const double> b);

/// e . omega, clamped onto [0,1] when within kMembershipTol of it. Throws
/// DimensionMismatch, or InvalidEffect when the value is further outside.
double apply_effect(const Effect& effect, const State& state);

/// Throws DimensionMismatch / InvalidState for wrong length or non-finite
/// coordinates; otherwise reports membership with a diagnostic.
Check validate_state(const Theory& theory, const State& state);
Check validate_effect(const Theory& theory, const Effect& effect);
Check validate_measurement(const Theory& theory, const Measurement& measurement);

/// Outcome distribution of `measurement` on a valid `state`.
std::vector<double> measure(const Theory& theory, const Measurement& measurement,
                            const State& state);

struct DistinguishabilityCertificate {
  std::vector<State> states;
  Measurement measurement;
  bool verified = false;
};

DistinguishabilityCertificate verify_distinguishable(const Theory& theory,
                                                     std::vector<State> states,
                                                     Measurement measurement);

struct ObservedDimension {
  int d = 1;
  DistinguishabilityCertificate certificate;
  /// True when the search budget ran out and `d` is only a lower bound.
  bool lower_bound_only = false;
  std::string assumption;
};

ObservedDimension observed_dimension(const Theory& theory,
                                     std::uint64_t search_budget = 50'000'000);

/// prod_i (dim_i + 1): bound on the observed dimension of a composite whose
/// components have state spaces of the given dimensions. Throws on empty
/// input, non-positive dims or overflow of 64 bits.
std::uint64_t composite_dimension_bound(std::span<const int> component_state_space_dims);

/// log2 of composite_dimension_bound, computed without overflow.
double composite_information_bound_bits(std::span<const int> component_state_space_dims);

}  // namespace icp
