#pragma once

// Classically correlated ensembles sum_k p_k omega_k (x) |r_k1><r_k1| (x) ...
// and evaluation of the extractable-information inequality
//   sum_i I(X_i:A_i) - I(A_1:...:A_n) <= log2 d.

#include <memory>
#include <string>
#include <vector>

#include "icp/entropy.hpp"
#include "icp/gpt.hpp"

namespace icp {

struct EnsembleEntry {
  double p = 0.0;
  State state;
  std::vector<int> registers;
};

struct CorrelatedEnsemble {
  std::shared_ptr<const Theory> theory;
  std::vector<EnsembleEntry> entries;
  std::vector<int> register_alphabets;
  std::vector<std::string> register_names;

  std::size_t register_count() const noexcept { return register_alphabets.size(); }
  int register_index(std::string_view name) const;
};

/// Default register names A, B, C, ...; beyond 26 registers "R27", "R28", ...
std::string default_register_name(std::size_t index);

/// Validates probabilities (finite, >= 0, sum 1 within 1e-12), states and
/// register values. Empty `alphabets` infers max value + 1 (at least 2);
/// empty `names` uses the default names.
CorrelatedEnsemble build_ensemble(std::shared_ptr<const Theory> theory,
                                  std::vector<EnsembleEntry> entries,
                                  std::vector<int> alphabets = {},
                                  std::vector<std::string> names = {});

struct ObservablePair {
  Measurement measurement;
  int register_index = 0;
};

struct ObservableAssignment {
  std::vector<ObservablePair> pairs;
};

/// Pairs measurement labels of the ensemble's theory with registers in order
/// (first label to register 0, ...). Throws InvalidArgument on unknown labels.
ObservableAssignment assign_in_order(const Theory& theory, std::span<const std::string> labels);

/// Registers distinct and in range, measurements valid for the theory.
void validate_assignment(const CorrelatedEnsemble& ensemble, const ObservableAssignment& assignment);

/// Table over (outcome of `measurement`, register value).
info::JointTable joint_outcome_table(const CorrelatedEnsemble& ensemble,
                                     const Measurement& measurement, int register_index);

/// Joint distribution of the given registers, row-major.
info::JointTable register_table(const CorrelatedEnsemble& ensemble, std::span<const int> registers);

inline constexpr double kViolationTol = 1e-9;

struct ICPReport {
  std::vector<std::string> labels;
  std::vector<double> gains;
  std::vector<double> raw_gains;
  double redundancy = 0.0;
  double raw_redundancy = 0.0;
  double extractable = 0.0;
  int observed_dim = 1;
  double bound = 0.0;
  double margin = 0.0;
  bool violated = false;
  /// Joint distribution of the assigned registers (row-major over their alphabets).
  std::vector<double> register_marginal;
};

ICPReport evaluate_icp(const CorrelatedEnsemble& ensemble, const ObservableAssignment& assignment);

/// Observed dimension of a theory, using the cached value when present.
int theory_observed_dimension(const Theory& theory);

}  // namespace icp
