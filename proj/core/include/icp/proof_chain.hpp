#pragma once

// Step-by-step numerical check of the derivation of
//   sum_i I(X_i:A_i) - I(A_1:...:A_n) <= I(S:A_1..A_n) <= H(S) <= log2 d
// on classical-quantum ensembles. System entropies are Shannon entropies of
// simplex coordinates (classical theories) or von Neumann entropies (quantum).

#include <string>
#include <vector>

#include "icp/ensemble.hpp"

namespace icp::info {

enum class Relation { LessEqual, GreaterEqual, Equal };

std::string_view to_string(Relation r) noexcept;

struct ChainStep {
  std::string id;
  std::string statement;
  Relation relation = Relation::LessEqual;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs for <=, lhs - rhs for >=, -|lhs - rhs| for =.
  double margin = 0.0;
};

struct ProofChainLedger {
  std::string theory_id;
  int observables = 0;
  std::vector<ChainStep> steps;
  double min_margin = 0.0;
  /// sum_i I(X_i:A_i) - I(A_1:...:A_n)
  double final_lhs = 0.0;
  double bound = 0.0;

  bool holds(double tol = 1e-9) const noexcept { return min_margin >= -tol; }
  const ChainStep* find(std::string_view id) const noexcept;
};

/// Throws NotApplicable for theories without a global entropy (non-simplex
/// polytopes, norm-constraint theories).
ProofChainLedger proof_chain_check(const CorrelatedEnsemble& ensemble,
                                   const ObservableAssignment& assignment);

/// H(S, registers) of the classical-quantum state; an empty register set
/// gives H(S).
double system_register_entropy(const CorrelatedEnsemble& ensemble, std::span<const int> registers);

}  // namespace icp::info
