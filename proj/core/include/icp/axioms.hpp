#pragma once

// Randomized verification of the entropy axioms the information-content bound
// relies on:
//   (i)   I(S:F) = H(S) - H(S|F)
//   (ii)  H(S) <= log2 d
//   (iii) H(S|C) >= 0 for classical C
//   (iv)  H(SA) + H(SB) >= H(SAB) + H(S)
//   (v)   I(S:A) >= I(X:A) for a measurement outcome X of S
//
// Axiom (iv) is checked in the direction that the two-observable derivation
// actually uses. The reversed inequality is tracked separately as
// `reversed_direction_max_violation` so reports can show it fails.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace icp::info {

enum class EntropyKind { Shannon, VonNeumann };
enum class Axiom { I, II, III, IV, V };

std::string_view to_string(Axiom axiom) noexcept;
std::string_view to_string(EntropyKind kind) noexcept;

inline constexpr double kAxiomTol = 1e-9;

struct AxiomReport {
  Axiom axiom = Axiom::I;
  int trials = 0;
  /// Largest signed excess of the axiom's violating side over the other side;
  /// negative values mean every trial held with slack.
  double max_violation = 0.0;
  bool passed = false;
  std::optional<double> reversed_direction_max_violation;
};

/// Runs every axiom on `trials` random instances. Shannon instances are
/// classical joint tables; von Neumann instances are classical-quantum states
/// of total dimension <= 8 with random projective measurements for (v).
std::vector<AxiomReport> axiom_suite(EntropyKind kind, int trials, std::uint64_t seed,
                                     int threads = 0);

/// Signed violation of axiom (ii) for a single distribution and dimension d.
double axiom_ii_violation(std::span<const double> probs, int d);

}  // namespace icp::info
