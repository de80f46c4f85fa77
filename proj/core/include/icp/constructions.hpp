#pragma once

// Concrete encodings that witness (or fail to witness) violations of the
// extractable-information bound, each with analytic crosschecks.

#include <map>
#include <string>
#include <vector>

#include "icp/ensemble.hpp"
#include "icp/optimizer.hpp"

namespace icp::constructions {

struct ViolationCertificate {
  std::string name;
  std::string theory_id;
  CorrelatedEnsemble ensemble;
  ObservableAssignment assignment;
  ICPReport report;
  /// Analytic values and the matching direct evaluations (same keys).
  std::map<std::string, double> closed_form;
  std::map<std::string, double> direct;
  double crosscheck_max_abs_diff = 0.0;
  /// 1e-12 for exact constructions, looser for optimizer-derived ones.
  double crosscheck_tolerance = 1e-12;
  std::string notes;

  bool crosscheck_passed() const noexcept {
    return crosscheck_max_abs_diff <= crosscheck_tolerance;
  }
};

/// Recomputes crosscheck_max_abs_diff from closed_form and direct.
void finalize_crosscheck(ViolationCertificate& cert);

ViolationCertificate sbit_violation();
ViolationCertificate hbit_violation();
/// Equal-gain maximization over classical-bit encodings.
ViolationCertificate classical_bit_analysis(const OptimizerConfig& config = {});
/// Four encoding states on the X-Z great circle at 45 degrees.
ViolationCertificate qubit_rac_construction();
/// Information stored only in X eigenstates.
ViolationCertificate qubit_single_species();

struct PgnstSearchConfig {
  int grid_points = 100'000;
  /// Smallest 1 - s_x on the log-spaced grid.
  double min_gap = 1e-15;
  double epsilon = 0.1;
  double window_low = 1e-8;
  double window_high = 1e-2;
  int window_points = 2'000;
};

struct PgnstMinimum {
  double s_x = 0.0;
  double s_z = 0.0;
  double entropy_sum = 0.0;
};

/// H(X) + H(Z) on the saturating boundary as a function of s_x in [0, 1].
double pgnst_boundary_entropy_sum(double p, double s_x);
/// Minimizes over the boundary: log-spaced grid in 1 - s_x, then golden
/// section refinement. p = infinity returns the corner (1, 1) with value 0.
PgnstMinimum pgnst_min_entropy_sum(double p, const PgnstSearchConfig& config = {});
/// Symmetric four-state ensemble at the minimizing boundary point.
ViolationCertificate pgnst_violation(double p, const PgnstSearchConfig& config = {});

struct BoundPoint {
  double gap = 0.0;  // 1 - s_x
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct PgnstBoundLedger {
  double p = 0.0;
  double epsilon = 0.0;
  std::vector<BoundPoint> points;
  bool pointwise = true;
  bool ratio_increasing = true;
  double lhs_at_one = 0.0;
  double rhs_at_one = 0.0;
};

/// ((1-s_x)/2)^(1+eps) < (1/4)(1-s_x^p)^(2/p) on a log grid of 1 - s_x in
/// the config window, plus monotone growth of the ratio as s_x -> 1.
/// Requires (1 + eps) p > 2.
PgnstBoundLedger pgnst_bound_check(double p, double epsilon, const PgnstSearchConfig& config = {});

/// (1/2)^(1/p).
double rac_recovery_paper(double p);
/// (1 + s)/2 for the largest symmetric s with 2 s^p <= 1, found by bisection.
double rac_recovery_derived(double p);

ViolationCertificate polygon_violation(int n);
/// Closed-form p(Z=0|B=0) and p(Z=1|B=1) of the polygon construction.
std::pair<double, double> polygon_conditionals(int n);

struct MismatchRecord {
  int n = 0;
  int measurement_dimension = 0;
  int information_dimension = 0;
  bool mismatch = false;
};

MismatchRecord polygon_mismatch(int n);

struct CompositeGbitRecord {
  int n = 0;
  double p_rec = 0.0;
  double encoded_bits = 0.0;
  double extractable = 0.0;
  double bound = 0.0;
  bool violated = false;
};

CompositeGbitRecord composite_gbit_extractable(int n);
/// Smallest n in 1..max_n with a violation; 0 if none.
int minimal_violating_gbits(int max_n = 64);

}  // namespace icp::constructions
