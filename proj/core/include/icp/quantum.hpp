#pragma once

// Real chart for Hermitian operators so that quantum states and effects are
// ordinary GPT coordinate vectors with Tr(E rho) = e . omega.
//
// State chart (length n^2): rho_00..rho_{n-1,n-1}, then for every i<j the pair
// (Re rho_ij, Im rho_ij). The effect chart is identical except that off-diagonal
// pairs carry a factor 2.

#include <complex>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "icp/gpt.hpp"

namespace icp::quantum {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr int kMaxHilbertDim = 8;

RealVector state_coords(const ComplexMatrix& rho);
ComplexMatrix density_matrix(std::span<const double> coords);

RealVector effect_coords(const ComplexMatrix& effect);
ComplexMatrix effect_matrix(std::span<const double> coords);

/// n such that n*n == coord_count; throws DimensionMismatch otherwise.
int hilbert_dim_from_coords(std::size_t coord_count);

State density_state(const std::string& theory_id, const ComplexMatrix& rho);
State pure_state(const std::string& theory_id, const ComplexVector& psi);
/// Qubit state (I + x X + y Y + z Z) / 2.
State bloch_state(const std::string& theory_id, double x, double y, double z);

/// Projective measurement onto the orthonormal columns of `basis`.
Measurement projective_measurement(const std::string& theory_id, const ComplexMatrix& basis,
                                   std::string label);
/// Two-outcome qubit measurement along the Bloch unit vector (x, y, z);
/// outcome 0 is the +1 eigenvalue.
Measurement qubit_axis_measurement(const std::string& theory_id, double x, double y, double z,
                                   std::string label);

}  // namespace icp::quantum
