#include "icp/quantum.hpp"

#include <cmath>

#include "icp/error.hpp"

namespace icp::quantum {

namespace {

RealVector to_chart(const ComplexMatrix& m, double off_diagonal_scale) {
  const auto n = m.rows();
  if (m.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "hermitian chart requires a square matrix");
  }
  RealVector out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(m(i, i).real());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out.push_back(off_diagonal_scale * m(i, j).real());
      out.push_back(off_diagonal_scale * m(i, j).imag());
    }
  }
  return out;
}

ComplexMatrix from_chart(std::span<const double> coords, double off_diagonal_scale) {
  const int n = hilbert_dim_from_coords(coords.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) m(i, i) = coords[k++];
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> z(coords[k] / off_diagonal_scale,
                                   coords[k + 1] / off_diagonal_scale);
      k += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

}  // namespace

int hilbert_dim_from_coords(std::size_t coord_count) {
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(coord_count))));
  if (n < 1 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != coord_count) {
    throw Error(ErrorKind::DimensionMismatch,
                "coordinate count " + std::to_string(coord_count) + " is not a square");
  }
  return n;
}

RealVector state_coords(const ComplexMatrix& rho) { return to_chart(rho, 1.0); }
ComplexMatrix density_matrix(std::span<const double> coords) { return from_chart(coords, 1.0); }
RealVector effect_coords(const ComplexMatrix& effect) { return to_chart(effect, 2.0); }
ComplexMatrix effect_matrix(std::span<const double> coords) { return from_chart(coords, 2.0); }

State density_state(const std::string& theory_id, const ComplexMatrix& rho) {
  return State{state_coords(rho), theory_id};
}

State pure_state(const std::string& theory_id, const ComplexVector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::InvalidState, "pure state vector must be nonzero and finite");
  }
  const ComplexVector v = psi / norm;
  return density_state(theory_id, v * v.adjoint());
}

State bloch_state(const std::string& theory_id, double x, double y, double z) {
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + z);
  rho(1, 1) = 0.5 * (1.0 - z);
  rho(0, 1) = std::complex<double>(0.5 * x, -0.5 * y);
  rho(1, 0) = std::complex<double>(0.5 * x, 0.5 * y);
  return density_state(theory_id, rho);
}

Measurement projective_measurement(const std::string& theory_id, const ComplexMatrix& basis,
                                   std::string label) {
  Measurement m;
  m.label = std::move(label);
  for (Eigen::Index c = 0; c < basis.cols(); ++c) {
    const ComplexVector v = basis.col(c);
    m.effects.push_back(Effect{effect_coords(v * v.adjoint()), theory_id});
  }
  return m;
}

Measurement qubit_axis_measurement(const std::string& theory_id, double x, double y, double z,
                                   std::string label) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!(norm > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "measurement axis must be nonzero");
  }
  x /= norm;
  y /= norm;
  z /= norm;
  // Projector onto the +1 eigenspace of n.sigma is (I + n.sigma)/2.
  ComplexMatrix plus(2, 2);
  plus(0, 0) = 0.5 * (1.0 + z);
  plus(1, 1) = 0.5 * (1.0 - z);
  plus(0, 1) = std::complex<double>(0.5 * x, -0.5 * y);
  plus(1, 0) = std::complex<double>(0.5 * x, 0.5 * y);
  const ComplexMatrix minus = ComplexMatrix::Identity(2, 2) - plus;
  Measurement m;
  m.label = std::move(label);
  m.effects.push_back(Effect{effect_coords(plus), theory_id});
  m.effects.push_back(Effect{effect_coords(minus), theory_id});
  return m;
}

}  // namespace icp::quantum
