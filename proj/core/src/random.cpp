#include "icp/random.hpp"

#include <cmath>
#include <complex>

namespace icp::random {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Engine make_engine(std::uint64_t seed, std::uint64_t index) {
  const auto s = derive_seed(seed, index);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Engine(seq);
}

std::vector<double> flat_simplex(Engine& rng, std::size_t n) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> out(n);
  double total = 0.0;
  for (auto& x : out) {
    x = exp1(rng);
    total += x;
  }
  for (auto& x : out) x /= total;
  return out;
}

Eigen::MatrixXcd haar_unitary(Engine& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = std::complex<double>(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const auto d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

Eigen::MatrixXcd random_density(Engine& rng, int n) {
  const auto spectrum = flat_simplex(rng, static_cast<std::size_t>(n));
  const auto u = haar_unitary(rng, n);
  Eigen::VectorXcd lam(n);
  for (int i = 0; i < n; ++i) lam(i) = spectrum[static_cast<std::size_t>(i)];
  Eigen::MatrixXcd rho = u * lam.asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return rho;
}

}  // namespace icp::random
