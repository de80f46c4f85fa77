#pragma once

// Seed-controlled random instance generation. Every consumer derives an
// independent engine per trial from (seed, index), so fan-out never changes
// the sampled instances.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace icp::random {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;
Engine make_engine(std::uint64_t seed, std::uint64_t index);

/// Uniform sample from the probability simplex with n vertices.
std::vector<double> flat_simplex(Engine& rng, std::size_t n);

/// Haar-random unitary via QR of a complex Ginibre matrix with phase fix.
Eigen::MatrixXcd haar_unitary(Engine& rng, int n);

/// Spectrum from the flat simplex, eigenbasis Haar-random.
Eigen::MatrixXcd random_density(Engine& rng, int n);

}  // namespace icp::random
