#pragma once

// Entropy calculus over finite distributions and small density operators.
// All logarithms are base 2 and 0 log 0 = 0.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace icp::info {

/// A validated probability vector (nonnegative, sums to 1 within 1e-12).
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  std::span<const double> probs() const noexcept { return probs_; }
  std::size_t size() const noexcept { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// -sum p log2 p without validation; callers guarantee a distribution.
double entropy_bits(std::span<const double> probs) noexcept;

double shannon_entropy(const Distribution& d);
double binary_entropy(double x);

/// Dense joint distribution over named registers with finite alphabets.
/// Storage is row-major: the last register varies fastest.
class JointTable {
 public:
  JointTable(std::vector<std::string> names, std::vector<int> alphabets, std::vector<double> probs);

  std::size_t register_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& alphabets() const noexcept { return alphabets_; }
  std::span<const double> probs() const noexcept { return probs_; }

  /// Throws UnknownRegister.
  int index_of(std::string_view name) const;

  /// Marginal over `registers` (in the given order).
  JointTable marginal(std::span<const int> registers) const;
  /// H of the marginal over `registers`; an empty set has entropy 0.
  double entropy(std::span<const int> registers) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> alphabets_;
  std::vector<double> probs_;
};

double mutual_information(const JointTable& table, std::string_view a, std::string_view b);
/// I(A:B) between register sets.
double mutual_information(const JointTable& table, std::span<const int> a, std::span<const int> b);
/// I(A:B|C) between register sets.
double conditional_mutual_information(const JointTable& table, std::span<const int> a,
                                      std::span<const int> b, std::span<const int> c);
/// sum_i H(A_i) - H(A_1..A_n); requires at least two registers.
double multivariate_mutual_information(const JointTable& table,
                                       std::span<const std::string> registers);
double multivariate_mutual_information(const JointTable& table, std::span<const int> registers);

using ComplexMatrix = Eigen::MatrixXcd;

/// Hermitian, unit trace (1e-12) and eigenvalues >= -1e-9.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

 private:
  ComplexMatrix matrix_;
};

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
/// Entropy of the spectrum, negative eigenvalues treated as 0; no validation.
double spectral_entropy_bits(const ComplexMatrix& hermitian);

double von_neumann_entropy(const DensityOperator& rho);

/// Partial trace of an operator on the tensor product of factors with sizes
/// `dims`, keeping factors `keep` (ascending order).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

}  // namespace icp::info
