#include "icp/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "icp/error.hpp"
#include "icp/gpt.hpp"

namespace icp::info {

namespace {

void validate_probs(std::span<const double> probs) {
  if (probs.empty()) throw Error(ErrorKind::InvalidDistribution, "empty distribution");
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::InvalidDistribution, "probabilities must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "probabilities sum to " << total;
    throw Error(ErrorKind::InvalidDistribution, os.str());
  }
}

std::vector<int> set_union(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.begin(), a.end());
  for (int x : b) {
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  return out;
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  validate_probs(probs_);
}

double entropy_bits(std::span<const double> probs) noexcept {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double shannon_entropy(const Distribution& d) { return entropy_bits(d.probs()); }

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "binary entropy argument outside [0,1]");
  }
  const double pair[2] = {x, 1.0 - x};
  return entropy_bits(pair);
}

// ---------------------------------------------------------------------------

JointTable::JointTable(std::vector<std::string> names, std::vector<int> alphabets,
                       std::vector<double> probs)
    : names_(std::move(names)), alphabets_(std::move(alphabets)), probs_(std::move(probs)) {
  if (names_.size() != alphabets_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "register names and alphabets differ in length");
  }
  std::size_t cells = 1;
  for (int a : alphabets_) {
    if (a < 1) throw Error(ErrorKind::InvalidArgument, "register alphabets must be nonempty");
    cells *= static_cast<std::size_t>(a);
  }
  if (cells != probs_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "table has " + std::to_string(probs_.size()) +
                                                  " cells, alphabets imply " + std::to_string(cells));
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) {
        throw Error(ErrorKind::InvalidArgument, "duplicate register name '" + names_[i] + "'");
      }
    }
  }
  validate_probs(probs_);
}

int JointTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  throw Error(ErrorKind::UnknownRegister, "unknown register '" + std::string(name) + "'");
}

JointTable JointTable::marginal(std::span<const int> registers) const {
  std::vector<std::string> names;
  std::vector<int> alphabets;
  std::size_t cells = 1;
  for (int r : registers) {
    if (r < 0 || static_cast<std::size_t>(r) >= names_.size()) {
      throw Error(ErrorKind::UnknownRegister, "register index " + std::to_string(r));
    }
    names.push_back(names_[static_cast<std::size_t>(r)]);
    alphabets.push_back(alphabets_[static_cast<std::size_t>(r)]);
    cells *= static_cast<std::size_t>(alphabets.back());
  }
  std::vector<double> out(cells, 0.0);
  std::vector<int> digits(names_.size(), 0);
  for (double p : probs_) {
    std::size_t idx = 0;
    for (int r : registers) {
      idx = idx * static_cast<std::size_t>(alphabets_[static_cast<std::size_t>(r)]) +
            static_cast<std::size_t>(digits[static_cast<std::size_t>(r)]);
    }
    out[idx] += p;
    for (std::size_t k = names_.size(); k-- > 0;) {
      if (++digits[k] < alphabets_[k]) break;
      digits[k] = 0;
    }
  }
  // Rounding in the accumulation can push the total a few ulps off; renormalize.
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= total;
  return JointTable(std::move(names), std::move(alphabets), std::move(out));
}

double JointTable::entropy(std::span<const int> registers) const {
  if (registers.empty()) return 0.0;
  return entropy_bits(marginal(registers).probs());
}

double mutual_information(const JointTable& table, std::span<const int> a, std::span<const int> b) {
  const auto ab = set_union(a, b);
  return table.entropy(a) + table.entropy(b) - table.entropy(ab);
}

double mutual_information(const JointTable& table, std::string_view a, std::string_view b) {
  const int ia[] = {table.index_of(a)};
  const int ib[] = {table.index_of(b)};
  return mutual_information(table, ia, ib);
}

double conditional_mutual_information(const JointTable& table, std::span<const int> a,
                                      std::span<const int> b, std::span<const int> c) {
  const auto ac = set_union(a, c);
  const auto bc = set_union(b, c);
  const auto abc = set_union(ac, b);
  return table.entropy(ac) + table.entropy(bc) - table.entropy(abc) - table.entropy(c);
}

double multivariate_mutual_information(const JointTable& table, std::span<const int> registers) {
  if (registers.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "multivariate mutual information needs >= 2 registers");
  }
  double total = 0.0;
  for (int r : registers) {
    const int one[] = {r};
    total += table.entropy(one);
  }
  return total - table.entropy(registers);
}

double multivariate_mutual_information(const JointTable& table,
                                       std::span<const std::string> registers) {
  std::vector<int> idx;
  idx.reserve(registers.size());
  for (const auto& name : registers) idx.push_back(table.index_of(name));
  return multivariate_mutual_information(table, idx);
}

// ---------------------------------------------------------------------------

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "density operator must be a nonempty square matrix");
  }
  if (!matrix_.allFinite()) throw Error(ErrorKind::InvalidState, "non-finite density operator");
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kNormalizationTol) throw Error(ErrorKind::InvalidState, "density operator is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > kNormalizationTol) {
    throw Error(ErrorKind::InvalidState, "density operator trace differs from 1");
  }
  if (hermitian_eigenvalues(matrix_).front() < -kMembershipTol) {
    throw Error(ErrorKind::InvalidState, "density operator has a negative eigenvalue");
  }
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double spectral_entropy_bits(const ComplexMatrix& hermitian) {
  // Diagonal operators (classical registers, classical systems) skip the solver.
  bool diagonal = true;
  for (Eigen::Index i = 0; i < hermitian.rows() && diagonal; ++i) {
    for (Eigen::Index j = 0; j < hermitian.cols(); ++j) {
      if (i != j && hermitian(i, j) != std::complex<double>(0.0, 0.0)) {
        diagonal = false;
        break;
      }
    }
  }
  std::vector<double> ev;
  if (diagonal) {
    for (Eigen::Index i = 0; i < hermitian.rows(); ++i) ev.push_back(hermitian(i, i).real());
  } else {
    ev = hermitian_eigenvalues(hermitian);
  }
  for (double& x : ev) x = std::max(x, 0.0);
  return entropy_bits(ev);
}

double von_neumann_entropy(const DensityOperator& rho) { return spectral_entropy_bits(rho.matrix()); }

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  const std::size_t nf = dims.size();
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (static_cast<std::size_t>(m.rows()) != total || m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "operator size does not match factor dimensions");
  }
  std::vector<bool> kept(nf, false);
  std::size_t kept_dim = 1;
  for (int k : keep) {
    if (k < 0 || static_cast<std::size_t>(k) >= nf) {
      throw Error(ErrorKind::InvalidArgument, "partial trace factor out of range");
    }
    kept[static_cast<std::size_t>(k)] = true;
    kept_dim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);
  }
  auto split = [&](std::size_t index) {
    std::vector<int> digits(nf);
    for (std::size_t f = nf; f-- > 0;) {
      digits[f] = static_cast<int>(index % static_cast<std::size_t>(dims[f]));
      index /= static_cast<std::size_t>(dims[f]);
    }
    return digits;
  };
  auto kept_index = [&](const std::vector<int>& digits) {
    std::size_t idx = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      if (kept[f]) idx = idx * static_cast<std::size_t>(dims[f]) + static_cast<std::size_t>(digits[f]);
    }
    return idx;
  };
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                          static_cast<Eigen::Index>(kept_dim));
  for (std::size_t r = 0; r < total; ++r) {
    const auto dr = split(r);
    for (std::size_t c = 0; c < total; ++c) {
      const auto dc = split(c);
      bool traced_match = true;
      for (std::size_t f = 0; f < nf; ++f) {
        if (!kept[f] && dr[f] != dc[f]) {
          traced_match = false;
          break;
        }
      }
      if (!traced_match) continue;
      out(static_cast<Eigen::Index>(kept_index(dr)), static_cast<Eigen::Index>(kept_index(dc))) +=
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

}  // namespace icp::info
