#include "icp/proof_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "icp/error.hpp"
#include "icp/quantum.hpp"

namespace icp::info {

std::string_view to_string(Relation r) noexcept {
  switch (r) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

const ChainStep* ProofChainLedger::find(std::string_view id) const noexcept {
  for (const auto& s : steps) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

namespace {

/// Entropy of a (mixed) system state given by its coordinates.
class SystemEntropy {
 public:
  explicit SystemEntropy(const Theory& theory) {
    if (const auto* poly = std::get_if<PolytopeSpace>(&theory.variant)) {
      const auto n = static_cast<Eigen::Index>(poly->unit.coords.size());
      if (static_cast<Eigen::Index>(poly->vertices.size()) != n) {
        throw Error(ErrorKind::NotApplicable,
                    "theory '" + theory.id + "' is not a simplex; it has no global entropy");
      }
      Eigen::MatrixXd v(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
          v(i, j) = poly->vertices[static_cast<std::size_t>(j)].coords[static_cast<std::size_t>(i)];
        }
      }
      barycentric_ = v.inverse();
      kind_ = Kind::Simplex;
    } else if (std::holds_alternative<RestrictedClassicalSpace>(theory.variant)) {
      kind_ = Kind::Internal;
    } else if (std::holds_alternative<QuantumSpace>(theory.variant)) {
      kind_ = Kind::Quantum;
    } else {
      throw Error(ErrorKind::NotApplicable,
                  "theory '" + theory.id + "' has no global entropy; only outcome entropies exist");
    }
  }

  double operator()(const RealVector& coords) const {
    switch (kind_) {
      case Kind::Simplex: {
        const Eigen::Map<const Eigen::VectorXd> w(coords.data(),
                                                   static_cast<Eigen::Index>(coords.size()));
        const Eigen::VectorXd lambda = barycentric_ * w;
        std::vector<double> p(lambda.data(), lambda.data() + lambda.size());
        for (double& x : p) x = std::max(x, 0.0);
        return entropy_bits(p);
      }
      case Kind::Internal: {
        std::vector<double> p(coords);
        for (double& x : p) x = std::max(x, 0.0);
        return entropy_bits(p);
      }
      case Kind::Quantum:
        return spectral_entropy_bits(quantum::density_matrix(coords));
    }
    return 0.0;
  }

 private:
  enum class Kind { Simplex, Internal, Quantum };
  Kind kind_ = Kind::Simplex;
  Eigen::MatrixXd barycentric_;
};

double register_entropy(const CorrelatedEnsemble& ensemble, std::span<const int> registers) {
  if (registers.empty()) return 0.0;
  return entropy_bits(register_table(ensemble, registers).probs());
}

double cq_entropy(const CorrelatedEnsemble& ensemble, const SystemEntropy& hs,
                  std::span<const int> registers) {
  std::map<std::vector<int>, std::pair<double, RealVector>> groups;
  const std::size_t n = ensemble.theory->ambient_dimension();
  for (const auto& e : ensemble.entries) {
    std::vector<int> key;
    for (int r : registers) key.push_back(e.registers[static_cast<std::size_t>(r)]);
    auto& [p, coords] = groups[key];
    if (coords.empty()) coords.assign(n, 0.0);
    p += e.p;
    for (std::size_t c = 0; c < n; ++c) coords[c] += e.p * e.state.coords[c];
  }
  double h = 0.0;
  std::vector<double> pr;
  for (auto& [key, group] : groups) {
    auto& [p, coords] = group;
    pr.push_back(p);
    if (p <= 0.0) continue;
    for (double& c : coords) c /= p;
    h += p * hs(coords);
  }
  const double total = std::accumulate(pr.begin(), pr.end(), 0.0);
  for (double& p : pr) p /= total;
  return h + entropy_bits(pr);
}

std::vector<int> concat(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void add(ProofChainLedger& ledger, std::string id, std::string statement, Relation rel, double lhs,
         double rhs) {
  double margin = 0.0;
  switch (rel) {
    case Relation::LessEqual: margin = rhs - lhs; break;
    case Relation::GreaterEqual: margin = lhs - rhs; break;
    case Relation::Equal: margin = -std::abs(lhs - rhs); break;
  }
  ledger.steps.push_back(ChainStep{std::move(id), std::move(statement), rel, lhs, rhs, margin});
}

}  // namespace

double system_register_entropy(const CorrelatedEnsemble& ensemble, std::span<const int> registers) {
  const SystemEntropy hs(*ensemble.theory);
  return cq_entropy(ensemble, hs, registers);
}

ProofChainLedger proof_chain_check(const CorrelatedEnsemble& ensemble,
                                   const ObservableAssignment& assignment) {
  validate_assignment(ensemble, assignment);
  const SystemEntropy hs(*ensemble.theory);
  const auto report = evaluate_icp(ensemble, assignment);

  std::vector<int> regs;
  for (const auto& p : assignment.pairs) regs.push_back(p.register_index);
  const std::size_t n = regs.size();

  auto h_s = [&](std::span<const int> r) { return cq_entropy(ensemble, hs, r); };
  auto h_r = [&](std::span<const int> r) { return register_entropy(ensemble, r); };
  const double hs0 = h_s({});
  auto i_s = [&](std::span<const int> r) { return hs0 + h_r(r) - h_s(r); };

  ProofChainLedger ledger;
  ledger.theory_id = ensemble.theory->id;
  ledger.observables = static_cast<int>(n);
  ledger.bound = report.bound;

  const double i_all = i_s(regs);
  add(ledger, "upper.conditional", "I(S:A_1..A_n) <= H(S)", Relation::LessEqual, i_all, hs0);
  add(ledger, "upper.dimension", "H(S) <= log2 d", Relation::LessEqual, hs0, report.bound);

  // Chain rule: I(S:A_1..A_n) = sum_k I(S:A_k | A_<k).
  double chain_sum = 0.0;
  std::vector<double> cond(n, 0.0), joint_with_s(n, 0.0), classical(n, 0.0), single(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::span<const int> prev(regs.data(), k);
    const std::span<const int> cur(regs.data() + k, 1);
    const auto prev_cur = concat(prev, cur);
    cond[k] = h_s(prev) + h_r(prev_cur) - h_s(prev_cur) - h_r(prev);
    chain_sum += cond[k];
    joint_with_s[k] = h_s(prev) + h_r(cur) - h_s(prev_cur);
    classical[k] = h_r(prev) + h_r(cur) - h_r(prev_cur);
    single[k] = i_s(cur);
  }
  add(ledger, "chain.rule", "I(S:A_1..A_n) = sum_k I(S:A_k|A_<k)", Relation::Equal, i_all,
      chain_sum);

  double classical_sum = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const std::string tag = std::to_string(k + 1);
    add(ledger, "chain." + tag, "I(S:A_k|A_<k) = I(A_<k S:A_k) - I(A_<k:A_k), k=" + tag,
        Relation::Equal, cond[k], joint_with_s[k] - classical[k]);
    add(ledger, "superadditivity." + tag, "I(A_<k S:A_k) >= I(S:A_k), k=" + tag,
        Relation::GreaterEqual, joint_with_s[k], single[k]);
    classical_sum += classical[k];
  }
  double redundancy = 0.0;
  if (n >= 2) {
    redundancy = -h_r(regs);
    for (int r : regs) {
      const int one[] = {r};
      redundancy += h_r(one);
    }
    add(ledger, "classical.identity", "sum_k I(A_<k:A_k) = I(A_1:...:A_n)", Relation::Equal,
        classical_sum, redundancy);
  }
  const double single_sum = std::accumulate(single.begin(), single.end(), 0.0);
  add(ledger, "combined", "I(S:A_1..A_n) >= sum_k I(S:A_k) - I(A_1:...:A_n)",
      Relation::GreaterEqual, i_all, single_sum - redundancy);

  for (std::size_t k = 0; k < n; ++k) {
    const std::string tag = std::to_string(k + 1);
    add(ledger, "processing." + tag, "I(S:A_k) >= I(X_k:A_k), k=" + tag, Relation::GreaterEqual,
        single[k], report.raw_gains[k]);
  }
  double gains = std::accumulate(report.raw_gains.begin(), report.raw_gains.end(), 0.0);
  ledger.final_lhs = gains - report.raw_redundancy;
  add(ledger, "final", "sum_k I(X_k:A_k) - I(A_1:...:A_n) <= log2 d", Relation::LessEqual,
      ledger.final_lhs, report.bound);

  ledger.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : ledger.steps) ledger.min_margin = std::min(ledger.min_margin, s.margin);
  return ledger;
}

}  // namespace icp::info
