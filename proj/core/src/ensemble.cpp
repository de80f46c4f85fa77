#include "icp/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "icp/error.hpp"

namespace icp {

std::string default_register_name(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('A' + index));
  return "R" + std::to_string(index + 1);
}

int CorrelatedEnsemble::register_index(std::string_view name) const {
  for (std::size_t i = 0; i < register_names.size(); ++i) {
    if (register_names[i] == name) return static_cast<int>(i);
  }
  throw Error(ErrorKind::UnknownRegister, "unknown register '" + std::string(name) + "'");
}

CorrelatedEnsemble build_ensemble(std::shared_ptr<const Theory> theory,
                                  std::vector<EnsembleEntry> entries, std::vector<int> alphabets,
                                  std::vector<std::string> names) {
  if (!theory) throw Error(ErrorKind::InvalidArgument, "ensemble needs a theory");
  if (entries.empty()) throw Error(ErrorKind::InvalidDistribution, "ensemble has no entries");
  const std::size_t nr = entries.front().registers.size();
  double total = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto& e = entries[k];
    if (!std::isfinite(e.p) || e.p < 0.0) {
      throw Error(ErrorKind::InvalidDistribution,
                  "entry " + std::to_string(k) + " has an invalid probability");
    }
    total += e.p;
    if (e.registers.size() != nr) {
      throw Error(ErrorKind::DimensionMismatch,
                  "entry " + std::to_string(k) + " has a different number of registers");
    }
    e.state.theory_id = theory->id;
    if (auto c = validate_state(*theory, e.state); !c) {
      throw Error(ErrorKind::InvalidState, "entry " + std::to_string(k) + ": " + c.diagnostic);
    }
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os.precision(17);
    os << "ensemble probabilities sum to " << total;
    throw Error(ErrorKind::InvalidDistribution, os.str());
  }
  if (alphabets.empty()) {
    alphabets.assign(nr, 2);
    for (const auto& e : entries) {
      for (std::size_t r = 0; r < nr; ++r) alphabets[r] = std::max(alphabets[r], e.registers[r] + 1);
    }
  }
  if (alphabets.size() != nr) {
    throw Error(ErrorKind::DimensionMismatch, "register alphabets do not match entries");
  }
  for (int a : alphabets) {
    if (a < 1) throw Error(ErrorKind::InvalidArgument, "register alphabets must be positive");
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    for (std::size_t r = 0; r < nr; ++r) {
      const int v = entries[k].registers[r];
      if (v < 0 || v >= alphabets[r]) {
        throw Error(ErrorKind::InvalidArgument, "entry " + std::to_string(k) + " register " +
                                                    std::to_string(r) + " value out of range");
      }
    }
  }
  if (names.empty()) {
    for (std::size_t r = 0; r < nr; ++r) names.push_back(default_register_name(r));
  }
  if (names.size() != nr) throw Error(ErrorKind::DimensionMismatch, "register names do not match");
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw Error(ErrorKind::InvalidArgument, "duplicate register name");
    }
  }
  return CorrelatedEnsemble{std::move(theory), std::move(entries), std::move(alphabets),
                            std::move(names)};
}

ObservableAssignment assign_in_order(const Theory& theory, std::span<const std::string> labels) {
  ObservableAssignment a;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Measurement* m = theory.find_measurement(labels[i]);
    if (m == nullptr) {
      throw Error(ErrorKind::InvalidArgument,
                  "theory '" + theory.id + "' has no measurement '" + labels[i] + "'");
    }
    a.pairs.push_back(ObservablePair{*m, static_cast<int>(i)});
  }
  return a;
}

void validate_assignment(const CorrelatedEnsemble& ensemble, const ObservableAssignment& assignment) {
  if (assignment.pairs.empty()) throw Error(ErrorKind::InvalidArgument, "empty observable assignment");
  for (std::size_t i = 0; i < assignment.pairs.size(); ++i) {
    const int r = assignment.pairs[i].register_index;
    if (r < 0 || static_cast<std::size_t>(r) >= ensemble.register_count()) {
      throw Error(ErrorKind::UnknownRegister, "register index " + std::to_string(r));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (assignment.pairs[j].register_index == r) {
        throw Error(ErrorKind::InvalidArgument, "observable assignment reuses a register");
      }
    }
    if (auto c = validate_measurement(*ensemble.theory, assignment.pairs[i].measurement); !c) {
      throw Error(ErrorKind::InvalidMeasurement,
                  "measurement '" + assignment.pairs[i].measurement.label + "': " + c.diagnostic);
    }
  }
}

namespace {

void renormalize(std::vector<double>& probs) {
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
}

}  // namespace

info::JointTable joint_outcome_table(const CorrelatedEnsemble& ensemble,
                                     const Measurement& measurement, int register_index) {
  if (register_index < 0 || static_cast<std::size_t>(register_index) >= ensemble.register_count()) {
    throw Error(ErrorKind::UnknownRegister, "register index " + std::to_string(register_index));
  }
  const auto r = static_cast<std::size_t>(register_index);
  const auto nx = measurement.outcome_count();
  const auto na = static_cast<std::size_t>(ensemble.register_alphabets[r]);
  std::vector<double> probs(nx * na, 0.0);
  for (const auto& e : ensemble.entries) {
    const auto a = static_cast<std::size_t>(e.registers[r]);
    for (std::size_t x = 0; x < nx; ++x) {
      probs[x * na + a] += e.p * apply_effect(measurement.effects[x], e.state);
    }
  }
  renormalize(probs);
  std::string xname = measurement.label.empty() ? "X" : measurement.label;
  if (xname == ensemble.register_names[r]) xname += "'";
  return info::JointTable({xname, ensemble.register_names[r]},
                          {static_cast<int>(nx), static_cast<int>(na)}, std::move(probs));
}

info::JointTable register_table(const CorrelatedEnsemble& ensemble, std::span<const int> registers) {
  std::vector<std::string> names;
  std::vector<int> alphabets;
  std::size_t cells = 1;
  for (int r : registers) {
    if (r < 0 || static_cast<std::size_t>(r) >= ensemble.register_count()) {
      throw Error(ErrorKind::UnknownRegister, "register index " + std::to_string(r));
    }
    names.push_back(ensemble.register_names[static_cast<std::size_t>(r)]);
    alphabets.push_back(ensemble.register_alphabets[static_cast<std::size_t>(r)]);
    cells *= static_cast<std::size_t>(alphabets.back());
  }
  std::vector<double> probs(cells, 0.0);
  for (const auto& e : ensemble.entries) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < registers.size(); ++k) {
      idx = idx * static_cast<std::size_t>(alphabets[k]) +
            static_cast<std::size_t>(e.registers[static_cast<std::size_t>(registers[k])]);
    }
    probs[idx] += e.p;
  }
  renormalize(probs);
  return info::JointTable(std::move(names), std::move(alphabets), std::move(probs));
}

int theory_observed_dimension(const Theory& theory) {
  if (theory.known_observed_dimension) return *theory.known_observed_dimension;
  return observed_dimension(theory).d;
}

ICPReport evaluate_icp(const CorrelatedEnsemble& ensemble, const ObservableAssignment& assignment) {
  validate_assignment(ensemble, assignment);
  ICPReport rep;
  std::vector<int> regs;
  double total_gain = 0.0;
  for (const auto& pair : assignment.pairs) {
    const auto table = joint_outcome_table(ensemble, pair.measurement, pair.register_index);
    const double g = info::mutual_information(table, table.names()[0], table.names()[1]);
    rep.labels.push_back(pair.measurement.label);
    rep.raw_gains.push_back(g);
    rep.gains.push_back(std::max(g, 0.0));
    total_gain += rep.gains.back();
    regs.push_back(pair.register_index);
  }
  const auto reg = register_table(ensemble, regs);
  rep.register_marginal.assign(reg.probs().begin(), reg.probs().end());
  if (regs.size() >= 2) {
    std::vector<int> all(regs.size());
    std::iota(all.begin(), all.end(), 0);
    rep.raw_redundancy = info::multivariate_mutual_information(reg, all);
  }
  rep.redundancy = std::max(rep.raw_redundancy, 0.0);
  rep.extractable = total_gain - rep.redundancy;
  rep.observed_dim = theory_observed_dimension(*ensemble.theory);
  rep.bound = std::log2(static_cast<double>(rep.observed_dim));
  rep.margin = rep.bound - rep.extractable;
  rep.violated = rep.margin < -kViolationTol;
  return rep;
}

}  // namespace icp
