#include "icp/gpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "icp/error.hpp"
#include "icp/quantum.hpp"

namespace icp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Check reject(std::string message) { return Check{false, std::move(message)}; }

void require_finite(std::span<const double> coords, const char* what) {
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::InvalidState, std::string(what) + " has non-finite coordinates");
    }
  }
}

void require_length(const Theory& theory, std::size_t length, const char* what) {
  if (length != theory.ambient_dimension()) {
    std::ostringstream os;
    os << what << " has " << length << " coordinates, theory '" << theory.id << "' expects "
       << theory.ambient_dimension();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

RealVector unit_vector(std::size_t n, std::size_t i) {
  RealVector v(n, 0.0);
  v[i] = 1.0;
  return v;
}

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double p_norm(std::span<const double> v, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Theory

std::size_t Theory::ambient_dimension() const {
  return std::visit(
      overloaded{
          [](const PolytopeSpace& s) { return s.unit.coords.size(); },
          [](const NormConstraintSpace& s) { return static_cast<std::size_t>(s.k) + 1; },
          [](const RestrictedClassicalSpace& s) {
            return static_cast<std::size_t>(s.internal_states);
          },
          [](const QuantumSpace& s) {
            return static_cast<std::size_t>(s.hilbert_dim) * static_cast<std::size_t>(s.hilbert_dim);
          },
      },
      variant);
}

Effect Theory::unit_effect() const {
  return std::visit(
      overloaded{
          [](const PolytopeSpace& s) { return s.unit; },
          [this](const NormConstraintSpace& s) {
            return Effect{unit_vector(static_cast<std::size_t>(s.k) + 1, s.k), id};
          },
          [this](const RestrictedClassicalSpace& s) {
            return Effect{RealVector(static_cast<std::size_t>(s.internal_states), 1.0), id};
          },
          [this](const QuantumSpace& s) {
            return Effect{quantum::effect_coords(
                              quantum::ComplexMatrix::Identity(s.hilbert_dim, s.hilbert_dim)),
                          id};
          },
      },
      variant);
}

const Measurement* Theory::find_measurement(std::string_view label) const noexcept {
  for (const auto& m : measurements) {
    if (m.label == label) return &m;
  }
  return nullptr;
}

std::string_view Theory::variant_name() const noexcept {
  return std::visit(overloaded{
                        [](const PolytopeSpace&) { return std::string_view("polytope"); },
                        [](const NormConstraintSpace&) { return std::string_view("norm_constraint"); },
                        [](const RestrictedClassicalSpace&) {
                          return std::string_view("restricted_classical");
                        },
                        [](const QuantumSpace&) { return std::string_view("quantum"); },
                    },
                    variant);
}

namespace {

void require_valid_measurements(const Theory& theory) {
  for (const auto& m : theory.measurements) {
    if (auto c = validate_measurement(theory, m); !c) {
      throw Error(ErrorKind::InvalidMeasurement,
                  "measurement '" + m.label + "' of theory '" + theory.id + "': " + c.diagnostic);
    }
  }
}

}  // namespace

Theory make_polytope_theory(std::string id, std::vector<State> vertices,
                            std::vector<Effect> extreme_effects, Effect unit,
                            std::vector<Measurement> measurements) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidArgument, "polytope needs vertices");
  const std::size_t n = unit.coords.size();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].coords.size() != n) {
      throw Error(ErrorKind::DimensionMismatch, "polytope vertex length differs from unit effect");
    }
    for (std::size_t j = 0; j < i; ++j) {
      double diff = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        diff = std::max(diff, std::abs(vertices[i].coords[c] - vertices[j].coords[c]));
      }
      if (diff <= kMembershipTol) {
        throw Error(ErrorKind::InvalidArgument, "polytope vertices must be pairwise distinct");
      }
    }
  }
  for (auto& v : vertices) v.theory_id = id;
  for (auto& e : extreme_effects) e.theory_id = id;
  unit.theory_id = id;
  Theory t{id, PolytopeSpace{std::move(vertices), std::move(extreme_effects), std::move(unit)},
           std::move(measurements), std::nullopt};
  const auto& space = std::get<PolytopeSpace>(t.variant);
  for (const auto& v : space.vertices) {
    if (auto c = validate_state(t, v); !c) {
      throw Error(ErrorKind::InvalidState, "polytope vertex rejected: " + c.diagnostic);
    }
  }
  require_valid_measurements(t);
  return t;
}

Theory make_norm_constraint_theory(std::string id, double p, int k) {
  if (std::isnan(p) || p < 2.0) {
    throw Error(ErrorKind::InvalidArgument, "norm-constraint exponent p must be >= 2");
  }
  if (k < 2 || k > 3) {
    throw Error(ErrorKind::InvalidArgument, "norm-constraint theories support k in {2, 3}");
  }
  Theory t{id, NormConstraintSpace{p, k}, {}, std::nullopt};
  static constexpr const char* kNames[] = {"X", "Z", "Y"};
  const auto n = static_cast<std::size_t>(k) + 1;
  for (int i = 0; i < k; ++i) {
    RealVector plus(n, 0.0);
    RealVector minus(n, 0.0);
    plus[static_cast<std::size_t>(i)] = 0.5;
    minus[static_cast<std::size_t>(i)] = -0.5;
    plus[n - 1] = 0.5;
    minus[n - 1] = 0.5;
    t.measurements.push_back(Measurement{{Effect{plus, id}, Effect{minus, id}}, kNames[i]});
  }
  return t;
}

Theory make_restricted_classical_theory(std::string id, int internal_states,
                                        std::vector<Measurement> allowed) {
  if (internal_states < 1) {
    throw Error(ErrorKind::InvalidArgument, "restricted classical theory needs internal states");
  }
  for (auto& m : allowed) {
    for (auto& e : m.effects) e.theory_id = id;
  }
  Theory t{id, RestrictedClassicalSpace{internal_states, allowed}, allowed, std::nullopt};
  // Coarse-grainings of the simplex: every effect is a 0/1 indicator vector.
  for (const auto& m : allowed) {
    for (const auto& e : m.effects) {
      for (double c : e.coords) {
        if (c != 0.0 && c != 1.0) {
          throw Error(ErrorKind::InvalidMeasurement,
                      "measurement '" + m.label + "' is not a coarse-graining of the simplex");
        }
      }
    }
  }
  require_valid_measurements(t);
  return t;
}

Theory make_quantum_theory(std::string id, int hilbert_dim, std::vector<Measurement> measurements) {
  if (hilbert_dim < 2 || hilbert_dim > quantum::kMaxHilbertDim) {
    throw Error(ErrorKind::InvalidArgument, "quantum theories support Hilbert dimension 2..8");
  }
  for (auto& m : measurements) {
    for (auto& e : m.effects) e.theory_id = id;
  }
  Theory t{id, QuantumSpace{hilbert_dim}, std::move(measurements), std::nullopt};
  require_valid_measurements(t);
  return t;
}

// ---------------------------------------------------------------------------
// Effects and states

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "vector lengths " + std::to_string(a.size()) +
                                                  " and " + std::to_string(b.size()) + " differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double apply_effect(const Effect& effect, const State& state) {
  const double v = dot(effect.coords, state.coords);
  if (!(v >= -kMembershipTol && v <= 1.0 + kMembershipTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "effect evaluates to " << v << ", outside [0,1]";
    throw Error(ErrorKind::InvalidEffect, os.str());
  }
  return std::clamp(v, 0.0, 1.0);
}

Check validate_state(const Theory& theory, const State& state) {
  require_length(theory, state.coords.size(), "state");
  require_finite(state.coords, "state");
  return std::visit(
      overloaded{
          [&](const PolytopeSpace& s) -> Check {
            const double norm = dot(s.unit.coords, state.coords);
            if (!near(norm, 1.0, kMembershipTol)) {
              std::ostringstream os;
              os.precision(17);
              os << "unit effect evaluates to " << norm << ", expected 1";
              return reject(os.str());
            }
            for (std::size_t i = 0; i < s.extreme_effects.size(); ++i) {
              const double v = dot(s.extreme_effects[i].coords, state.coords);
              if (v < -kMembershipTol || v > 1.0 + kMembershipTol) {
                std::ostringstream os;
                os.precision(17);
                os << "extreme effect " << (i + 1) << " evaluates to " << v << ", outside [0,1]";
                return reject(os.str());
              }
            }
            return {};
          },
          [&](const NormConstraintSpace& s) -> Check {
            const auto k = static_cast<std::size_t>(s.k);
            if (!near(state.coords[k], 1.0, kMembershipTol)) {
              return reject("normalization coordinate must equal 1");
            }
            const std::span<const double> means(state.coords.data(), k);
            if (std::isinf(s.p)) {
              for (double x : means) {
                if (std::abs(x) > 1.0 + kMembershipTol) {
                  return reject("a fiducial mean exceeds 1 in magnitude");
                }
              }
              return {};
            }
            double total = 0.0;
            for (double x : means) total += std::pow(std::abs(x), s.p);
            if (total > 1.0 + kMembershipTol) {
              std::ostringstream os;
              os.precision(17);
              os << "sum |s_i|^p = " << total << " exceeds 1";
              return reject(os.str());
            }
            return {};
          },
          [&](const RestrictedClassicalSpace&) -> Check {
            double total = 0.0;
            for (double x : state.coords) {
              if (x < -kMembershipTol) return reject("negative internal probability");
              total += x;
            }
            if (!near(total, 1.0, kMembershipTol)) return reject("internal probabilities must sum to 1");
            return {};
          },
          [&](const QuantumSpace&) -> Check {
            const auto rho = quantum::density_matrix(state.coords);
            const double trace = rho.trace().real();
            if (!near(trace, 1.0, kMembershipTol)) return reject("density operator trace differs from 1");
            Eigen::SelfAdjointEigenSolver<quantum::ComplexMatrix> solver(rho,
                                                                         Eigen::EigenvaluesOnly);
            const double min_eig = solver.eigenvalues().minCoeff();
            if (min_eig < -kMembershipTol) {
              std::ostringstream os;
              os.precision(17);
              os << "density operator has eigenvalue " << min_eig;
              return reject(os.str());
            }
            return {};
          },
      },
      theory.variant);
}

Check validate_effect(const Theory& theory, const Effect& effect) {
  require_length(theory, effect.coords.size(), "effect");
  require_finite(effect.coords, "effect");
  auto in_range = [](double lo, double hi) {
    return lo >= -kMembershipTol && hi <= 1.0 + kMembershipTol;
  };
  return std::visit(
      overloaded{
          [&](const PolytopeSpace& s) -> Check {
            for (std::size_t i = 0; i < s.vertices.size(); ++i) {
              const double v = dot(effect.coords, s.vertices[i].coords);
              if (!in_range(v, v)) {
                return reject("effect leaves [0,1] on vertex " + std::to_string(i + 1));
              }
            }
            return {};
          },
          [&](const NormConstraintSpace& s) -> Check {
            const auto k = static_cast<std::size_t>(s.k);
            const double offset = effect.coords[k];
            const double spread =
                p_norm(std::span<const double>(effect.coords.data(), k), conjugate_exponent(s.p));
            if (!in_range(offset - spread, offset + spread)) {
              return reject("effect leaves [0,1] on the norm ball");
            }
            return {};
          },
          [&](const RestrictedClassicalSpace&) -> Check {
            for (double c : effect.coords) {
              if (!in_range(c, c)) return reject("effect leaves [0,1] on a deterministic state");
            }
            return {};
          },
          [&](const QuantumSpace&) -> Check {
            Eigen::SelfAdjointEigenSolver<quantum::ComplexMatrix> solver(
                quantum::effect_matrix(effect.coords), Eigen::EigenvaluesOnly);
            if (!in_range(solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff())) {
              return reject("effect operator has eigenvalues outside [0,1]");
            }
            return {};
          },
      },
      theory.variant);
}

Check validate_measurement(const Theory& theory, const Measurement& measurement) {
  if (measurement.effects.size() < 2) return reject("a measurement needs at least two outcomes");
  const Effect unit = theory.unit_effect();
  RealVector total(unit.coords.size(), 0.0);
  for (std::size_t i = 0; i < measurement.effects.size(); ++i) {
    const auto& e = measurement.effects[i];
    if (auto c = validate_effect(theory, e); !c) {
      return reject("outcome " + std::to_string(i) + ": " + c.diagnostic);
    }
    for (std::size_t c = 0; c < total.size(); ++c) total[c] += e.coords[c];
  }
  for (std::size_t c = 0; c < total.size(); ++c) {
    if (!near(total[c], unit.coords[c], kNormalizationTol)) {
      return reject("effects do not sum to the unit effect");
    }
  }
  return {};
}

std::vector<double> measure(const Theory& theory, const Measurement& measurement,
                            const State& state) {
  if (auto c = validate_state(theory, state); !c) {
    throw Error(ErrorKind::InvalidState, c.diagnostic);
  }
  std::vector<double> out;
  out.reserve(measurement.effects.size());
  double total = 0.0;
  for (const auto& e : measurement.effects) {
    out.push_back(apply_effect(e, state));
    total += out.back();
  }
  if (!near(total, 1.0, kNormalizationTol)) {
    throw Error(ErrorKind::InvalidMeasurement,
                "outcome probabilities of '" + measurement.label + "' do not sum to 1");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distinguishability

DistinguishabilityCertificate verify_distinguishable(const Theory& theory,
                                                     std::vector<State> states,
                                                     Measurement measurement) {
  DistinguishabilityCertificate cert{std::move(states), std::move(measurement), false};
  if (cert.measurement.outcome_count() < cert.states.size() || cert.states.empty()) return cert;
  for (const auto& s : cert.states) require_length(theory, s.coords.size(), "state");
  for (const auto& e : cert.measurement.effects) require_length(theory, e.coords.size(), "effect");
  for (std::size_t i = 0; i < cert.states.size(); ++i) {
    for (std::size_t j = 0; j < cert.measurement.outcome_count(); ++j) {
      const double v = dot(cert.measurement.effects[j].coords, cert.states[i].coords);
      if (!near(v, i == j ? 1.0 : 0.0, kMembershipTol)) return cert;
    }
  }
  cert.verified = true;
  return cert;
}

namespace {

struct SearchOutcome {
  ObservedDimension result;
  std::uint64_t spent = 0;
};

/// Largest set of vertices with a sub-normalized family of candidate effects
/// obeying e_j(w_i) = delta_ij; the remainder u - sum e_j completes the
/// measurement.
ObservedDimension polytope_search(const Theory& theory, const PolytopeSpace& space,
                                  std::uint64_t budget) {
  std::vector<Effect> candidates;
  auto push_unique = [&](Effect e) {
    for (const auto& c : candidates) {
      double diff = 0.0;
      for (std::size_t i = 0; i < e.coords.size(); ++i) {
        diff = std::max(diff, std::abs(e.coords[i] - c.coords[i]));
      }
      if (diff <= kNormalizationTol) return;
    }
    candidates.push_back(std::move(e));
  };
  for (const auto& e : space.extreme_effects) {
    push_unique(e);
    Effect complement{space.unit.coords, theory.id};
    for (std::size_t i = 0; i < complement.coords.size(); ++i) complement.coords[i] -= e.coords[i];
    push_unique(std::move(complement));
  }

  const std::size_t nv = space.vertices.size();
  const std::size_t ne = candidates.size();
  std::vector<std::vector<double>> value(ne, std::vector<double>(nv));
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t v = 0; v < nv; ++v) {
      value[e][v] = dot(candidates[e].coords, space.vertices[v].coords);
    }
  }

  ObservedDimension best;
  best.assumption =
      "candidate states restricted to polytope vertices, candidate effects to extreme effects "
      "and their complements";
  best.d = 1;
  best.certificate.states = {space.vertices.front()};
  best.certificate.measurement.label = "unit";
  best.certificate.measurement.effects = {space.unit};
  best.certificate.verified = true;

  std::uint64_t spent = 0;
  const std::size_t max_m = std::min(nv, space.unit.coords.size());
  for (std::size_t m = max_m; m >= 2; --m) {
    std::vector<std::size_t> subset(m);
    std::iota(subset.begin(), subset.end(), 0);
    std::vector<std::size_t> chosen(m);
    bool found = false;
    bool exhausted = false;

    // Depth-first choice of one effect per vertex of the subset.
    auto feasible = [&](std::size_t e, std::size_t pos) {
      for (std::size_t q = 0; q < m; ++q) {
        if (!near(value[e][subset[q]], q == pos ? 1.0 : 0.0, kMembershipTol)) return false;
      }
      return true;
    };
    auto completes = [&]() {
      for (std::size_t v = 0; v < nv; ++v) {
        double r = 1.0;
        for (std::size_t q = 0; q < m; ++q) r -= value[chosen[q]][v];
        if (r < -kMembershipTol) return false;
      }
      return true;
    };
    auto dfs = [&](auto&& self, std::size_t pos) -> bool {
      if (++spent > budget) {
        exhausted = true;
        return false;
      }
      if (pos == m) return completes();
      for (std::size_t e = 0; e < ne; ++e) {
        if (!feasible(e, pos)) continue;
        chosen[pos] = e;
        if (self(self, pos + 1)) return true;
        if (exhausted) return false;
      }
      return false;
    };

    while (true) {
      if (dfs(dfs, 0)) {
        found = true;
        break;
      }
      if (exhausted) break;
      // Next combination in lexicographic order.
      std::size_t i = m;
      while (i > 0 && subset[i - 1] == nv - m + i - 1) --i;
      if (i == 0) break;
      ++subset[i - 1];
      for (std::size_t j = i; j < m; ++j) subset[j] = subset[j - 1] + 1;
    }

    if (found) {
      std::vector<State> states;
      Measurement meas;
      meas.label = "distinguisher";
      RealVector rest = space.unit.coords;
      for (std::size_t q = 0; q < m; ++q) {
        states.push_back(space.vertices[subset[q]]);
        meas.effects.push_back(candidates[chosen[q]]);
        for (std::size_t c = 0; c < rest.size(); ++c) rest[c] -= candidates[chosen[q]].coords[c];
      }
      const bool trivial_rest = std::all_of(rest.begin(), rest.end(), [](double x) {
        return std::abs(x) <= kNormalizationTol;
      });
      if (!trivial_rest || m < 2) meas.effects.push_back(Effect{rest, theory.id});
      best.d = static_cast<int>(m);
      best.certificate = verify_distinguishable(theory, std::move(states), std::move(meas));
      return best;
    }
    if (exhausted) {
      best.lower_bound_only = true;
      return best;
    }
  }
  return best;
}

/// Theories whose operational content is a fixed list of measurements: the
/// best single allowed measurement with certain outcomes on candidate states.
ObservedDimension catalog_measurement_search(const Theory& theory,
                                             const std::vector<Measurement>& allowed,
                                             const std::vector<State>& candidates,
                                             std::string assumption) {
  ObservedDimension best;
  best.assumption = std::move(assumption);
  best.d = 1;
  best.certificate.states = {candidates.front()};
  best.certificate.measurement.label = "unit";
  best.certificate.measurement.effects = {theory.unit_effect()};
  best.certificate.verified = true;
  for (const auto& m : allowed) {
    std::vector<State> witnesses;
    Measurement used;
    used.label = m.label;
    std::vector<Effect> leftover;
    for (const auto& e : m.effects) {
      const State* hit = nullptr;
      for (const auto& s : candidates) {
        if (near(dot(e.coords, s.coords), 1.0, kMembershipTol)) {
          hit = &s;
          break;
        }
      }
      if (hit != nullptr) {
        witnesses.push_back(*hit);
        used.effects.push_back(e);
      } else {
        leftover.push_back(e);
      }
    }
    for (auto& e : leftover) used.effects.push_back(std::move(e));
    if (static_cast<int>(witnesses.size()) > best.d) {
      best.d = static_cast<int>(witnesses.size());
      best.certificate = verify_distinguishable(theory, std::move(witnesses), std::move(used));
    }
  }
  return best;
}

}  // namespace

ObservedDimension observed_dimension(const Theory& theory, std::uint64_t search_budget) {
  return std::visit(
      overloaded{
          [&](const PolytopeSpace& s) { return polytope_search(theory, s, search_budget); },
          [&](const NormConstraintSpace& s) {
            const auto n = static_cast<std::size_t>(s.k) + 1;
            std::vector<State> candidates;
            for (int i = 0; i < s.k; ++i) {
              for (double sign : {1.0, -1.0}) {
                RealVector c(n, 0.0);
                c[static_cast<std::size_t>(i)] = sign;
                c[n - 1] = 1.0;
                candidates.push_back(State{c, theory.id});
              }
            }
            if (std::isinf(s.p)) {
              for (int mask = 0; mask < (1 << s.k); ++mask) {
                RealVector c(n, 1.0);
                for (int i = 0; i < s.k; ++i) c[static_cast<std::size_t>(i)] = (mask >> i & 1) ? -1.0 : 1.0;
                candidates.push_back(State{c, theory.id});
              }
            }
            return catalog_measurement_search(
                theory, theory.measurements, candidates,
                "only the fiducial measurements are operational; candidate states are the "
                "points where a fiducial outcome is certain");
          },
          [&](const RestrictedClassicalSpace& s) {
            std::vector<State> candidates;
            for (int i = 0; i < s.internal_states; ++i) {
              candidates.push_back(State{unit_vector(static_cast<std::size_t>(s.internal_states),
                                                     static_cast<std::size_t>(i)),
                                         theory.id});
            }
            return catalog_measurement_search(
                theory, s.allowed_measurements, candidates,
                "search restricted to the allowed coarse-grained measurements");
          },
          [&](const QuantumSpace& s) {
            ObservedDimension out;
            out.d = s.hilbert_dim;
            out.assumption = "analytic: an orthonormal basis is perfectly distinguishable";
            const auto basis = quantum::ComplexMatrix::Identity(s.hilbert_dim, s.hilbert_dim);
            std::vector<State> states;
            for (int i = 0; i < s.hilbert_dim; ++i) {
              states.push_back(quantum::pure_state(theory.id, basis.col(i)));
            }
            out.certificate = verify_distinguishable(
                theory, std::move(states),
                quantum::projective_measurement(theory.id, basis, "computational"));
            return out;
          },
      },
      theory.variant);
}

std::uint64_t composite_dimension_bound(std::span<const int> dims) {
  if (dims.empty()) throw Error(ErrorKind::InvalidArgument, "no component dimensions given");
  std::uint64_t product = 1;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "state-space dimensions must be >= 1");
    const auto factor = static_cast<std::uint64_t>(d) + 1;
    if (product > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw Error(ErrorKind::InvalidArgument, "composite dimension bound overflows 64 bits");
    }
    product *= factor;
  }
  return product;
}

double composite_information_bound_bits(std::span<const int> dims) {
  if (dims.empty()) throw Error(ErrorKind::InvalidArgument, "no component dimensions given");
  double bits = 0.0;
  for (int d : dims) {
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "state-space dimensions must be >= 1");
    bits += std::log2(static_cast<double>(d) + 1.0);
  }
  return bits;
}

}  // namespace icp
