#include "icp/serialization.hpp"

#include <cmath>
#include <limits>

namespace icp::io {

namespace {

Json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json vectors(const std::vector<State>& states) {
  Json out = Json::array();
  for (const auto& s : states) out.push_back(s.coords);
  return out;
}

Json vectors(const std::vector<Effect>& effects) {
  Json out = Json::array();
  for (const auto& e : effects) out.push_back(e.coords);
  return out;
}

Json measurements(const std::vector<Measurement>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(path, "missing field '" + key + "'");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
  }
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

RealVector as_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  RealVector out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<Measurement> as_measurements(const Json& j, const std::string& path,
                                         const std::string& id) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of measurements");
  std::vector<Measurement> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    Measurement m;
    const Json& label = field(j[i], "label", p);
    if (!label.is_string()) throw SchemaError(p + ".label", "expected a string");
    m.label = label.get<std::string>();
    const Json& effects = field(j[i], "effects", p);
    if (!effects.is_array()) throw SchemaError(p + ".effects", "expected an array");
    for (std::size_t k = 0; k < effects.size(); ++k) {
      m.effects.push_back(
          Effect{as_vector(effects[k], p + ".effects[" + std::to_string(k) + "]"), id});
    }
    out.push_back(std::move(m));
  }
  return out;
}

template <class Fn>
auto rethrow_as_schema(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

}  // namespace

Json to_json(const State& state) { return Json{{"coords", state.coords}}; }

Json to_json(const Measurement& m) {
  return Json{{"label", m.label}, {"effects", vectors(m.effects)}};
}

Json to_json(const Theory& theory) {
  Json params{{"id", theory.id}};
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PolytopeSpace>) {
          params["vertices"] = vectors(s.vertices);
          params["extreme_effects"] = vectors(s.extreme_effects);
          params["unit"] = s.unit.coords;
          params["measurements"] = measurements(theory.measurements);
        } else if constexpr (std::is_same_v<T, NormConstraintSpace>) {
          params["p"] = number_or_inf(s.p);
          params["k"] = s.k;
        } else if constexpr (std::is_same_v<T, RestrictedClassicalSpace>) {
          params["internal_states"] = s.internal_states;
          params["measurements"] = measurements(s.allowed_measurements);
        } else {
          params["hilbert_dim"] = s.hilbert_dim;
          params["measurements"] = measurements(theory.measurements);
        }
      },
      theory.variant);
  return Json{{"variant", theory.variant_name()}, {"params", params}};
}

Theory theory_from_json(const Json& j) {
  const Json& variant = field(j, "variant", "theory");
  if (!variant.is_string()) throw SchemaError("theory.variant", "expected a string");
  const Json& params = field(j, "params", "theory");
  const Json& id_json = field(params, "id", "theory.params");
  if (!id_json.is_string()) throw SchemaError("theory.params.id", "expected a string");
  const auto id = id_json.get<std::string>();
  const auto v = variant.get<std::string>();
  Theory t = rethrow_as_schema("theory", [&]() -> Theory {
    if (v == "polytope") {
      std::vector<State> vertices;
      for (auto& c : [&] {
             const Json& arr = field(params, "vertices", "theory.params");
             if (!arr.is_array()) throw SchemaError("theory.params.vertices", "expected an array");
             std::vector<RealVector> out;
             for (std::size_t i = 0; i < arr.size(); ++i) {
               out.push_back(as_vector(arr[i], "theory.params.vertices[" + std::to_string(i) + "]"));
             }
             return out;
           }()) {
        vertices.push_back(State{std::move(c), id});
      }
      std::vector<Effect> extreme;
      const Json& ee = field(params, "extreme_effects", "theory.params");
      if (!ee.is_array()) throw SchemaError("theory.params.extreme_effects", "expected an array");
      for (std::size_t i = 0; i < ee.size(); ++i) {
        extreme.push_back(
            Effect{as_vector(ee[i], "theory.params.extreme_effects[" + std::to_string(i) + "]"), id});
      }
      Effect unit{as_vector(field(params, "unit", "theory.params"), "theory.params.unit"), id};
      auto ms = as_measurements(field(params, "measurements", "theory.params"),
                                "theory.params.measurements", id);
      return make_polytope_theory(id, std::move(vertices), std::move(extreme), std::move(unit),
                                  std::move(ms));
    }
    if (v == "norm_constraint") {
      const double p = as_number(field(params, "p", "theory.params"), "theory.params.p");
      const int k = as_int(field(params, "k", "theory.params"), "theory.params.k");
      return make_norm_constraint_theory(id, p, k);
    }
    if (v == "restricted_classical") {
      const int n = as_int(field(params, "internal_states", "theory.params"),
                           "theory.params.internal_states");
      return make_restricted_classical_theory(
          id, n,
          as_measurements(field(params, "measurements", "theory.params"),
                          "theory.params.measurements", id));
    }
    if (v == "quantum") {
      const int d = as_int(field(params, "hilbert_dim", "theory.params"), "theory.params.hilbert_dim");
      return make_quantum_theory(id, d,
                                 as_measurements(field(params, "measurements", "theory.params"),
                                                 "theory.params.measurements", id));
    }
    throw SchemaError("theory.variant", "unknown variant '" + v + "'");
  });
  t.known_observed_dimension = observed_dimension(t).d;
  return t;
}

Json theory_descriptor(const Theory& theory, const State& state) {
  return Json{{"theory", to_json(theory)}, {"state", to_json(state)}};
}

std::pair<Theory, State> descriptor_from_json(const Json& j) {
  Theory t = theory_from_json(field(j, "theory", "$"));
  const Json& s = field(j, "state", "$");
  State state{as_vector(field(s, "coords", "state"), "state.coords"), t.id};
  rethrow_as_schema("state", [&] {
    if (auto c = validate_state(t, state); !c) throw SchemaError("state", c.diagnostic);
    return 0;
  });
  return {std::move(t), std::move(state)};
}

Json to_json(const CorrelatedEnsemble& e) {
  Json entries = Json::array();
  for (const auto& x : e.entries) {
    entries.push_back(Json{{"p", x.p}, {"state", x.state.coords}, {"registers", x.registers}});
  }
  return Json{{"theory", e.theory->id},
              {"register_names", e.register_names},
              {"register_alphabets", e.register_alphabets},
              {"entries", entries}};
}

CorrelatedEnsemble ensemble_from_json(const Json& j, std::shared_ptr<const Theory> theory) {
  if (j.is_object() && j.contains("ensemble") && !j.contains("entries")) {
    return ensemble_from_json(j["ensemble"], std::move(theory));
  }
  if (!j.is_object()) throw SchemaError("$", "expected an ensemble object");
  if (!theory) {
    const Json& t = field(j, "theory", "$");
    if (t.is_string()) {
      theory = rethrow_as_schema("theory", [&] { return catalog::lookup(t.get<std::string>()).theory; });
    } else {
      theory = std::make_shared<const Theory>(theory_from_json(t));
    }
  }
  const Json& entries = field(j, "entries", "$");
  if (!entries.is_array() || entries.empty()) {
    throw SchemaError("entries", "expected a nonempty array");
  }
  std::vector<EnsembleEntry> out;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const std::string path = "entries[" + std::to_string(k) + "]";
    try {
      EnsembleEntry e;
      e.p = as_number(field(entries[k], "p", path), path + ".p");
      if (e.p < 0.0) throw SchemaError(path + ".p", "probability is negative");
      const Json& s = field(entries[k], "state", path);
      e.state = State{as_vector(s.is_object() ? field(s, "coords", path + ".state") : s, path + ".state"),
                      theory->id};
      const Json& regs = field(entries[k], "registers", path);
      if (!regs.is_array()) throw SchemaError(path + ".registers", "expected an array");
      for (std::size_t r = 0; r < regs.size(); ++r) {
        e.registers.push_back(as_int(regs[r], path + ".registers[" + std::to_string(r) + "]"));
      }
      rethrow_as_schema(path + ".state", [&] {
        if (auto c = validate_state(*theory, e.state); !c) throw SchemaError(path + ".state", c.diagnostic);
        return 0;
      });
      out.push_back(std::move(e));
    } catch (const SchemaError& err) {
      throw SchemaError(err.path(), std::string(err.what()).substr(err.path().size() + 2), k);
    }
  }
  std::vector<int> alphabets;
  if (j.contains("register_alphabets")) {
    const Json& a = j["register_alphabets"];
    if (!a.is_array()) throw SchemaError("register_alphabets", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      alphabets.push_back(as_int(a[i], "register_alphabets[" + std::to_string(i) + "]"));
    }
  }
  std::vector<std::string> names;
  if (j.contains("register_names")) {
    const Json& n = j["register_names"];
    if (!n.is_array()) throw SchemaError("register_names", "expected an array");
    for (const auto& x : n) {
      if (!x.is_string()) throw SchemaError("register_names", "expected strings");
      names.push_back(x.get<std::string>());
    }
  }
  return rethrow_as_schema("entries", [&] {
    return build_ensemble(theory, std::move(out), std::move(alphabets), std::move(names));
  });
}

Json to_json(const ObservableAssignment& a) {
  Json out = Json::array();
  for (const auto& p : a.pairs) {
    out.push_back(Json{{"register", p.register_index}, {"measurement", to_json(p.measurement)}});
  }
  return out;
}

std::optional<std::vector<Measurement>> assignment_measurements(const Json& j,
                                                                const std::string& theory_id) {
  if (!j.is_object() || !j.contains("assignment")) return std::nullopt;
  const Json& a = j["assignment"];
  if (!a.is_array()) throw SchemaError("assignment", "expected an array");
  Json ms = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    ms.push_back(field(a[i], "measurement", "assignment[" + std::to_string(i) + "]"));
  }
  return as_measurements(ms, "assignment", theory_id);
}

Json to_json(const ICPReport& r) {
  return Json{{"labels", r.labels},
              {"gains", r.gains},
              {"raw_gains", r.raw_gains},
              {"redundancy", r.redundancy},
              {"raw_redundancy", r.raw_redundancy},
              {"extractable", r.extractable},
              {"observed_dim", r.observed_dim},
              {"bound", r.bound},
              {"margin", r.margin},
              {"violated", r.violated},
              {"register_marginal", r.register_marginal}};
}

Json to_json(const info::AxiomReport& r) {
  Json j{{"axiom", info::to_string(r.axiom)},
         {"trials", r.trials},
         {"max_violation", r.max_violation},
         {"passed", r.passed}};
  if (r.reversed_direction_max_violation) {
    j["printed_direction_max_violation"] = *r.reversed_direction_max_violation;
  }
  return j;
}

Json to_json(const info::ProofChainLedger& l) {
  Json steps = Json::array();
  for (const auto& s : l.steps) {
    steps.push_back(Json{{"id", s.id},
                         {"statement", s.statement},
                         {"relation", info::to_string(s.relation)},
                         {"lhs", s.lhs},
                         {"rhs", s.rhs},
                         {"margin", s.margin}});
  }
  return Json{{"theory", l.theory_id},   {"observables", l.observables}, {"final_lhs", l.final_lhs},
              {"bound", l.bound},        {"min_margin", l.min_margin},   {"holds", l.holds()},
              {"steps", steps}};
}

Json to_json(const constructions::ViolationCertificate& c) {
  Json closed = Json::object();
  for (const auto& [k, v] : c.closed_form) closed[k] = v;
  Json direct = Json::object();
  for (const auto& [k, v] : c.direct) direct[k] = v;
  return Json{{"name", c.name},
              {"theory_id", c.theory_id},
              {"theory", to_json(*c.ensemble.theory)},
              {"ensemble", to_json(c.ensemble)},
              {"assignment", to_json(c.assignment)},
              {"report", to_json(c.report)},
              {"closed_form", closed},
              {"direct", direct},
              {"crosscheck_max_abs_diff", c.crosscheck_max_abs_diff},
              {"crosscheck_tolerance", c.crosscheck_tolerance},
              {"notes", c.notes}};
}

Json to_json(const constructions::MismatchRecord& r) {
  return Json{{"n", r.n},
              {"measurement_dimension", r.measurement_dimension},
              {"information_dimension", r.information_dimension},
              {"mismatch", r.mismatch}};
}

Json to_json(const constructions::CompositeGbitRecord& r) {
  return Json{{"n", r.n},
              {"p_rec", r.p_rec},
              {"encoded_bits", r.encoded_bits},
              {"extractable", r.extractable},
              {"bound", r.bound},
              {"violated", r.violated}};
}

Json to_json(const constructions::PgnstBoundLedger& l) {
  Json pts = Json::array();
  for (const auto& p : l.points) {
    pts.push_back(Json{{"gap", p.gap}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"ratio", p.ratio}});
  }
  return Json{{"p", number_or_inf(l.p)},
              {"epsilon", l.epsilon},
              {"pointwise", l.pointwise},
              {"ratio_increasing", l.ratio_increasing},
              {"lhs_at_one", l.lhs_at_one},
              {"rhs_at_one", l.rhs_at_one},
              {"points", pts}};
}

Json to_json(const SweepRow& r) {
  return Json{{"theta", r.theta},       {"gains", r.gains},   {"gain_sum", r.gain_sum},
              {"redundancy", r.redundancy}, {"extractable", r.extractable}, {"bound", r.bound},
              {"margin", r.margin}};
}

Json to_json(const catalog::CatalogEntry& e) {
  Json names = Json::array();
  for (const auto& m : e.theory->measurements) names.push_back(m.label);
  Json defaults = Json::array();
  for (const auto& [k, v] : e.default_measurements) defaults.push_back(k);
  return Json{{"id", e.id},
              {"variant", e.theory->variant_name()},
              {"ambient_dimension", e.theory->ambient_dimension()},
              {"measurements", names},
              {"default_measurements", defaults},
              {"observed_dimension", e.observed_dimension},
              {"notes", e.notes}};
}

}  // namespace icp::io
