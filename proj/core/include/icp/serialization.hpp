#pragma once

// JSON forms of theories, states, ensembles, reports, ledgers and
// certificates. Doubles are written in shortest round-trip form; +infinity
// (only used for the norm exponent p) is written as the string "inf".

#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "icp/axioms.hpp"
#include "icp/catalog.hpp"
#include "icp/constructions.hpp"
#include "icp/error.hpp"
#include "icp/ensemble.hpp"
#include "icp/optimizer.hpp"
#include "icp/proof_chain.hpp"

namespace icp::io {

using Json = nlohmann::ordered_json;

/// Schema violation located at a JSON path; `entry` is the index inside the
/// ensemble's "entries" array when the problem belongs to one entry.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what, std::optional<std::size_t> entry = {})
      : Error(ErrorKind::Parse, path + ": " + what), path_(std::move(path)), entry_(entry) {}

  const std::string& path() const noexcept { return path_; }
  std::optional<std::size_t> entry() const noexcept { return entry_; }

 private:
  std::string path_;
  std::optional<std::size_t> entry_;
};

Json to_json(const State& state);
Json to_json(const Measurement& measurement);
/// {"variant": ..., "params": {...}} with the full theory content.
Json to_json(const Theory& theory);
Theory theory_from_json(const Json& j);
/// {"theory": {...}, "state": {"coords": [...]}}
Json theory_descriptor(const Theory& theory, const State& state);
std::pair<Theory, State> descriptor_from_json(const Json& j);

Json to_json(const CorrelatedEnsemble& ensemble);
/// Accepts a bare ensemble or any object carrying one under "ensemble".
/// "theory" may be a catalog id or a full theory object; `theory_override`
/// replaces it when given.
CorrelatedEnsemble ensemble_from_json(const Json& j,
                                      std::shared_ptr<const Theory> theory_override = nullptr);

Json to_json(const ObservableAssignment& assignment);
/// Measurements stored under "assignment" in an artifact, if present.
std::optional<std::vector<Measurement>> assignment_measurements(const Json& j,
                                                                const std::string& theory_id);

Json to_json(const ICPReport& report);
Json to_json(const info::AxiomReport& report);
Json to_json(const info::ProofChainLedger& ledger);
Json to_json(const constructions::ViolationCertificate& cert);
Json to_json(const constructions::MismatchRecord& rec);
Json to_json(const constructions::CompositeGbitRecord& rec);
Json to_json(const constructions::PgnstBoundLedger& ledger);
Json to_json(const SweepRow& row);
Json to_json(const catalog::CatalogEntry& entry);

}  // namespace icp::io
