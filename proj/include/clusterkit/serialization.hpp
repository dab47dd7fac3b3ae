#pragma once

#include <json.hpp>
#include <string>

#include "clusterkit/convergence.hpp"
#include "clusterkit/expansion.hpp"
#include "clusterkit/models/classical_gas.hpp"
#include "clusterkit/models/lattice_polymer.hpp"
#include "clusterkit/models/quantum_gas.hpp"

namespace clusterkit {

inline constexpr int kSchemaVersion = 1;

// All report documents carry {"schema": 1, "kind": ...}.
nlohmann::json to_json(const SeriesReport& rep);
nlohmann::json to_json(const CorrelationReport& rep);
nlohmann::json to_json(const CriterionReport& rep);
nlohmann::json to_json(const GammaEstimate& g);
nlohmann::json to_json(const models::CondconvReport& rep);
nlohmann::json to_json(const models::GoldenRatioReport& rep);
nlohmann::json to_json(const models::QuantumCriterionReport& rep);

// CSV with columns order,term,partial_sum,stderr,tail_bound (tail bound only
// on the final row, where the truncation happens).
std::string to_csv(const SeriesReport& rep);

// Rejects unknown keys, naming the offender.
void require_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                  const std::string& where);

// {"label": ..., "polymers": [{"id": ..., "weight": x or [re, im]}, ...]}
DiscretePolymerSpace space_from_json(const nlohmann::json& doc);

// {"kind": "hard_core", "overlap": [[...]]} | {"kind": "matrix", "zeta": [[...]]}
// | {"kind": "zero"}
InteractionKernel kernel_from_json(const nlohmann::json& doc, std::size_t n_polymers);

// {"a": number | [..] | "auto", "b": ..., "c": [[...]]}; resolves "auto" by
// fixed-point tuning.
WeightFunctions weights_from_json(const nlohmann::json& doc, const DiscretePolymerSpace& space,
                                  const InteractionKernel& kernel);

models::ClassicalGasParams classical_gas_from_json(const nlohmann::json& doc);
models::LatticePolymerParams lattice_polymer_from_json(const nlohmann::json& doc);
models::QuantumGasParams quantum_gas_from_json(const nlohmann::json& doc);

}  // namespace clusterkit
