#pragma once

#include "etdq/detection.hpp"
#include "etdq/ecc.hpp"
#include "etdq/model.hpp"

#include <nlohmann/json.hpp>

// Fixed-key-order JSON forms shared by the journal and the CLI outputs.
// Dumping what was parsed reproduces the input bytes.
namespace etdq::json {

using ordered = nlohmann::ordered_json;

ordered parts_to_json(const DateParts& p);
DateParts parts_from_json(const nlohmann::ordered_json& j);

// {"title": {"raw": ..., "provenance": ...}, ...}; "role" and "parts" are
// written only when present.
ordered snapshot_to_json(const EtdRecord& rec);
EtdRecord snapshot_from_json(const std::string& id, const ordered& j);

ordered action_to_json(const CorrectionAction& a);
CorrectionAction action_from_json(const ordered& j);

ordered diagnosis_to_json(const std::string& record_id, const FieldDiagnosis& d);

}  // namespace etdq::json
