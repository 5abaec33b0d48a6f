#pragma once

#include "qecwb/channels.hpp"
#include "qecwb/codes.hpp"
#include "qecwb/conditions.hpp"
#include "qecwb/fletcher.hpp"
#include "qecwb/recovery.hpp"

#include <json.hpp>

namespace qecwb {

using Json = nlohmann::ordered_json;

/// Row-major list of [re, im] pairs.
Json matrix_entries(const Matrix& m);
Matrix matrix_from_entries(const Json& entries, Eigen::Index rows, Eigen::Index cols);

Json to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const Json& j);

/// codewords: one array per logical state, each listing its nonzero
/// amplitudes as {index, amplitude_re, amplitude_im}.
Json to_json(const QuantumCode& code);
QuantumCode code_from_json(const Json& j, std::string name = "custom");

Json to_json(const RecoveryOperation& recovery);

Json to_json(const PairClassification& c);
Json to_json(const FletcherReport& r);

}  // namespace qecwb
