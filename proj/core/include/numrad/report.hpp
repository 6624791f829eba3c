#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "numrad/radius.hpp"
#include "numrad/relations.hpp"
#include "numrad/theorems.hpp"

namespace numrad::report {

using Json = nlohmann::ordered_json;

// Scalars are plain numbers in real spaces and [re, im] pairs in complex ones.
Json scalar(Scalar z, Field field);
Json coords(const Coords& c, Field field);
Json matrix(const Operator& op, Field field);

Json radius_result(const RadiusResult& r, const NormedSpace& space);
Json relation_result(const std::string& id, const RelationReport& r, const NormedSpace& space,
                     bool with_sweep);
Json daugavet_result(const DaugavetReport& d, const NormedSpace& space, bool with_sweep);
Json outcome(const VerificationOutcome& o);

/// Serializes with every float printed to 17 significant digits, so equal
/// inputs give byte-identical text. Non-finite floats become null.
std::string dump(const Json& j, int indent = 2);

}  // namespace numrad::report
