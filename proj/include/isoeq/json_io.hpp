#pragma once

#include <string>

#include <json.hpp>

#include "isoeq/classify.hpp"
#include "isoeq/search.hpp"

namespace isoeq::jsonio {

using nlohmann::json;

// Encoders.
json to_json(const Field& f);
json to_json(const Subspace& s);
json to_json(const SolutionPair& p);
json to_json(const DimensionProfile& prof);
json to_json(const StructuralReport& rep);
json to_json(const Classification& cls);
json search_report_to_json(const SearchReport& rep, const SearchConfig& cfg);

// Decoders validate shape, ranges and canonical form, and throw Malformed /
// NotCanonical with the offending path in the message.
Field field_from_json(const json& j);
Subspace subspace_from_json(const json& j, const Ambient& amb, const std::string& path);
SolutionPair pair_from_json(const json& j);

json verification_report(const SolutionPair& p, const VerifyOptions& opts = {});

/// Stable FNV-1a digest of the canonical (order-normalized) pair encoding;
/// equivalent pairs share the digest.
std::string pair_digest(const SolutionPair& p);

}  // namespace isoeq::jsonio
