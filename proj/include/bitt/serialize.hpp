#pragma once

#include "bitt/corpus_io.hpp"
#include "bitt/decode.hpp"
#include "bitt/evalgen.hpp"
#include "bitt/model.hpp"

#include <nlohmann/json.hpp>

namespace bitt {

// JSONL record shapes for the CLI pipeline. Group order is preserved with
// ordered JSON so identical inputs produce byte-identical outputs.

nlohmann::ordered_json encoding_to_json(const BiTTEncoding& encoding,
                                        const std::vector<Token>& tokens);
/// Inverse of encoding_to_json; also recovers the token list.
BiTTEncoding encoding_from_json(const nlohmann::json& j, std::vector<Token>& tokens);

nlohmann::ordered_json triples_to_json(const std::string& id,
                                       const std::vector<Triple>& triples,
                                       const DecodeDiagnostics* diagnostics = nullptr);
std::vector<Triple> triples_from_json(const nlohmann::json& j, std::string* id = nullptr);

nlohmann::ordered_json flags_to_json(const std::string& id, const OverlapFlags& flags);
nlohmann::ordered_json stats_to_json(const StatsReport& report);
nlohmann::ordered_json coverage_to_json(const CoverageReport& report);
nlohmann::ordered_json score_to_json(const Score& score);

}  // namespace bitt
