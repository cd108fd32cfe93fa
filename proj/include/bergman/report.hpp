#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "bergman/compop.hpp"
#include "bergman/geometry.hpp"
#include "bergman/mc.hpp"

namespace bergman::cli {

inline constexpr const char* kToolVersion = "1.0.0";

/// Every report embeds one of these; identical manifests imply identical
/// numeric output. The timestamp honors SOURCE_DATE_EPOCH so runs can be
/// made byte-reproducible.
struct RunManifest {
    std::string command;
    std::string domain;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string timestamp;
};

RunManifest make_manifest(std::string command, std::string domain,
                          std::map<std::string, std::string> parameters, std::uint64_t seed);

/// ISO-8601 UTC; SOURCE_DATE_EPOCH overrides the wall clock.
std::string iso8601_timestamp();

nlohmann::json to_json(const RunManifest& m);
nlohmann::json to_json(const mc::McEstimate& e);
nlohmann::json to_json(const geometry::VolumeEstimate& v);
nlohmann::json to_json(const mc::IdentityReport& r);
nlohmann::json to_json(const compop::DiagnosticsReport& r);
nlohmann::json to_json(const compop::SelfMapValidation& v);
nlohmann::json to_json(const compop::CarlesonProfile& p);

}  // namespace bergman::cli
