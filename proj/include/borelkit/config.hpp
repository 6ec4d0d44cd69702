#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "borelkit/scenarios.hpp"

namespace borelkit {

/// Raised for unreadable, malformed or schema-violating configuration files.
struct ConfigError : DomainError {
    using DomainError::DomainError;
};

/// Parsed JSON run configuration. Geometry and problem blocks are decoded eagerly;
/// command blocks are decoded on demand by the accessors below.
struct RunConfig {
    std::string name = "run";
    std::uint64_t seed = 20240601;
    unsigned workers = 0;               ///< 0 selects the machine parallelism
    double tol = 1e-13;                 ///< relative quadrature tolerance
    std::filesystem::path base_dir;     ///< directory of the config file, for relative paths
    std::optional<StripFamily> strips;
    std::optional<GoodCovering> covering;
    std::optional<ProblemSpec1> problem1;
    std::optional<ProblemSpec2> problem2;
    nlohmann::json doc;                 ///< the full document

    unsigned effective_workers() const { return workers == 0 ? default_workers() : workers; }
    /// Block by key, or an empty object when absent.
    const nlohmann::json& block(const std::string& key) const;
};

/// Complex numbers are written as "re,im" strings; plain numbers are read as real.
cplx parse_complex(const nlohmann::json& j, const std::string& where);
std::string format_complex(cplx z);

RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
/// Throws ConfigError when the file is missing or invalid.
RunConfig load_config(const std::filesystem::path& path);

/// 16 hex digits of FNV-1a over the canonical (sorted, compact) JSON text.
std::string config_hash(const nlohmann::json& doc);

/// Command settings: defaults are the bundled desk fixtures, overridden by the config.
Theorem1Config theorem1_config(const RunConfig& rc);
Theorem2Config theorem2_config(const RunConfig& rc);
BfiCase bfi_config(const RunConfig& rc);
FlatnessOptions flatness_options(const nlohmann::json& j);

}  // namespace borelkit
