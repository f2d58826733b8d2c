#pragma once

#include "localgw/tqft.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace localgw {

inline constexpr int kCacheFormatVersion = 1;

// Raised for unreadable, unwritable or malformed cache files.
class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The flag wins over LOCALGW_CACHE_DIR, which wins over ./.localgw-cache.
std::filesystem::path resolve_cache_dir(const std::optional<std::string>& flag);

std::filesystem::path pants_cache_path(const std::filesystem::path& dir, int degree);

// {"format_version","degree","basis":[...],"entries":[{"i","j","k","value"}]}
// over canonical triples i <= j <= k.
nlohmann::json pants_to_json(const PantsTensor& t);
// Throws CacheError on a version, degree or basis mismatch.
PantsTensor pants_from_json(const nlohmann::json& j, int degree);

// Writes through a temporary file and a rename.
void write_pants_cache(const std::filesystem::path& dir, const PantsTensor& t);
// std::nullopt if the file does not exist.
std::optional<PantsTensor> read_pants_cache(const std::filesystem::path& dir, int degree);

// Hex SHA-256 of the canonical JSON encoding.
std::string pants_digest(const PantsTensor& t);

}  // namespace localgw
