#include "localgw/cache.hpp"

#include "localgw/scalar_json.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace localgw {

namespace fs = std::filesystem;

fs::path resolve_cache_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return *flag;
    if (const char* env = std::getenv("LOCALGW_CACHE_DIR"); env && *env) return env;
    return ".localgw-cache";
}

fs::path pants_cache_path(const fs::path& dir, int degree) {
    return dir / ("pants_d" + std::to_string(degree) + ".json");
}

nlohmann::json pants_to_json(const PantsTensor& t) {
    const Basis& basis = Basis::of(t.degree());
    nlohmann::json j;
    j["format_version"] = kCacheFormatVersion;
    j["degree"] = t.degree();
    auto& b = j["basis"] = nlohmann::json::array();
    for (int a = 0; a < basis.dim(); ++a) b.push_back(basis[a].to_string());
    auto& e = j["entries"] = nlohmann::json::array();
    for (const auto& tr : t.canonical_triples()) {
        e.push_back({{"i", tr[0]}, {"j", tr[1]}, {"k", tr[2]}, {"value", scalar_to_json(t.at(tr[0], tr[1], tr[2]))}});
    }
    return j;
}

PantsTensor pants_from_json(const nlohmann::json& j, int degree) {
    try {
        if (j.at("format_version").get<int>() != kCacheFormatVersion) throw CacheError("unsupported cache format version");
        if (j.at("degree").get<int>() != degree) throw CacheError("cache degree mismatch");
        const Basis& basis = Basis::of(degree);
        const auto& b = j.at("basis");
        if (!b.is_array() || static_cast<int>(b.size()) != basis.dim()) throw CacheError("cache basis size mismatch");
        for (int a = 0; a < basis.dim(); ++a)
            if (b[a].get<std::string>() != basis[a].to_string()) throw CacheError("cache basis order mismatch");
        PantsTensor t(degree);
        const auto& e = j.at("entries");
        if (!e.is_array() || e.size() != t.entry_count()) throw CacheError("cache entry count mismatch");
        for (const auto& x : e) t.set(x.at("i").get<int>(), x.at("j").get<int>(), x.at("k").get<int>(), scalar_from_json(x.at("value")));
        return t;
    } catch (const CacheError&) {
        throw;
    } catch (const std::exception& ex) {
        throw CacheError(std::string("malformed cache: ") + ex.what());
    }
}

void write_pants_cache(const fs::path& dir, const PantsTensor& t) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw CacheError("cannot create cache directory " + dir.string() + ": " + ec.message());
    const fs::path target = pants_cache_path(dir, t.degree());
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw CacheError("cannot write " + tmp.string());
        out << pants_to_json(t).dump() << '\n';
        out.close();
        if (!out) {
            fs::remove(tmp, ec);
            throw CacheError("cannot write " + tmp.string());
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CacheError("cannot rename cache file into " + target.string());
    }
}

std::optional<PantsTensor> read_pants_cache(const fs::path& dir, int degree) {
    const fs::path p = pants_cache_path(dir, degree);
    std::error_code ec;
    if (!fs::exists(p, ec)) return std::nullopt;
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CacheError("cannot read " + p.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw CacheError("malformed cache " + p.string() + ": " + ex.what());
    }
    return pants_from_json(j, degree);
}

std::string pants_digest(const PantsTensor& t) {
    const std::string s = pants_to_json(t).dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 15]);
    }
    return out;
}

}  // namespace localgw
