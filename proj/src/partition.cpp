#include "localgw/partition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace localgw {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
        if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int p : parts_) {
        size_ += p;
        h ^= static_cast<std::size_t>(p) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    hash_ = h;
}

Partition Partition::transposition(int d) {
    if (d < 2) throw std::invalid_argument("transposition class needs degree >= 2");
    std::vector<int> p(d - 1, 1);
    p[0] = 2;
    return Partition(std::move(p));
}

Partition Partition::parse(std::string_view text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0)
            throw std::invalid_argument("malformed partition: '" + std::string(text) + "'");
        parts.push_back(v);
        pos = end + 1;
    }
    return Partition(std::move(parts));
}

std::string Partition::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s;
}

int Partition::multiplicity(int k) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<int> c(parts_.front(), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++c[j];
    return Partition(std::move(c));
}

long Partition::n() const {
    long s = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) s += static_cast<long>(i) * parts_[i];
    return s;
}

long Partition::total_content() const { return conjugate().n() - n(); }

std::vector<int> Partition::hooks() const {
    const Partition c = conjugate();
    std::vector<int> h;
    h.reserve(size_);
    for (int i = 0; i < length(); ++i)
        for (int j = 0; j < parts_[i]; ++j) h.push_back((parts_[i] - j - 1) + (c.parts_[j] - i - 1) + 1);
    return h;
}

mpz_class Partition::zed() const {
    mpz_class z = 1;
    std::map<int, int> mult;
    for (int p : parts_) ++mult[p];
    for (auto [k, m] : mult) {
        for (int j = 2; j <= m; ++j) z *= j;
        for (int j = 0; j < m; ++j) z *= k;
    }
    return z;
}

PartitionStats stats(const Partition& p) { return {p.conjugate(), p.total_content(), p.hooks(), p.n()}; }

std::vector<Partition> parse_partition_list(std::string_view text) {
    std::vector<Partition> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string_view::npos) end = text.size();
        out.push_back(Partition::parse(text.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

std::string format_partition_list(const std::vector<Partition>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ";";
        s += ps[i].to_string();
    }
    return s;
}

namespace {

void enumerate(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        enumerate(remaining - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> all_partitions(int d) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    std::vector<Partition> out;
    std::vector<int> cur;
    enumerate(d, d, cur, out);
    return out;
}

Basis::Basis(int d) : degree_(d), parts_(all_partitions(d)) {
    for (int i = 0; i < dim(); ++i) {
        index_.emplace(parts_[i], i);
        stats_.push_back(localgw::stats(parts_[i]));
    }
}

const Basis& Basis::of(int d) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Basis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[d];
    if (!slot) slot.reset(new Basis(d));
    return *slot;
}

int Basis::index(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end())
        throw std::invalid_argument("partition " + p.to_string() + " is not a partition of " + std::to_string(degree_));
    return it->second;
}

mpz_class factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

}  // namespace localgw
