#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace localgw {

// Integer partition with parts stored weakly decreasing.
class Partition {
public:
    Partition() = default;
    // Parts may be given in any order; they are sorted. Throws
    // std::invalid_argument on a nonpositive part.
    explicit Partition(std::vector<int> parts);
    // (k, 1^{d-k}) style constructors used throughout.
    static Partition row(int d) { return Partition({d}); }
    static Partition column(int d) { return Partition(std::vector<int>(d, 1)); }
    // The class of a transposition, (2, 1^{d-2}).
    static Partition transposition(int d);

    // Syntax "2,1,1"; throws std::invalid_argument.
    static Partition parse(std::string_view text);
    std::string to_string() const;

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return parts_[i]; }
    int multiplicity(int k) const;
    std::size_t hash() const { return hash_; }

    Partition conjugate() const;
    // n(lambda) = sum_i (i - 1) lambda_i.
    long n() const;
    // Sum of contents j - i over cells; equals n(lambda') - n(lambda).
    long total_content() const;
    // Hook lengths of all cells, row by row.
    std::vector<int> hooks() const;
    // prod_i m_i! i^{m_i}.
    mpz_class zed() const;

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    // Reverse-lexicographic: (4) before (3,1) before (2,2).
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ > b.parts_; }

private:
    std::vector<int> parts_;
    int size_ = 0;
    std::size_t hash_ = 0;
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const { return p.hash(); }
};

struct PartitionStats {
    Partition conjugate;
    long total_content;
    std::vector<int> hooks;
    long n_lambda;
};

PartitionStats stats(const Partition& p);

// Profiles separated by ';', e.g. "2;1,1".
std::vector<Partition> parse_partition_list(std::string_view text);
std::string format_partition_list(const std::vector<Partition>& ps);

// All partitions of d in reverse-lexicographic order. Throws for d < 1.
std::vector<Partition> all_partitions(int d);

// The canonical basis of partitions of d with index lookup; built once per degree.
class Basis {
public:
    static const Basis& of(int d);

    int degree() const { return degree_; }
    int dim() const { return static_cast<int>(parts_.size()); }
    const Partition& operator[](int i) const { return parts_[i]; }
    const std::vector<Partition>& partitions() const { return parts_; }
    // Throws std::invalid_argument if p is not a partition of the degree.
    int index(const Partition& p) const;
    const PartitionStats& stats(int i) const { return stats_[i]; }

private:
    explicit Basis(int d);
    int degree_;
    std::vector<Partition> parts_;
    std::vector<PartitionStats> stats_;
    std::unordered_map<Partition, int, PartitionHash> index_;
};

mpz_class factorial(int n);

}  // namespace localgw
