#pragma once

#include "localgw/fock.hpp"
#include "localgw/operator_matrix.hpp"
#include "localgw/partition.hpp"
#include "localgw/scalar.hpp"
#include "localgw/useries.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace localgw {

enum class Convention { starred, unstarred };
enum class Side { left, right };
enum class OutputMode { q_rational, u_series };

struct Level {
    int k1 = 0;
    int k2 = 0;
    friend auto operator<=>(const Level&, const Level&) = default;
};

// The symmetric level-(0,0) pants tensor GW*(0|0,0)_{mu gamma nu}, indexed
// by the canonical basis of the degree.
class PantsTensor {
public:
    PantsTensor() = default;
    explicit PantsTensor(int degree);

    int degree() const { return degree_; }
    int dim() const { return n_; }
    const Scalar& at(int a, int b, int c) const;
    const Scalar& at(const Partition& a, const Partition& b, const Partition& c) const;
    // Sets the entry for every ordering of (a, b, c).
    void set(int a, int b, int c, const Scalar& v);
    // Number of unordered triples.
    std::size_t entry_count() const;
    // Canonical triples i <= j <= k in lexicographic order.
    std::vector<std::array<int, 3>> canonical_triples() const;

    friend bool operator==(const PantsTensor& a, const PantsTensor& b);

private:
    std::size_t slot(int a, int b, int c) const;
    int degree_ = 0;
    int n_ = 0;
    std::vector<Scalar> v_;
};

// GW(0|0,0)_lambda: 1/(d!(t1 t2)^d) at (1^d), else 0.
Scalar cap_level00(const Partition& lambda, Convention c = Convention::unstarred);

// Level (-1,0) cap (left) or level (0,-1) cap (right), as a function of sigma.
Scalar cap_cy(const Partition& lambda, Side side, Convention c = Convention::unstarred);

// sigma^d GW*(0|-1,0)_lambda, rational in q = -sigma^2 (right side swaps t1, t2).
Scalar cap_cy_shifted(const Partition& lambda, Side side);

// Closed form GW*(0|0,0)_{(d),(d),(2,1^{d-2})} for d >= 2.
Scalar pants_dd2(int d);

// Solves the Krylov system of M2 for the degree-d pants tensor. Throws
// std::domain_error("singular system") or a symmetry failure diagnostic.
PantsTensor reconstruct_pants(int d);

// Inverse of the altered metric at alpha: z(alpha)(-t1 t2)^{l(alpha)}.
Scalar starred_metric_weight(const Partition& alpha);

struct FrobeniusData {
    int degree = 0;
    PantsTensor pants;
    // GW*(0|0,0)_{alpha alpha}.
    std::vector<Scalar> metric;
    // GW*(0|0,0)_alpha, the counit.
    std::vector<Scalar> counit;
    // mult[gamma](mu, nu) = GW*(0|0,0)_{gamma nu}^{mu}: multiplication by e_gamma.
    std::vector<OperatorMatrix> mult;
    // Raised (0,0) cap; equals e_{(1^d)}.
    std::vector<Scalar> unit;
    // Raised starred caps, multiplied by sigma^{-d(k1+k2)} so that they are
    // even in sigma; keys (0,0), (-1,0), (0,-1), (1,0), (0,1).
    std::map<Level, std::vector<Scalar>> caps;

    // Multiplication operator of an arbitrary element.
    OperatorMatrix multiplication(const std::vector<Scalar>& x) const;
};

// Throws std::domain_error("unit not identity") if the unit check fails.
FrobeniusData build_frobenius(int d, const PantsTensor& pants);

struct Operators {
    OperatorMatrix G;
    OperatorMatrix A;
    OperatorMatrix Abar;
};

// Starred, shifted operators: G*, sigma^d A*, sigma^d Abar*. All are even in sigma.
Operators starred_operators(const FrobeniusData& f);
// Unstarred G, A, Abar.
Operators operators(const FrobeniusData& f);

// Unstarred operator entries from starred ones for a two-boundary piece of
// genus g and total level k (entry row mu, column nu).
OperatorMatrix unstar_operator(const OperatorMatrix& starred, int genus, int level_sum);

struct LocalCurveQuery {
    int degree = 1;
    int genus = 0;
    Level level;
    std::vector<Partition> boundary;
    OutputMode mode = OutputMode::q_rational;
    int series_order = 12;
    Convention convention = Convention::unstarred;
};

// Throws std::invalid_argument on an invalid query.
void validate(const LocalCurveQuery& q);

// d(2 - 2g + k1 + k2) - delta.
long star_exponent(const LocalCurveQuery& q);
// d(2 - 2g + k1 + k2): the sigma-shift that makes GW* rational in q.
long rational_shift(const LocalCurveQuery& q);

struct EvaluationResult {
    // Value in the requested convention as a function of sigma.
    Scalar value;
    // value = i^{unit_power} * sigma^{-sigma_shift} * q_form(q).
    Scalar q_form;
    long sigma_shift = 0;
    int unit_power = 0;
    std::optional<USeries> series;
};

// Multiplies by sigma^shift, checks that only even sigma powers remain and
// rewrites sigma^2 = -q. The result uses the third variable slot for q.
// Throws std::domain_error("odd σ-powers remain").
Scalar to_q_form(const Scalar& a, long shift);
// Inverse of the q-substitution (q -> -sigma^2) without any shift.
Scalar from_q_form(const Scalar& q_form);

// Product order for boundary insertions: positions into query.boundary
// (all but the one closed against the metric), applied right to left.
using InsertionOrder = std::vector<int>;

// Caches per-degree data (pants, algebra, operator powers) for evaluation.
class Engine {
public:
    Engine() = default;

    // Installs a precomputed tensor (from a cache file).
    void install_pants(const PantsTensor& pants);
    const FrobeniusData& frobenius(int d);
    const Operators& starred(int d);

    // GW* as a function of sigma.
    Scalar evaluate_starred(const LocalCurveQuery& q);
    // Closed GW* as tr(G^{g-1} A^{-k1} Abar^{-k2}) on matrices; a cross-check
    // for the counit form used by evaluate_starred.
    Scalar evaluate_starred_trace(const LocalCurveQuery& q);
    // GW* with boundary insertions multiplied in the given order; the
    // element closed by the metric is boundary[first_closed].
    Scalar evaluate_starred_ordered(const LocalCurveQuery& q, int first_closed, const InsertionOrder& order);
    EvaluationResult evaluate(const LocalCurveQuery& q);

    // Unstarred GW glued from u-series expansions of the unstarred blocks,
    // independent of the exact rational pipeline. With t_point set, t1 and t2
    // are specialized in every block before expansion.
    USeries evaluate_series_glued(const LocalCurveQuery& q, int order,
                                  const std::optional<std::array<GaussianRational, 2>>& t_point = std::nullopt);

private:
    struct Entry {
        std::optional<PantsTensor> pants;
        std::unique_ptr<FrobeniusData> frob;
        std::unique_ptr<Operators> ops;
        std::map<std::pair<int, long>, OperatorMatrix> powers;  // (which, exponent)
    };
    Entry& entry(int d);
    const OperatorMatrix& power(int d, int which, long e);
    std::vector<Scalar> closing_vector(const LocalCurveQuery& q);

    std::recursive_mutex mu_;
    std::map<int, Entry> entries_;
};

// Process-wide engine used by the free function.
Engine& default_engine();
EvaluationResult evaluate(const LocalCurveQuery& q);

}  // namespace localgw
