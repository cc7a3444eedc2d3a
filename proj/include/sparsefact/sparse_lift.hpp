/**
 * @file sparse_lift.hpp
 * @brief Sparse multivariate factorization from bivariate images.
 *
 * Every non-main variable is sent to a power of t. Comparing the factors of
 * the image at a base weight vector with those at a vector that changes one
 * weight reveals that variable's exponent in every term, as long as no two
 * terms of a factor collide in t-degree.
 */
#ifndef SPARSEFACT_SPARSE_LIFT_HPP
#define SPARSEFACT_SPARSE_LIFT_HPP

#include "sparsefact/bi_factor.hpp"
#include "sparsefact/multipoly.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsefact {

struct SkeletonTerm {
    Exponent xdeg = 0;
    Exponent tdeg = 0;
    Integer coeff;
};

/// A bivariate factor as seen by the matching logic. Terms sorted by xdeg
/// descending, then by coefficient ascending (then tdeg descending, only to
/// make ties deterministic). The overall sign is fixed from the coefficients
/// alone, so that the same factor seen at two weights gets the same sign.
struct FactorSkeleton {
    std::vector<SkeletonTerm> terms;
    std::map<Exponent, std::size_t> xsupport;   // xdeg -> number of terms

    static FactorSkeleton from(const BiPoly& f);
    std::size_t size() const { return terms.size(); }
    /// Two terms in one x-degree class share a coefficient.
    bool has_ties() const;
    BiPoly to_bipoly() const;
};

/// Same x-degree classes holding the same coefficients: the two skeletons
/// differ at most in their t-degrees.
bool same_shape(const FactorSkeleton& a, const FactorSkeleton& b);

/// The evaluation is unusable (merged terms, lost leading structure, ...).
class UnluckyEvaluation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotXDistinctError : public StructuralError {
public:
    using StructuralError::StructuralError;
};

struct NormalizedFactor {
    BiPoly multiplier;           // q, a polynomial in t
    FactorSkeleton skeleton;     // of q * f
};

/// q = L / lc_x(f) where both sides have their integer content removed (the
/// sign of L is kept, so the result does not depend on the sign of f).
/// Throws UnluckyEvaluation when the division is inexact. The driver does not
/// rely on it (see reconstruct_variable); it is the classical scaling that
/// makes all images of a factor share the leading coefficient of P.
NormalizedFactor normalize_factor(const BiPoly& f, const BiPoly& lc_image);

/// For each base factor, the index of the eval factor with the same shape,
/// or failing that the only one with the same set of x-degrees; nullopt when
/// no bijection results. Throws NotXDistinctError when two base factors have
/// the same shape.
std::optional<std::vector<std::size_t>> match_by_x_support(const std::vector<FactorSkeleton>& base,
                                                           const std::vector<FactorSkeleton>& eval);

enum class Comparison { Equal, EvalPoorer, EvalRicher };

/// Equal when every x-degree class has the same number of terms. Otherwise
/// the side with more terms in total is richer; a reshuffle with the same
/// total counts as poorer.
Comparison compare_counts(const FactorSkeleton& base, const FactorSkeleton& eval);

/// Exponent of the probed variable in each base term. Terms are paired by
/// coefficient within each x-degree class; the exponent is
/// (tdeg_eval - tdeg_base) / (j - j_base).
///
/// With `anchor_min` the t-degrees are first shifted by a common amount so
/// that the smallest exponent is zero. That is what a factor free of
/// monomial content needs when the bivariate factorizer has stripped a
/// power of t from it.
///
/// Throws UnluckyEvaluation when the shapes differ or a quotient is not an
/// integer in [0, bound].
std::vector<Exponent> reconstruct_variable(const FactorSkeleton& base, const FactorSkeleton& eval,
                                           std::uint32_t j, std::uint32_t j_base, Exponent bound,
                                           bool anchor_min = false);

enum class FallbackReason {
    NotXDistinct,
    CoefficientTiesPersist,
    RetriesExhausted,
    VerificationFailed,
    HeuristicGcdFailed,
    NotSquarefree,
};

std::string to_string(FallbackReason r);

enum class BackendKind { builtin, external };

struct Config {
    unsigned jmax = 6;
    unsigned max_dilations = 8;
    std::uint64_t seed = 1;
    std::optional<std::string> main_var;
    BackendKind backend = BackendKind::builtin;
    std::string external_cmd;
    std::chrono::milliseconds timeout{60000};
    bool verify = true;   // reserved; results are always verified
};

enum class ProbeResult {
    Completed,    // the variable's column is now known for every factor
    Rebased,      // the probe had more terms and became the new base
    Incomplete,   // some factor still lacks the column
    Unlucky,      // unusable image or factor count mismatch
};

std::string to_string(ProbeResult r);

struct ProbeRecord {
    unsigned pass = 0;                    // dilation pass, 0 = undilated
    std::string var;
    std::uint32_t weight = 0;
    bool cached = false;                  // no new bivariate factorization
    std::vector<Comparison> comparisons;  // per base factor, when matched
    ProbeResult result = ProbeResult::Unlucky;
};

struct Stats {
    std::size_t bifactor_calls = 0;
    std::map<std::string, std::size_t> retries;   // per non-main variable
    std::size_t base_retries = 0;                 // extra base factorizations
    unsigned dilations = 0;                       // dilated passes
    std::size_t backend_failures = 0;
    double ms = 0;
    std::string main_var;
    std::vector<ProbeRecord> trace;
    std::vector<std::size_t> skeleton_terms;      // final base skeleton sizes
};

/// Per factor, per variable (non-main, in order), the per-term column once
/// it has been reconstructed.
using ExponentColumns = std::vector<std::vector<std::optional<std::vector<Exponent>>>>;

struct ReconstructionState {
    std::vector<FactorSkeleton> base;
    SubstitutionWeights weights;
    ExponentColumns exponents;
    DilationScales scales;
};

struct SparseFactorOutcome {
    std::optional<FallbackReason> fallback;
    std::string detail;
    int unit = 1;
    Integer content = 1;
    std::vector<MultiPoly> factors;   // primitive, positive leading coefficient
    Stats stats;

    bool ok() const { return !fallback; }
};

/// Variable of smallest positive partial degree, lowest index on ties.
std::size_t choose_main_variable(const MultiPoly& p);

/// Rebuilds the factors of p (primitive, squarefree, no x-content or
/// monomial content; the skeletons come from dilate(p, main, state.scales)
/// at state.weights). On success the factors are primitive with positive
/// leading coefficient and multiply to p exactly.
SparseFactorOutcome assemble_factors(const ReconstructionState& state, const MultiPoly& p, std::size_t main);

/// Factors any nonzero polynomial. Inputs in one or two variables go to the
/// univariate and bivariate factorizers.
SparseFactorOutcome sparse_factor(const MultiPoly& p, const Config& cfg = {});

/// unit * content * prod(factors).
MultiPoly expand(const SparseFactorOutcome& r, const std::vector<std::string>& vars);

/// Order by total degree, then by term list.
void sort_canonical(std::vector<MultiPoly>& fs);

} // namespace sparsefact

#endif
