/**
 * @file heu_gcd.hpp
 * @brief Heuristic polynomial GCD over ZZ (evaluation at a large integer,
 *        integer gcd, symmetric base-z reconstruction, trial division).
 */
#ifndef SPARSEFACT_HEU_GCD_HPP
#define SPARSEFACT_HEU_GCD_HPP

#include "sparsefact/multipoly.hpp"

#include <optional>

namespace sparsefact {

struct HeuGcdOptions {
    int max_retries = 6;
    // Evaluation images whose coefficients would exceed this many bits make
    // the attempt fail instead of grinding.
    std::size_t max_bits = std::size_t{1} << 20;
};

/// gcd(a, b) with positive leading coefficient, or nullopt when every
/// evaluation point failed the divisibility check.
std::optional<MultiPoly> heu_gcd(const MultiPoly& a, const MultiPoly& b, const HeuGcdOptions& opts = {});

/// gcd of the coefficients of p with respect to `main` (positive leading
/// coefficient), or nullopt on heuristic failure.
std::optional<MultiPoly> content_wrt(const MultiPoly& p, std::size_t main, const HeuGcdOptions& opts = {});

} // namespace sparsefact

#endif
