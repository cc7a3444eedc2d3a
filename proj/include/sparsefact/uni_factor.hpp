/**
 * @file uni_factor.hpp
 * @brief Factorization of univariate polynomials over ZZ: Cantor-Zassenhaus
 *        modulo a small prime, quadratic Hensel lifting, and subset
 *        recombination.
 */
#ifndef SPARSEFACT_UNI_FACTOR_HPP
#define SPARSEFACT_UNI_FACTOR_HPP

#include "sparsefact/unipoly.hpp"

#include <random>
#include <utility>
#include <vector>

namespace sparsefact {

bool squarefree_check(const UniPoly& f);

struct ModFactor {
    ModPoly factor;        // monic irreducible
    unsigned multiplicity;
};

/// Complete factorization of f modulo its (odd prime) modulus. The leading
/// coefficient is not part of the list.
std::vector<ModFactor> factor_mod_p(const ModPoly& f, std::mt19937_64& rng);

/// Lifts lc(f) * prod(factors) == f (mod p) to a modulus p^k exceeding
/// 2 * bound * |lc(f)|. Returned factors are monic modulo the new modulus.
struct LiftedFactors {
    std::vector<UniPoly> factors;   // residues in [0, modulus)
    Integer modulus;
};
LiftedFactors hensel_lift_uni(const UniPoly& f, const std::vector<ModPoly>& factors, const Integer& bound);

/// 2^deg(f) * ceil(||f||_2): bounds every coefficient of every integer
/// factor of f.
Integer mignotte_bound(const UniPoly& f);

struct UniFactorization {
    int unit = 1;
    Integer content = 1;
    std::vector<std::pair<UniPoly, unsigned>> factors;  // primitive, positive lc
};

UniFactorization factor_univariate(const UniPoly& f, std::mt19937_64& rng);
/// Convenience overload with a fixed default seed.
UniFactorization factor_univariate(const UniPoly& f);

/// Multiplies a factorization back out.
UniPoly expand(const UniFactorization& fz);

} // namespace sparsefact

#endif
