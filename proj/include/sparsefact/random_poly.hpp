/**
 * @file random_poly.hpp
 * @brief Seeded random sparse polynomials and factored test instances.
 */
#ifndef SPARSEFACT_RANDOM_POLY_HPP
#define SPARSEFACT_RANDOM_POLY_HPP

#include "sparsefact/multipoly.hpp"

#include <random>
#include <string>
#include <vector>

namespace sparsefact {

/// x, y, z, w, v, u, then x6, x7, ...
std::vector<std::string> default_variables(std::size_t n);

/// Up to `terms` terms, exponents in [0, maxdeg], nonzero coefficients in
/// [-coeff_bound, coeff_bound]. Duplicate monomials are merged, so fewer
/// terms may come out.
MultiPoly random_sparse(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t terms,
                        Exponent maxdeg, long coeff_bound);

struct InstanceShape {
    std::size_t nvars = 3;
    std::size_t nfactors = 2;
    std::size_t max_terms = 6;
    Exponent maxdeg = 4;        // per variable, per factor
    long coeff_bound = 1000;
};

struct Instance {
    MultiPoly product;
    std::vector<MultiPoly> factors;
};

/// A product of factors that are x-distinct with respect to the first
/// variable: each factor has its own set of x-degrees (containing 0, at
/// most 3), and no other variable has smaller degree than x in any factor,
/// so x is also the variable the factorizer picks. Factors are primitive
/// with positive leading coefficient, have no monomial content, and use
/// every variable. Requires maxdeg >= 3 and nfactors <= 7.
Instance random_x_distinct_instance(std::mt19937_64& rng, const InstanceShape& shape);

} // namespace sparsefact

#endif
