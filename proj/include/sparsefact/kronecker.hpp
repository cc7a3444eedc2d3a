/**
 * @file kronecker.hpp
 * @brief Slow reference factorizer for small inputs: pack all variables into
 *        one with x_i -> x^(D_0 ... D_{i-1}), factor, and regroup.
 */
#ifndef SPARSEFACT_KRONECKER_HPP
#define SPARSEFACT_KRONECKER_HPP

#include "sparsefact/multipoly.hpp"

#include <stdexcept>
#include <vector>

namespace sparsefact {

class OracleInconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Irreducible factors of positive degree (primitive, positive leading
/// coefficient, repeated by multiplicity, canonical order). Integer content
/// and sign are dropped. Throws OracleInconclusive when the packed degree
/// exceeds `max_degree` or the univariate image has too many factors to
/// regroup by brute force.
std::vector<MultiPoly> kronecker_oracle(const MultiPoly& p, std::size_t max_degree = 60);

} // namespace sparsefact

#endif
