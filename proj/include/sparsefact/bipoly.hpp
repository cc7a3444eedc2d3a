/**
 * @file bipoly.hpp
 * @brief Bivariate polynomials in (x, t) and the weighted substitution that
 *        produces them from multivariate polynomials.
 */
#ifndef SPARSEFACT_BIPOLY_HPP
#define SPARSEFACT_BIPOLY_HPP

#include "sparsefact/multipoly.hpp"

#include <cstdint>
#include <vector>

namespace sparsefact {

struct BiTerm {
    Exponent xdeg = 0;
    Exponent tdeg = 0;
    Integer coeff;
};

/// Terms sorted strictly descending by (xdeg, tdeg), no zero coefficients.
class BiPoly {
public:
    BiPoly() = default;
    explicit BiPoly(std::vector<BiTerm> terms);

    static BiPoly constant(const Integer& c);
    static BiPoly monomial(const Integer& c, Exponent xdeg, Exponent tdeg);

    const std::vector<BiTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Exponent xdegree() const { return terms_.empty() ? 0 : terms_.front().xdeg; }
    Exponent tdegree() const;
    Exponent min_tdegree() const;
    const BiTerm& leading_term() const { return terms_.front(); }

    /// Coefficient of x^k as a list of (tdeg, coeff) pairs, descending tdeg.
    BiPoly x_coefficient(Exponent k) const;
    /// Coefficient of the highest power of x.
    BiPoly leading_x_coefficient() const { return x_coefficient(xdegree()); }

    bool is_canonical() const;
    friend bool operator==(const BiPoly& a, const BiPoly& b);

    BiPoly operator-() const;

    static BiPoly from_canonical(std::vector<BiTerm> terms);

private:
    std::vector<BiTerm> terms_;
};

BiPoly operator+(const BiPoly& a, const BiPoly& b);
BiPoly operator-(const BiPoly& a, const BiPoly& b);
BiPoly operator*(const BiPoly& a, const BiPoly& b);

/// d/dx when wrt_x, otherwise d/dt.
BiPoly derivative(const BiPoly& p, bool wrt_x);

/// Views the bivariate polynomial as a MultiPoly over {x_name, t_name}.
MultiPoly to_multipoly(const BiPoly& p, const std::string& x_name = "x",
                       const std::string& t_name = "t");
/// Inverse of to_multipoly; p must have exactly two variables (x first).
BiPoly from_multipoly(const MultiPoly& p);

/// Exponents (e_1, ..., e_n) for the map x_i -> t^{e_i}, one per non-main
/// variable in variable order.
struct SubstitutionWeights {
    std::vector<std::uint32_t> weights;

    static SubstitutionWeights ones(std::size_t n) { return {std::vector<std::uint32_t>(n, 1)}; }
    friend bool operator==(const SubstitutionWeights&, const SubstitutionWeights&) = default;
};

/// Maps each term c * x^a * prod x_i^alpha_i to c * x^a * t^{sum e_i alpha_i}.
BiPoly weighted_substitute(const MultiPoly& p, std::size_t main, const SubstitutionWeights& w);

} // namespace sparsefact

#endif
