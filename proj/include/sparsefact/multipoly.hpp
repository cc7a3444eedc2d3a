/**
 * @file multipoly.hpp
 * @brief Sparse multivariate polynomials over the integers.
 *
 * Terms are kept in strictly descending lexicographic order of their
 * exponent vectors, with no zero coefficients and no repeated exponent
 * vectors. Every public operation returns a polynomial in that canonical
 * form.
 */
#ifndef SPARSEFACT_MULTIPOLY_HPP
#define SPARSEFACT_MULTIPOLY_HPP

#include "sparsefact/integer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparsefact {

using Exponent = std::uint32_t;
using ExponentVector = std::vector<Exponent>;

// Exponents are bounded so that weighted sums still fit in 31 bits.
inline constexpr std::uint64_t max_exponent = (std::uint64_t{1} << 31) - 1;

struct Term {
    Integer coeff;
    ExponentVector exps;
};

/// Scales c_i applied as x_i <- c_i * x_i to every non-main variable, in
/// variable order with the main variable skipped.
struct DilationScales {
    std::vector<int> scales;
};

class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    MultiPoly(std::vector<std::string> vars, std::vector<Term> terms);

    static MultiPoly constant(std::vector<std::string> vars, const Integer& c);
    static MultiPoly variable(std::vector<std::string> vars, std::size_t index);

    const std::vector<std::string>& variables() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    const Term& leading_term() const { return terms_.front(); }
    const Integer& leading_coeff() const { return terms_.front().coeff; }

    /// Partial degree in variable v (0 for the zero polynomial).
    Exponent degree(std::size_t v) const;
    /// Smallest exponent of v over all terms.
    Exponent min_degree(std::size_t v) const;
    std::uint64_t total_degree() const;
    /// Largest absolute coefficient.
    Integer height() const;

    bool is_canonical() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);

    MultiPoly operator-() const;
    MultiPoly& operator*=(const Integer& c);

    /// Same terms under a different variable list of equal length.
    MultiPoly renamed(std::vector<std::string> vars) const;

    /// Trusted constructor: terms must already be canonical.
    static MultiPoly from_canonical(std::vector<std::string> vars, std::vector<Term> terms);

private:
    std::vector<std::string> vars_;
    std::vector<Term> terms_;
};

enum class RingOp { add, sub, mul };

MultiPoly ring_arith(const MultiPoly& a, const MultiPoly& b, RingOp op);

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const Integer& c);

MultiPoly pow(const MultiPoly& a, unsigned e);

/// Exact quotient num/den, or nullopt when den does not divide num over ZZ.
std::optional<MultiPoly> exact_div(const MultiPoly& num, const MultiPoly& den);

/// Divides every coefficient by c; c must divide all of them.
MultiPoly divexact(const MultiPoly& p, const Integer& c);

/// Coefficient of the highest power of `main`, as a polynomial over the same
/// variable list (its `main` exponents are all zero).
MultiPoly leading_coefficient_wrt(const MultiPoly& p, std::size_t main);

/// Coefficients of main^0 .. main^deg, each over the same variable list.
std::vector<MultiPoly> coefficients_wrt(const MultiPoly& p, std::size_t main);

MultiPoly derivative_wrt(const MultiPoly& p, std::size_t v);

/// Substitutes x_i <- c_i x_i for every non-main variable.
MultiPoly dilate(const MultiPoly& p, std::size_t main, const DilationScales& s);

/// c / prod c_i^alpha_i when exact. `exponents` are the non-main exponents,
/// aligned with the scales.
std::optional<Integer> undilate_coefficient(const Integer& c, const ExponentVector& exponents,
                                            const DilationScales& s);

/// Exponents of a term with the main variable removed.
ExponentVector other_exponents(const ExponentVector& e, std::size_t main);

struct ContentSplit {
    int unit = 1;           // sign of the leading coefficient
    Integer content;        // gcd of all coefficients, positive
    MultiPoly primitive;    // p = unit * content * primitive
};

ContentSplit integer_content_and_sign(const MultiPoly& p);

/// Evaluates variable v at an integer, leaving it with exponent zero.
MultiPoly evaluate(const MultiPoly& p, std::size_t v, const Integer& value);

/// Value of p with every variable at the given point.
Integer evaluate_all(const MultiPoly& p, const std::vector<Integer>& point);

/// Reorders the variables; new variable i is old variable perm[i].
MultiPoly permute_variables(const MultiPoly& p, const std::vector<std::size_t>& perm);

/// Re-expresses p over a larger variable list that contains all of p's
/// variables by name.
MultiPoly embed(const MultiPoly& p, const std::vector<std::string>& vars);

/// Multiplies by prod_v x_v^shift[v].
MultiPoly shift_monomial(const MultiPoly& p, const ExponentVector& shift);

} // namespace sparsefact

#endif
