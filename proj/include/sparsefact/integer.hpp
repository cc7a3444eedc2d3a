/**
 * @file integer.hpp
 * @brief Arbitrary-precision integer helpers shared by every module.
 */
#ifndef SPARSEFACT_INTEGER_HPP
#define SPARSEFACT_INTEGER_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparsefact {

using Integer = mpz_class;

/// Raised when an operation's structural precondition does not hold
/// (mismatched variable lists, exponent overflow, exhausted guards).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Symmetric residue of a modulo m, in (-m/2, m/2].
inline Integer smod(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    Integer half = m / 2;
    if (r > half)
        r -= m;
    return r;
}

// Non-negative residue of a modulo m.
inline Integer mod_nonneg(const Integer& a, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::uint64_t mod_u64(const Integer& a, std::uint64_t p)
{
    return mpz_fdiv_ui(a.get_mpz_t(), p);
}

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool divides(const Integer& d, const Integer& n)
{
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::size_t bit_length(const Integer& a)
{
    return a == 0 ? 0 : mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline Integer pow_ui(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Smallest r with r*r >= n (n >= 0).
inline Integer isqrt_ceil(const Integer& n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r < n)
        ++r;
    return r;
}

inline Integer from_u64(std::uint64_t v)
{
    Integer r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

inline Integer from_i64(std::int64_t v)
{
    if (v >= 0)
        return from_u64(static_cast<std::uint64_t>(v));
    return -from_u64(static_cast<std::uint64_t>(-(v + 1)) + 1);
}

inline int sign(const Integer& a)
{
    return sgn(a);
}

} // namespace sparsefact

#endif
