/**
 * @file unipoly.hpp
 * @brief Dense univariate polynomials over ZZ and over ZZ/p.
 */
#ifndef SPARSEFACT_UNIPOLY_HPP
#define SPARSEFACT_UNIPOLY_HPP

#include "sparsefact/integer.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace sparsefact {

/// Coefficients lowest degree first; no trailing zeros.
struct UniPoly {
    std::vector<Integer> coeffs;

    UniPoly() = default;
    explicit UniPoly(std::vector<Integer> c) : coeffs(std::move(c)) { trim(); }
    UniPoly(std::initializer_list<long> c);

    static UniPoly monomial(const Integer& c, std::size_t deg);

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const Integer& lc() const { return coeffs.back(); }
    Integer operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Integer(0); }
    void trim();

    friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

UniPoly operator+(const UniPoly& a, const UniPoly& b);
UniPoly operator-(const UniPoly& a, const UniPoly& b);
UniPoly operator*(const UniPoly& a, const UniPoly& b);
UniPoly operator*(const UniPoly& a, const Integer& c);
UniPoly operator-(const UniPoly& a);

UniPoly derivative(const UniPoly& f);
Integer evaluate(const UniPoly& f, const Integer& x);
/// f(x + a).
UniPoly taylor_shift(const UniPoly& f, const Integer& a);

Integer content(const UniPoly& f);
/// f / content with positive leading coefficient.
UniPoly primitive_part(const UniPoly& f);
/// Exact quotient over ZZ, or nullopt.
std::optional<UniPoly> exact_div(const UniPoly& num, const UniPoly& den);
UniPoly divexact(const UniPoly& f, const Integer& c);
/// Greatest common divisor over ZZ, positive leading coefficient.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
/// Squared 2-norm.
Integer norm2_squared(const UniPoly& f);
Integer height(const UniPoly& f);

/// Dense polynomial over ZZ/p, p an odd prime below 2^32. Residues in
/// [0, p); no trailing zeros.
struct ModPoly {
    std::vector<std::uint64_t> coeffs;
    std::uint64_t modulus = 0;

    ModPoly() = default;
    ModPoly(std::vector<std::uint64_t> c, std::uint64_t p) : coeffs(std::move(c)), modulus(p) { trim(); }
    static ModPoly from(const UniPoly& f, std::uint64_t p);
    static ModPoly one(std::uint64_t p) { return ModPoly({1}, p); }
    static ModPoly x(std::uint64_t p) { return ModPoly({0, 1}, p); }

    bool is_zero() const { return coeffs.empty(); }
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    std::uint64_t lc() const { return coeffs.back(); }
    bool is_one() const { return coeffs.size() == 1 && coeffs[0] == 1; }
    void trim();

    friend bool operator==(const ModPoly&, const ModPoly&) = default;
};

namespace zp {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a + b >= p ? a + b - p : a + b; }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);

} // namespace zp

ModPoly operator+(const ModPoly& a, const ModPoly& b);
ModPoly operator-(const ModPoly& a, const ModPoly& b);
ModPoly operator*(const ModPoly& a, const ModPoly& b);
ModPoly scale(const ModPoly& a, std::uint64_t c);
ModPoly monic(const ModPoly& a);
ModPoly derivative(const ModPoly& a);
/// Quotient and remainder; b nonzero.
std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b);
ModPoly rem(const ModPoly& a, const ModPoly& b);
/// Monic gcd.
ModPoly gcd(const ModPoly& a, const ModPoly& b);
/// (g, s, t) with s a + t b = g monic.
struct ExtGcd {
    ModPoly g, s, t;
};
ExtGcd ext_gcd(const ModPoly& a, const ModPoly& b);
/// base^e mod m, e given as an arbitrary-precision exponent.
ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& m);
ModPoly random_poly(std::size_t deg_bound, std::uint64_t p, std::mt19937_64& rng);
/// Lifts residues to UniPoly with representatives in [0, p).
UniPoly to_unipoly(const ModPoly& f);

} // namespace sparsefact

#endif
