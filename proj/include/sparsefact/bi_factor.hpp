/**
 * @file bi_factor.hpp
 * @brief Factorization of bivariate polynomials over ZZ in (x, t).
 *
 * The built-in factorizer removes the content in t, picks an anchor t = a at
 * which the image stays squarefree with the same x-degree, factors the
 * univariate image, lifts the monic factors in powers of (t - a) modulo a
 * few word-size primes, and recombines subsets by CRT plus exact trial
 * division over ZZ[x, t].
 *
 * An external program can be plugged in instead; its answer is only
 * accepted after multiplying it back.
 */
#ifndef SPARSEFACT_BI_FACTOR_HPP
#define SPARSEFACT_BI_FACTOR_HPP

#include "sparsefact/bipoly.hpp"
#include "sparsefact/unipoly.hpp"

#include <chrono>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsefact {

struct BiFactorization {
    int unit = 1;
    BiPoly content_t;              // xdeg 0, positive leading coefficient
    std::vector<BiPoly> factors;   // primitive, irreducible, positive lc
};

/// unit * content_t * prod(factors).
BiPoly expand(const BiFactorization& fz);

/// The input has a repeated factor of positive x-degree.
class NotSquarefreeError : public StructuralError {
public:
    using StructuralError::StructuralError;
};

/// Coefficients of x^0 .. x^deg as polynomials in t.
std::vector<UniPoly> x_coefficients(const BiPoly& p);
BiPoly from_x_coefficients(const std::vector<UniPoly>& cs);
/// F(x, a) as a polynomial in x.
UniPoly evaluate_t(const BiPoly& p, const Integer& a);

/// Smallest |a| (0, 1, -1, 2, -2, ...) with lc_x(F)(a) != 0 and F(x, a)
/// squarefree. F must be primitive in t.
std::int64_t choose_anchor(const BiPoly& f);

BiFactorization factor_bivariate(const BiPoly& f, std::mt19937_64& rng);
BiFactorization factor_bivariate(const BiPoly& f);

struct ExternalBackend {
    std::string command;                       // run through /bin/sh -c
    std::chrono::milliseconds timeout{60000};
};

/// Raised when the external program fails, times out, or returns something
/// that does not multiply back to the input. Carries the built-in result.
class BackendError : public std::runtime_error {
public:
    BackendError(const std::string& msg, BiFactorization fallback)
        : std::runtime_error(msg), fallback_(std::move(fallback))
    {
    }
    const BiFactorization& fallback() const { return fallback_; }

private:
    BiFactorization fallback_;
};

BiFactorization factor_bivariate_external(const BiPoly& f, const ExternalBackend& backend);

/// Text sent to an external backend on stdin.
std::string backend_request(const BiPoly& f);
/// Parses a backend reply and checks it against f; throws std::runtime_error
/// describing the first problem.
BiFactorization parse_backend_reply(const BiPoly& f, const std::string& reply);

} // namespace sparsefact

#endif
