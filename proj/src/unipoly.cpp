#include "sparsefact/unipoly.hpp"

#include <algorithm>
#include <cassert>

namespace sparsefact {

// ---------------------------------------------------------------------------
// UniPoly over ZZ
// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::initializer_list<long> c)
{
    for (long v : c)
        coeffs.emplace_back(v);
    trim();
}

UniPoly UniPoly::monomial(const Integer& c, std::size_t deg)
{
    UniPoly f;
    if (c != 0) {
        f.coeffs.assign(deg + 1, Integer(0));
        f.coeffs[deg] = c;
    }
    return f;
}

void UniPoly::trim()
{
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b)
{
    UniPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = a[i] + b[i];
    r.trim();
    return r;
}

UniPoly operator-(const UniPoly& a, const UniPoly& b)
{
    UniPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
        r.coeffs[i] = a[i] - b[i];
    r.trim();
    return r;
}

UniPoly operator-(const UniPoly& a)
{
    UniPoly r = a;
    for (auto& c : r.coeffs)
        c = -c;
    return r;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    UniPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            mpz_addmul(r.coeffs[i + j].get_mpz_t(), a.coeffs[i].get_mpz_t(), b.coeffs[j].get_mpz_t());
    }
    r.trim();
    return r;
}

UniPoly operator*(const UniPoly& a, const Integer& c)
{
    if (c == 0)
        return {};
    UniPoly r = a;
    for (auto& v : r.coeffs)
        v *= c;
    return r;
}

UniPoly derivative(const UniPoly& f)
{
    UniPoly r;
    for (std::size_t i = 1; i < f.coeffs.size(); ++i)
        r.coeffs.push_back(f.coeffs[i] * static_cast<unsigned long>(i));
    r.trim();
    return r;
}

Integer evaluate(const UniPoly& f, const Integer& x)
{
    Integer r = 0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        r *= x;
        r += f.coeffs[i];
    }
    return r;
}

UniPoly taylor_shift(const UniPoly& f, const Integer& a)
{
    UniPoly r = f;
    if (a == 0)
        return r;
    const std::size_t n = r.coeffs.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            mpz_addmul(r.coeffs[j].get_mpz_t(), r.coeffs[j + 1].get_mpz_t(), a.get_mpz_t());
    r.trim();
    return r;
}

Integer content(const UniPoly& f)
{
    Integer g = 0;
    for (const auto& c : f.coeffs) {
        g = gcd(g, c);
        if (g == 1)
            break;
    }
    return g;
}

UniPoly divexact(const UniPoly& f, const Integer& c)
{
    UniPoly r = f;
    for (auto& v : r.coeffs) {
        assert(divides(c, v));
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    }
    return r;
}

UniPoly primitive_part(const UniPoly& f)
{
    if (f.is_zero())
        return f;
    Integer c = content(f);
    if (sgn(f.lc()) < 0)
        c = -c;
    return divexact(f, c);
}

std::optional<UniPoly> exact_div(const UniPoly& num, const UniPoly& den)
{
    if (den.is_zero())
        throw StructuralError("division by the zero polynomial");
    if (num.is_zero())
        return UniPoly{};
    if (num.degree() < den.degree())
        return std::nullopt;
    std::vector<Integer> r = num.coeffs;
    const long dn = den.degree();
    std::vector<Integer> q(static_cast<std::size_t>(num.degree() - dn + 1));
    const Integer& l = den.lc();
    for (long i = num.degree() - dn; i >= 0; --i) {
        Integer& top = r[static_cast<std::size_t>(i + dn)];
        if (top == 0)
            continue;
        if (!divides(l, top))
            return std::nullopt;
        Integer c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), l.get_mpz_t());
        for (long j = 0; j <= dn; ++j)
            mpz_submul(r[static_cast<std::size_t>(i + j)].get_mpz_t(), c.get_mpz_t(),
                       den.coeffs[static_cast<std::size_t>(j)].get_mpz_t());
        q[static_cast<std::size_t>(i)] = std::move(c);
    }
    for (long j = 0; j < dn; ++j)
        if (r[static_cast<std::size_t>(j)] != 0)
            return std::nullopt;
    return UniPoly(std::move(q));
}

Integer norm2_squared(const UniPoly& f)
{
    Integer s = 0;
    for (const auto& c : f.coeffs)
        mpz_addmul(s.get_mpz_t(), c.get_mpz_t(), c.get_mpz_t());
    return s;
}

Integer height(const UniPoly& f)
{
    Integer h = 0;
    for (const auto& c : f.coeffs)
        if (mpz_cmpabs(c.get_mpz_t(), h.get_mpz_t()) > 0)
            h = abs(c);
    return h;
}

namespace {

UniPoly pseudo_remainder(const UniPoly& a, const UniPoly& b)
{
    UniPoly r = a;
    const long db = b.degree();
    const Integer& l = b.lc();
    while (!r.is_zero() && r.degree() >= db) {
        const long shift = r.degree() - db;
        Integer top = r.lc();
        for (auto& c : r.coeffs)
            c *= l;
        for (long j = 0; j <= db; ++j)
            mpz_submul(r.coeffs[static_cast<std::size_t>(j + shift)].get_mpz_t(), top.get_mpz_t(),
                       b.coeffs[static_cast<std::size_t>(j)].get_mpz_t());
        r.trim();
    }
    return r;
}

UniPoly gcd_prs(UniPoly a, UniPoly b)
{
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        UniPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = primitive_part(r);
    }
    return primitive_part(a);
}

std::optional<UniPoly> gcd_heuristic(const UniPoly& a, const UniPoly& b)
{
    Integer z = 2 * std::min(height(a), height(b)) + 2;
    for (int attempt = 0; attempt < 6; ++attempt, z *= 2) {
        Integer g = gcd(evaluate(a, z), evaluate(b, z));
        std::vector<Integer> digits;
        while (g != 0) {
            Integer d = smod(g, z);
            digits.push_back(d);
            g -= d;
            mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
        }
        UniPoly cand = primitive_part(UniPoly(std::move(digits)));
        if (cand.is_zero())
            continue;
        if (exact_div(a, cand) && exact_div(b, cand))
            return cand;
    }
    return std::nullopt;
}

} // namespace

UniPoly gcd(const UniPoly& a, const UniPoly& b)
{
    if (a.is_zero())
        return primitive_part(b) * content(b);
    if (b.is_zero())
        return primitive_part(a) * content(a);
    Integer g = gcd(content(a), content(b));
    UniPoly pa = primitive_part(a), pb = primitive_part(b);
    if (pa.degree() == 0 || pb.degree() == 0)
        return UniPoly::monomial(g, 0);
    // Common power of x first: keeps the heuristic images small.
    std::size_t low = 0;
    while (pa.coeffs[low] == 0 && pb.coeffs[low] == 0)
        ++low;
    if (low > 0) {
        pa.coeffs.erase(pa.coeffs.begin(), pa.coeffs.begin() + static_cast<long>(low));
        pb.coeffs.erase(pb.coeffs.begin(), pb.coeffs.begin() + static_cast<long>(low));
    }
    UniPoly core;
    if (auto h = gcd_heuristic(pa, pb))
        core = *h;
    else
        core = gcd_prs(pa, pb);
    return core * UniPoly::monomial(g, low);
}

// ---------------------------------------------------------------------------
// ZZ/p arithmetic
// ---------------------------------------------------------------------------

namespace zp {

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1)
        throw StructuralError("residue is not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % q == 0)
            return n == q;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1)
                r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

} // namespace zp

void ModPoly::trim()
{
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
}

ModPoly ModPoly::from(const UniPoly& f, std::uint64_t p)
{
    std::vector<std::uint64_t> c(f.coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mod_u64(f.coeffs[i], p);
    return ModPoly(std::move(c), p);
}

ModPoly operator+(const ModPoly& a, const ModPoly& b)
{
    const std::uint64_t p = a.modulus;
    std::vector<std::uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = zp::add(i < a.coeffs.size() ? a.coeffs[i] : 0, i < b.coeffs.size() ? b.coeffs[i] : 0, p);
    return ModPoly(std::move(c), p);
}

ModPoly operator-(const ModPoly& a, const ModPoly& b)
{
    const std::uint64_t p = a.modulus;
    std::vector<std::uint64_t> c(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = zp::sub(i < a.coeffs.size() ? a.coeffs[i] : 0, i < b.coeffs.size() ? b.coeffs[i] : 0, p);
    return ModPoly(std::move(c), p);
}

ModPoly operator*(const ModPoly& a, const ModPoly& b)
{
    const std::uint64_t p = a.modulus;
    if (a.is_zero() || b.is_zero())
        return ModPoly({}, p);
    std::vector<unsigned __int128> acc(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            acc[i + j] += static_cast<unsigned __int128>(a.coeffs[i]) * b.coeffs[j];
    }
    std::vector<std::uint64_t> c(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        c[i] = static_cast<std::uint64_t>(acc[i] % p);
    return ModPoly(std::move(c), p);
}

ModPoly scale(const ModPoly& a, std::uint64_t c)
{
    std::vector<std::uint64_t> r(a.coeffs.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = zp::mul(a.coeffs[i], c % a.modulus, a.modulus);
    return ModPoly(std::move(r), a.modulus);
}

ModPoly monic(const ModPoly& a)
{
    if (a.is_zero())
        return a;
    return scale(a, zp::inv(a.lc(), a.modulus));
}

ModPoly derivative(const ModPoly& a)
{
    std::vector<std::uint64_t> c;
    for (std::size_t i = 1; i < a.coeffs.size(); ++i)
        c.push_back(zp::mul(a.coeffs[i], i % a.modulus, a.modulus));
    return ModPoly(std::move(c), a.modulus);
}

std::pair<ModPoly, ModPoly> divrem(const ModPoly& a, const ModPoly& b)
{
    const std::uint64_t p = a.modulus;
    if (b.is_zero())
        throw StructuralError("division by the zero polynomial mod p");
    if (a.degree() < b.degree())
        return {ModPoly({}, p), a};
    std::vector<std::uint64_t> r = a.coeffs;
    const long db = b.degree();
    std::vector<std::uint64_t> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
    const std::uint64_t linv = zp::inv(b.lc(), p);
    for (long i = a.degree() - db; i >= 0; --i) {
        std::uint64_t c = zp::mul(r[static_cast<std::size_t>(i + db)], linv, p);
        q[static_cast<std::size_t>(i)] = c;
        if (c == 0)
            continue;
        for (long j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(i + j)];
            slot = zp::sub(slot, zp::mul(c, b.coeffs[static_cast<std::size_t>(j)], p), p);
        }
    }
    r.resize(static_cast<std::size_t>(db));
    return {ModPoly(std::move(q), p), ModPoly(std::move(r), p)};
}

ModPoly rem(const ModPoly& a, const ModPoly& b)
{
    return divrem(a, b).second;
}

ModPoly gcd(const ModPoly& a, const ModPoly& b)
{
    ModPoly x = a, y = b;
    while (!y.is_zero()) {
        ModPoly r = rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

ExtGcd ext_gcd(const ModPoly& a, const ModPoly& b)
{
    const std::uint64_t p = a.modulus;
    ModPoly r0 = a, r1 = b;
    ModPoly s0 = ModPoly::one(p), s1({}, p);
    ModPoly t0({}, p), t1 = ModPoly::one(p);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        ModPoly s2 = s0 - q * s1;
        ModPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    std::uint64_t linv = zp::inv(r0.lc(), p);
    return {scale(r0, linv), scale(s0, linv), scale(t0, linv)};
}

ModPoly powmod(const ModPoly& base, const Integer& e, const ModPoly& m)
{
    ModPoly result = rem(ModPoly::one(base.modulus), m);
    ModPoly b = rem(base, m);
    const std::size_t bits = bit_length(e);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(result * result, m);
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = rem(result * b, m);
    }
    return result;
}

ModPoly random_poly(std::size_t deg_bound, std::uint64_t p, std::mt19937_64& rng)
{
    std::vector<std::uint64_t> c(deg_bound);
    for (auto& v : c)
        v = rng() % p;
    return ModPoly(std::move(c), p);
}

UniPoly to_unipoly(const ModPoly& f)
{
    std::vector<Integer> c;
    c.reserve(f.coeffs.size());
    for (auto v : f.coeffs)
        c.push_back(from_u64(v));
    return UniPoly(std::move(c));
}

} // namespace sparsefact
