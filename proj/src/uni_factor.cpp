#include "sparsefact/uni_factor.hpp"

#include <algorithm>
#include <cassert>

namespace sparsefact {

namespace {

ModPoly exact_quotient(const ModPoly& a, const ModPoly& b)
{
    auto [q, r] = divrem(a, b);
    assert(r.is_zero());
    return q;
}

ModPoly pth_root(const ModPoly& f)
{
    const std::uint64_t p = f.modulus;
    std::vector<std::uint64_t> c;
    for (std::size_t i = 0; i < f.coeffs.size(); i += p)
        c.push_back(f.coeffs[i]);
    return ModPoly(std::move(c), p);
}

// Squarefree decomposition of a monic polynomial over ZZ/p.
std::vector<ModFactor> squarefree_mod_p(const ModPoly& f)
{
    std::vector<ModFactor> out;
    if (f.degree() <= 0)
        return out;
    const std::uint64_t p = f.modulus;
    ModPoly fp = derivative(f);
    if (fp.is_zero()) {
        for (auto& [g, m] : squarefree_mod_p(pth_root(f)))
            out.push_back({g, m * static_cast<unsigned>(p)});
        return out;
    }
    ModPoly c = gcd(f, fp);
    ModPoly w = exact_quotient(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        ModPoly y = gcd(w, c);
        ModPoly fac = exact_quotient(w, y);
        if (fac.degree() > 0)
            out.push_back({monic(fac), i});
        ++i;
        w = y;
        c = exact_quotient(c, y);
    }
    if (!c.is_one()) {
        for (auto& [g, m] : squarefree_mod_p(monic(pth_root(c))))
            out.push_back({g, m * static_cast<unsigned>(p)});
    }
    return out;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ModPoly, unsigned>> distinct_degree(const ModPoly& f)
{
    const std::uint64_t p = f.modulus;
    std::vector<std::pair<ModPoly, unsigned>> out;
    ModPoly rest = f;
    ModPoly h = rem(ModPoly::x(p), rest);
    unsigned d = 0;
    const Integer pe = from_u64(p);
    while (rest.degree() >= 2 * static_cast<long>(d + 1)) {
        ++d;
        h = powmod(h, pe, rest);
        ModPoly g = gcd(h - ModPoly::x(p), rest);
        if (!g.is_one()) {
            out.emplace_back(g, d);
            rest = exact_quotient(rest, g);
            h = rem(h, rest);
        }
    }
    if (rest.degree() > 0)
        out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
    return out;
}

// Cantor-Zassenhaus splitting of a product of degree-d irreducibles.
void equal_degree(const ModPoly& g, unsigned d, std::mt19937_64& rng, std::vector<ModPoly>& out)
{
    if (g.degree() == static_cast<long>(d)) {
        out.push_back(g);
        return;
    }
    const std::uint64_t p = g.modulus;
    Integer e = pow_ui(from_u64(p), d);
    e = (e - 1) / 2;
    while (true) {
        ModPoly a = random_poly(static_cast<std::size_t>(g.degree()), p, rng);
        if (a.degree() < 1)
            continue;
        ModPoly b = powmod(a, e, g) - ModPoly::one(p);
        ModPoly h = gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            equal_degree(h, d, rng, out);
            equal_degree(exact_quotient(g, h), d, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Arithmetic on integer polynomials modulo a big modulus m.
// ---------------------------------------------------------------------------

UniPoly reduce(const UniPoly& f, const Integer& m)
{
    UniPoly r = f;
    for (auto& c : r.coeffs)
        c = mod_nonneg(c, m);
    r.trim();
    return r;
}

UniPoly mul_mod(const UniPoly& a, const UniPoly& b, const Integer& m)
{
    return reduce(a * b, m);
}

// a = q*b + r modulo m, b monic.
std::pair<UniPoly, UniPoly> divrem_monic(const UniPoly& a, const UniPoly& b, const Integer& m)
{
    assert(!b.is_zero() && mod_nonneg(b.lc(), m) == 1);
    UniPoly r = reduce(a, m);
    if (r.degree() < b.degree())
        return {UniPoly{}, r};
    const long db = b.degree();
    std::vector<Integer> q(static_cast<std::size_t>(r.degree() - db + 1));
    for (long i = r.degree() - db; i >= 0; --i) {
        Integer c = mod_nonneg(r.coeffs[static_cast<std::size_t>(i + db)], m);
        q[static_cast<std::size_t>(i)] = c;
        if (c == 0)
            continue;
        for (long j = 0; j <= db; ++j) {
            auto& slot = r.coeffs[static_cast<std::size_t>(i + j)];
            mpz_submul(slot.get_mpz_t(), c.get_mpz_t(), b.coeffs[static_cast<std::size_t>(j)].get_mpz_t());
            slot = mod_nonneg(slot, m);
        }
    }
    r.trim();
    return {reduce(UniPoly(std::move(q)), m), r};
}

struct HenselQuad {
    UniPoly g, h, s, t;
};

// One quadratic Hensel step: input valid modulo m, output modulo m^2.
HenselQuad hensel_step(const UniPoly& f, const HenselQuad& in, const Integer& m)
{
    const Integer m2 = m * m;
    UniPoly e = reduce(f - in.g * in.h, m2);
    auto [q, r] = divrem_monic(mul_mod(in.s, e, m2), in.h, m2);
    UniPoly gs = reduce(in.g + in.t * e + q * in.g, m2);
    UniPoly hs = reduce(in.h + r, m2);
    UniPoly b = reduce(in.s * gs + in.t * hs - UniPoly{1}, m2);
    auto [c, d] = divrem_monic(mul_mod(in.s, b, m2), hs, m2);
    UniPoly ss = reduce(in.s - d, m2);
    UniPoly ts = reduce(in.t - in.t * b - c * gs, m2);
    return {gs, hs, ss, ts};
}

UniPoly product_mod_p(const std::vector<ModPoly>& fs, std::size_t from, std::size_t to, std::uint64_t p)
{
    ModPoly r = ModPoly::one(p);
    for (std::size_t i = from; i < to; ++i)
        r = r * fs[i];
    return to_unipoly(r);
}

// f is congruent to c * prod(factors) with deg f = sum of factor degrees;
// lifts every factor to monic form modulo `target`.
void lift_tree(const UniPoly& f, const std::vector<ModPoly>& factors, std::uint64_t p, const Integer& target,
               std::vector<UniPoly>& out)
{
    long deg = 0;
    for (const auto& u : factors)
        deg += u.degree();
    const Integer c = f[static_cast<std::size_t>(deg)];
    if (factors.size() == 1) {
        Integer cinv;
        mpz_invert(cinv.get_mpz_t(), c.get_mpz_t(), target.get_mpz_t());
        UniPoly u = f;
        u.coeffs.resize(static_cast<std::size_t>(deg) + 1);
        u.trim();
        out.push_back(reduce(u * cinv, target));
        return;
    }
    const std::size_t half = factors.size() / 2;
    const Integer P = from_u64(p);
    UniPoly g = reduce(product_mod_p(factors, 0, half, p) * c, P);
    UniPoly h = product_mod_p(factors, half, factors.size(), p);
    ExtGcd eg = ext_gcd(ModPoly::from(g, p), ModPoly::from(h, p));
    if (!eg.g.is_one())
        throw StructuralError("Hensel lifting needs pairwise coprime factors mod p");
    HenselQuad st{g, h, to_unipoly(eg.s), to_unipoly(eg.t)};
    for (Integer m = P; m < target; m = m * m)
        st = hensel_step(f, st, m);
    lift_tree(st.g, {factors.begin(), factors.begin() + static_cast<long>(half)}, p, target, out);
    lift_tree(st.h, {factors.begin() + static_cast<long>(half), factors.end()}, p, target, out);
}

template <class Fn>
bool for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn)
{
    if (k > pool.size())
        return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    std::vector<std::size_t> pick(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i)
            pick[i] = pool[idx[i]];
        if (fn(pick))
            return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1))
            --i;
        if (i == 0)
            return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

UniPoly symmetric(const UniPoly& f, const Integer& m)
{
    UniPoly r = f;
    for (auto& c : r.coeffs)
        c = smod(c, m);
    r.trim();
    return r;
}

bool canonical_less(const UniPoly& a, const UniPoly& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (std::size_t i = a.coeffs.size(); i-- > 0;)
        if (a.coeffs[i] != b.coeffs[i])
            return a.coeffs[i] < b.coeffs[i];
    return false;
}

// Irreducible factors of a primitive squarefree polynomial with positive lc
// and nonzero constant term.
std::vector<UniPoly> factor_squarefree(const UniPoly& f, std::mt19937_64& rng)
{
    if (f.degree() <= 1)
        return {f};

    // Try a handful of admissible primes and keep the one with fewest
    // modular factors.
    std::vector<ModPoly> best;
    std::uint64_t best_p = 0;
    int tried = 0;
    for (std::uint64_t p = 13; tried < 5 && p < 100000; p += 2) {
        if (!zp::is_prime(p) || mod_u64(f.lc(), p) == 0)
            continue;
        ModPoly fp = ModPoly::from(f, p);
        if (gcd(fp, derivative(fp)).degree() != 0)
            continue;
        ++tried;
        std::vector<ModPoly> fs;
        for (auto& mf : factor_mod_p(fp, rng))
            fs.push_back(mf.factor);
        if (best_p == 0 || fs.size() < best.size()) {
            best = std::move(fs);
            best_p = p;
        }
        if (best.size() == 1)
            return {f};
    }
    if (best_p == 0)
        throw StructuralError("no admissible prime for univariate factorization");

    LiftedFactors lifted = hensel_lift_uni(f, best, mignotte_bound(f));
    const Integer& M = lifted.modulus;
    std::vector<UniPoly> result;
    UniPoly rest = f;
    std::vector<std::size_t> pool(lifted.factors.size());
    for (std::size_t i = 0; i < pool.size(); ++i)
        pool[i] = i;

    std::size_t k = 1;
    while (2 * k <= pool.size()) {
        std::vector<std::size_t> hit;
        UniPoly found, quotient;
        const Integer lcr = rest.lc();
        const Integer tail = lcr * rest.coeffs[0];
        bool ok = for_each_subset(pool, k, [&](const std::vector<std::size_t>& s) {
            Integer tc = lcr;
            for (std::size_t i : s)
                tc = mod_nonneg(tc * lifted.factors[i].coeffs[0], M);
            tc = smod(tc, M);
            if (tc == 0 || !divides(tc, tail))
                return false;
            UniPoly cand = UniPoly{1} * lcr;
            for (std::size_t i : s)
                cand = reduce(cand * lifted.factors[i], M);
            cand = primitive_part(symmetric(cand, M));
            auto q = exact_div(rest, cand);
            if (!q)
                return false;
            hit = s;
            found = std::move(cand);
            quotient = std::move(*q);
            return true;
        });
        if (!ok) {
            ++k;
            continue;
        }
        result.push_back(found);
        rest = quotient;
        std::erase_if(pool, [&](std::size_t i) { return std::find(hit.begin(), hit.end(), i) != hit.end(); });
    }
    if (rest.degree() > 0)
        result.push_back(primitive_part(rest));
    return result;
}

} // namespace

bool squarefree_check(const UniPoly& f)
{
    if (f.is_zero())
        throw StructuralError("squarefree check of the zero polynomial");
    if (f.degree() <= 1)
        return true;
    int tried = 0;
    for (std::uint64_t p = 2147483647u; tried < 3; p -= 2) {
        if (!zp::is_prime(p) || mod_u64(f.lc(), p) == 0)
            continue;
        ++tried;
        ModPoly fp = ModPoly::from(f, p);
        if (gcd(fp, derivative(fp)).degree() == 0)
            return true;
    }
    return gcd(f, derivative(f)).degree() == 0;
}

std::vector<ModFactor> factor_mod_p(const ModPoly& f, std::mt19937_64& rng)
{
    const std::uint64_t p = f.modulus;
    if (p < 3 || !zp::is_prime(p))
        throw StructuralError("factor_mod_p needs an odd prime modulus");
    if (f.is_zero())
        throw StructuralError("factor_mod_p of the zero polynomial");
    std::vector<ModFactor> out;
    for (auto& [g, m] : squarefree_mod_p(monic(f)))
        for (auto& [h, d] : distinct_degree(g)) {
            std::vector<ModPoly> irr;
            equal_degree(h, d, rng, irr);
            for (auto& u : irr)
                out.push_back({u, m});
        }
    std::sort(out.begin(), out.end(), [](const ModFactor& a, const ModFactor& b) {
        if (a.factor.degree() != b.factor.degree())
            return a.factor.degree() < b.factor.degree();
        return std::lexicographical_compare(a.factor.coeffs.rbegin(), a.factor.coeffs.rend(),
                                            b.factor.coeffs.rbegin(), b.factor.coeffs.rend());
    });
    return out;
}

LiftedFactors hensel_lift_uni(const UniPoly& f, const std::vector<ModPoly>& factors, const Integer& bound)
{
    if (factors.empty())
        throw StructuralError("nothing to lift");
    const std::uint64_t p = factors.front().modulus;
    if (mod_u64(f.lc(), p) == 0)
        throw StructuralError("prime divides the leading coefficient");
    long deg = 0;
    for (const auto& u : factors)
        deg += u.degree();
    if (deg != f.degree())
        throw StructuralError("factor degrees do not add up");

    const Integer target = 2 * bound * abs(f.lc()) + 1;
    Integer modulus = from_u64(p);
    while (modulus < target)
        modulus = modulus * modulus;

    LiftedFactors out;
    out.modulus = modulus;
    lift_tree(f, factors, p, modulus, out.factors);
    return out;
}

Integer mignotte_bound(const UniPoly& f)
{
    if (f.is_zero())
        throw StructuralError("Mignotte bound of the zero polynomial");
    Integer b = isqrt_ceil(norm2_squared(f));
    mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(f.degree()));
    return b;
}

UniFactorization factor_univariate(const UniPoly& f, std::mt19937_64& rng)
{
    if (f.is_zero())
        throw StructuralError("factorization of the zero polynomial");
    UniFactorization out;
    out.unit = sgn(f.lc()) < 0 ? -1 : 1;
    out.content = content(f);
    UniPoly g = primitive_part(f);
    if (g.degree() == 0)
        return out;

    std::size_t low = 0;
    while (g.coeffs[low] == 0)
        ++low;
    if (low > 0) {
        out.factors.emplace_back(UniPoly{0, 1}, static_cast<unsigned>(low));
        g.coeffs.erase(g.coeffs.begin(), g.coeffs.begin() + static_cast<long>(low));
    }
    if (g.degree() > 0) {
        UniPoly sqf = primitive_part(*exact_div(g, gcd(g, derivative(g))));
        for (auto& u : factor_squarefree(sqf, rng)) {
            unsigned m = 0;
            while (auto q = exact_div(g, u)) {
                g = std::move(*q);
                ++m;
            }
            assert(m > 0);
            out.factors.emplace_back(std::move(u), m);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
    assert(expand(out) == f);
    return out;
}

UniFactorization factor_univariate(const UniPoly& f)
{
    std::mt19937_64 rng(0x51ab);
    return factor_univariate(f, rng);
}

UniPoly expand(const UniFactorization& fz)
{
    UniPoly r = UniPoly::monomial(fz.content * fz.unit, 0);
    for (const auto& [u, m] : fz.factors)
        for (unsigned i = 0; i < m; ++i)
            r = r * u;
    return r;
}

} // namespace sparsefact
