#include "sparsefact/bi_factor.hpp"

#include "sparsefact/uni_factor.hpp"

#include <algorithm>
#include <cassert>
#include <optional>

namespace sparsefact {

// ---------------------------------------------------------------------------
// Dense views
// ---------------------------------------------------------------------------

std::vector<UniPoly> x_coefficients(const BiPoly& p)
{
    if (p.is_zero())
        return {};
    std::vector<UniPoly> cs(std::size_t{p.xdegree()} + 1);
    for (const auto& t : p.terms()) {
        auto& c = cs[t.xdeg].coeffs;
        if (c.size() <= t.tdeg)
            c.resize(std::size_t{t.tdeg} + 1, Integer(0));
        c[t.tdeg] = t.coeff;
    }
    return cs;
}

BiPoly from_x_coefficients(const std::vector<UniPoly>& cs)
{
    std::vector<BiTerm> terms;
    for (std::size_t i = cs.size(); i-- > 0;)
        for (std::size_t j = cs[i].coeffs.size(); j-- > 0;)
            if (cs[i].coeffs[j] != 0)
                terms.push_back(BiTerm{static_cast<Exponent>(i), static_cast<Exponent>(j), cs[i].coeffs[j]});
    return BiPoly::from_canonical(std::move(terms));
}

UniPoly evaluate_t(const BiPoly& p, const Integer& a)
{
    auto cs = x_coefficients(p);
    std::vector<Integer> out(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        out[i] = evaluate(cs[i], a);
    return UniPoly(std::move(out));
}

BiPoly expand(const BiFactorization& fz)
{
    BiPoly r = fz.content_t;
    if (fz.unit < 0)
        r = -r;
    for (const auto& f : fz.factors)
        r = r * f;
    return r;
}

namespace {

class LiftFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Content in t of a nonzero bivariate polynomial: gcd over ZZ[t] of its
// x-coefficients, positive leading coefficient.
UniPoly t_content(const std::vector<UniPoly>& cs)
{
    UniPoly g;
    for (const auto& c : cs) {
        if (c.is_zero())
            continue;
        g = gcd(g, c);
        if (g.degree() == 0 && g.lc() == 1)
            break;
    }
    return g;
}

BiPoly t_primitive(const BiPoly& p)
{
    auto cs = x_coefficients(p);
    UniPoly g = t_content(cs);
    if (sgn(p.leading_term().coeff) < 0)
        g = -g;
    for (auto& c : cs)
        if (!c.is_zero())
            c = *exact_div(c, g);
    return from_x_coefficients(cs);
}

std::optional<BiPoly> bi_exact_div(const BiPoly& num, const BiPoly& den)
{
    auto q = exact_div(to_multipoly(num), to_multipoly(den));
    if (!q)
        return std::nullopt;
    return from_multipoly(*q);
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a word-size prime on dense x-polynomials and on power
// series in s = t - anchor whose coefficients are x-polynomials.
// ---------------------------------------------------------------------------

using Vec = std::vector<std::uint64_t>;
using Series = std::vector<Vec>;

void addmul(Vec& acc, const Vec& a, const Vec& b, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return;
    std::vector<unsigned __int128> tmp(a.size() + b.size() - 1, 0);
    bool any = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        any = true;
        for (std::size_t j = 0; j < b.size(); ++j)
            tmp[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
    }
    if (!any)
        return;
    if (acc.size() < tmp.size())
        acc.resize(tmp.size(), 0);
    for (std::size_t i = 0; i < tmp.size(); ++i)
        acc[i] = (acc[i] + static_cast<std::uint64_t>(tmp[i] % p)) % p;
}

Vec shift_mod(Vec c, std::uint64_t a, std::uint64_t p)
{
    if (a == 0)
        return c;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            c[j] = (c[j] + a * c[j + 1]) % p;
    return c;
}

Vec residues(const UniPoly& f, std::uint64_t p, std::size_t len)
{
    Vec v(std::max(len, f.coeffs.size()), 0);
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        v[i] = mod_u64(f.coeffs[i], p);
    return v;
}

bool is_zero_vec(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](std::uint64_t c) { return c == 0; });
}

Series series_mul(const Series& a, const Series& b, std::size_t len, std::uint64_t p)
{
    Series out(len);
    for (std::size_t k = 0; k < len; ++k)
        for (std::size_t i = 0; i <= k; ++i)
            if (i < a.size() && k - i < b.size())
                addmul(out[k], a[i], b[k - i], p);
    return out;
}

struct PrimeLift {
    std::uint64_t p = 0;
    Vec lc_series;                 // lc_x(F)(s + anchor)
    std::vector<Series> factors;   // monic lifted factors
};

struct Candidate {
    Integer modulus = 1;
    std::vector<std::vector<Integer>> values;   // [xdeg][tdeg], residues
};

class BivariateLifter {
public:
    BivariateLifter(const BiPoly& f, std::int64_t anchor, std::vector<UniPoly> image_factors)
        : f_(f), anchor_(anchor), us_(std::move(image_factors))
    {
        cs_ = x_coefficients(f_);
        n_ = f_.xdegree();
        dt_ = f_.tdegree();
        len_ = std::size_t{dt_} + 1 + guard_;
        lc_ = cs_.back();
        f0_ = evaluate_t(f_, Integer(static_cast<long>(anchor_)));

        Integer nf = 0;
        for (const auto& t : f_.terms())
            mpz_addmul(nf.get_mpz_t(), t.coeff.get_mpz_t(), t.coeff.get_mpz_t());
        bound_ = isqrt_ceil(nf) * isqrt_ceil(norm2_squared(lc_));
        mpz_mul_2exp(bound_.get_mpz_t(), bound_.get_mpz_t(), std::size_t{n_} + dt_);
        next_prime_ = 2147483647u;
    }

    std::vector<BiPoly> run()
    {
        std::vector<BiPoly> result;
        BiPoly rest = f_;
        std::vector<std::size_t> pool(us_.size());
        for (std::size_t i = 0; i < pool.size(); ++i)
            pool[i] = i;

        std::size_t k = 1;
        while (2 * k <= pool.size()) {
            std::optional<std::pair<std::vector<std::size_t>, BiPoly>> hit;
            for_each_subset(pool, k, [&](const std::vector<std::size_t>& s) {
                if (auto g = try_subset(s, rest)) {
                    hit.emplace(s, std::move(*g));
                    return true;
                }
                return false;
            });
            if (!hit) {
                ++k;
                continue;
            }
            auto& [s, g] = *hit;
            rest = *bi_exact_div(rest, g);
            result.push_back(std::move(g));
            std::erase_if(pool, [&](std::size_t i) { return std::find(s.begin(), s.end(), i) != s.end(); });
        }
        if (rest.xdegree() > 0)
            result.push_back(t_primitive(rest));
        return result;
    }

private:
    template <class Fn>
    static void for_each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn)
    {
        std::vector<std::size_t> idx(k), pick(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        while (true) {
            for (std::size_t i = 0; i < k; ++i)
                pick[i] = pool[idx[i]];
            if (fn(pick))
                return;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1))
                --i;
            if (i == 0)
                return;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }

    // The candidate for subset s is lc_x(F) * prod(monic lifts) truncated,
    // which equals lc(F_rest) * F_s exactly when F_s is a true factor and has
    // t-degree at most deg_t(F). Coefficients above that degree must vanish
    // modulo every prime.
    std::optional<BiPoly> try_subset(const std::vector<std::size_t>& s, const BiPoly& rest)
    {
        Candidate acc;
        std::optional<BiPoly> previous;
        for (std::size_t j = 0;; ++j) {
            const PrimeLift& pl = lift(j);
            auto image = candidate_image(pl, s);
            if (!image)
                return std::nullopt;
            crt_add(acc, pl.p, *image);
            BiPoly rec = symmetric(acc);
            const bool at_bound = acc.modulus > 2 * bound_;
            if ((previous && rec == *previous) || at_bound) {
                if (!rec.is_zero() && rec.xdegree() > 0) {
                    BiPoly cand = t_primitive(rec);
                    if (bi_exact_div(rest, cand))
                        return cand;
                }
                if (at_bound)
                    return std::nullopt;
            }
            previous = std::move(rec);
        }
    }

    std::optional<std::vector<Vec>> candidate_image(const PrimeLift& pl, const std::vector<std::size_t>& s) const
    {
        const std::uint64_t p = pl.p;
        Series prod = pl.factors[s[0]];
        for (std::size_t i = 1; i < s.size(); ++i)
            prod = series_mul(prod, pl.factors[s[i]], len_, p);
        Series lcs(len_);
        for (std::size_t k = 0; k < len_; ++k)
            lcs[k] = Vec{pl.lc_series[k]};
        Series c = series_mul(lcs, prod, len_, p);
        for (std::size_t k = std::size_t{dt_} + 1; k < len_; ++k)
            if (!is_zero_vec(c[k]))
                return std::nullopt;

        std::size_t xdeg = 0;
        for (std::size_t i : s)
            xdeg += static_cast<std::size_t>(us_[i].degree());
        const std::uint64_t back = (p - mod_u64(Integer(static_cast<long>(anchor_)), p)) % p;
        std::vector<Vec> out(xdeg + 1);
        for (std::size_t i = 0; i <= xdeg; ++i) {
            Vec col(std::size_t{dt_} + 1, 0);
            for (std::size_t k = 0; k <= dt_; ++k)
                col[k] = i < c[k].size() ? c[k][i] : 0;
            out[i] = shift_mod(std::move(col), back, p);
        }
        return out;
    }

    static void crt_add(Candidate& acc, std::uint64_t p, const std::vector<Vec>& image)
    {
        if (acc.values.empty()) {
            acc.values.resize(image.size());
            for (std::size_t i = 0; i < image.size(); ++i)
                for (auto r : image[i])
                    acc.values[i].push_back(from_u64(r));
            acc.modulus = from_u64(p);
            return;
        }
        const std::uint64_t minv = zp::inv(mod_u64(acc.modulus, p), p);
        for (std::size_t i = 0; i < image.size(); ++i)
            for (std::size_t j = 0; j < image[i].size(); ++j) {
                Integer& x = acc.values[i][j];
                std::uint64_t diff = zp::sub(image[i][j], mod_u64(x, p), p);
                std::uint64_t k = zp::mul(diff, minv, p);
                if (k)
                    x += acc.modulus * from_u64(k);
            }
        acc.modulus *= from_u64(p);
    }

    static BiPoly symmetric(const Candidate& acc)
    {
        std::vector<UniPoly> cs;
        for (const auto& row : acc.values) {
            std::vector<Integer> c;
            for (const auto& v : row)
                c.push_back(smod(v, acc.modulus));
            cs.emplace_back(std::move(c));
        }
        return from_x_coefficients(cs);
    }

    const PrimeLift& lift(std::size_t j)
    {
        while (lifts_.size() <= j) {
            if (next_prime_ < (1u << 30))
                throw LiftFailure("ran out of lifting primes");
            std::uint64_t p = next_prime_;
            next_prime_ -= 2;
            if (!zp::is_prime(p))
                continue;
            if (auto pl = compute_lift(p))
                lifts_.push_back(std::move(*pl));
        }
        return lifts_[j];
    }

    std::optional<PrimeLift> compute_lift(std::uint64_t p) const
    {
        const std::uint64_t a = mod_u64(Integer(static_cast<long>(anchor_)), p);
        if (mod_u64(evaluate(lc_, Integer(static_cast<long>(anchor_))), p) == 0)
            return std::nullopt;
        for (const auto& u : us_)
            if (mod_u64(u.lc(), p) == 0)
                return std::nullopt;
        ModPoly f0p = ModPoly::from(f0_, p);
        if (f0p.degree() != static_cast<long>(n_) || gcd(f0p, derivative(f0p)).degree() != 0)
            return std::nullopt;

        const std::size_t L = len_;
        PrimeLift out;
        out.p = p;
        out.lc_series = shift_mod(residues(lc_, p, L), a, p);
        out.lc_series.resize(L, 0);

        // Inverse of the leading coefficient as a power series in s.
        Vec inv(L, 0);
        inv[0] = zp::inv(out.lc_series[0], p);
        for (std::size_t k = 1; k < L; ++k) {
            unsigned __int128 acc = 0;
            for (std::size_t j = 1; j <= k; ++j)
                acc += static_cast<unsigned __int128>(out.lc_series[j]) * inv[k - j];
            std::uint64_t s = static_cast<std::uint64_t>(acc % p);
            inv[k] = zp::mul(p - s == p ? 0 : p - s, inv[0], p);
        }

        // Monic target F / lc as a series with x-polynomial coefficients.
        std::vector<Vec> shifted(n_ + 1);
        for (std::size_t i = 0; i <= n_; ++i)
            shifted[i] = shift_mod(residues(cs_[i], p, L), a, p);
        Series target(L, Vec(n_ + 1, 0));
        for (std::size_t i = 0; i <= n_; ++i) {
            const Vec& col = shifted[i];
            for (std::size_t k = 0; k < L; ++k) {
                unsigned __int128 acc = 0;
                for (std::size_t j = 0; j <= k && j < col.size(); ++j)
                    acc += static_cast<unsigned __int128>(col[j]) * inv[k - j];
                target[k][i] = static_cast<std::uint64_t>(acc % p);
            }
        }

        const std::size_t r = us_.size();
        std::vector<ModPoly> ubar(r);
        for (std::size_t i = 0; i < r; ++i)
            ubar[i] = monic(ModPoly::from(us_[i], p));

        // b_i with sum_i b_i * prod_{j != i} ubar_j = 1.
        std::vector<ModPoly> bez(r);
        for (std::size_t i = 0; i < r; ++i) {
            ModPoly others = ModPoly::one(p);
            for (std::size_t j = 0; j < r; ++j)
                if (j != i)
                    others = rem(others * ubar[j], ubar[i]);
            ExtGcd eg = ext_gcd(others, ubar[i]);
            if (!eg.g.is_one())
                return std::nullopt;
            bez[i] = eg.s;
        }

        out.factors.assign(r, Series(L));
        for (std::size_t i = 0; i < r; ++i) {
            for (auto& v : out.factors[i])
                v.assign(static_cast<std::size_t>(ubar[i].degree()) + 1, 0);
            std::copy(ubar[i].coeffs.begin(), ubar[i].coeffs.end(), out.factors[i][0].begin());
        }

        // Running products Q_m = u_0 * ... * u_m, coefficient by coefficient.
        std::vector<Series> q(r, Series(L));
        auto refresh = [&](std::size_t k) {
            q[0][k] = out.factors[0][k];
            for (std::size_t m = 1; m < r; ++m) {
                Vec acc;
                for (std::size_t i = 0; i <= k; ++i)
                    addmul(acc, q[m - 1][i], out.factors[m][k - i], p);
                q[m][k] = std::move(acc);
            }
        };
        refresh(0);
        if (!same_poly(q[r - 1][0], target[0]))
            throw LiftFailure("image factorization does not match the monic target");

        for (std::size_t k = 1; k < L; ++k) {
            refresh(k);
            Vec e = target[k];
            const Vec& cur = q[r - 1][k];
            for (std::size_t i = 0; i < cur.size(); ++i) {
                if (i >= e.size())
                    e.resize(i + 1, 0);
                e[i] = zp::sub(e[i], cur[i], p);
            }
            ModPoly err(e, p);
            if (!err.is_zero()) {
                for (std::size_t i = 0; i < r; ++i) {
                    ModPoly delta = rem(err * bez[i], ubar[i]);
                    Vec& slot = out.factors[i][k];
                    std::fill(slot.begin(), slot.end(), 0);
                    std::copy(delta.coeffs.begin(), delta.coeffs.end(), slot.begin());
                }
                refresh(k);
            }
            if (!same_poly(q[r - 1][k], target[k]))
                throw LiftFailure("lifting step left a nonzero error");
        }
        return out;
    }

    static bool same_poly(const Vec& a, const Vec& b)
    {
        const std::size_t n = std::max(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i)
            if ((i < a.size() ? a[i] : 0) != (i < b.size() ? b[i] : 0))
                return false;
        return true;
    }

    static constexpr std::size_t guard_ = 3;

    const BiPoly& f_;
    std::int64_t anchor_;
    std::vector<UniPoly> us_;
    std::vector<UniPoly> cs_;
    UniPoly lc_, f0_;
    Exponent n_ = 0, dt_ = 0;
    std::size_t len_ = 0;
    Integer bound_;
    std::uint64_t next_prime_;
    std::vector<PrimeLift> lifts_;
};

std::int64_t anchor_candidate(std::size_t i)
{
    // 0, 1, -1, 2, -2, ...
    const auto h = static_cast<std::int64_t>((i + 1) / 2);
    return i % 2 == 1 ? h : -h;
}

std::int64_t choose_anchor_from(const BiPoly& f, std::size_t& index)
{
    const std::uint64_t guard = 100 * (std::uint64_t{f.xdegree()} + f.tdegree() + 1);
    const auto cs = x_coefficients(f);
    for (; index < 2 * guard + 1; ++index) {
        const std::int64_t a = anchor_candidate(index);
        const Integer av(static_cast<long>(a));
        if (evaluate(cs.back(), av) == 0)
            continue;
        if (squarefree_check(evaluate_t(f, av)))
            return a;
    }
    throw StructuralError("no admissible anchor within the search guard");
}

// Cheap certificate that f is squarefree in x: some image f(x, a) mod p with
// full x-degree is squarefree.
bool certified_squarefree(const BiPoly& f, std::mt19937_64& rng)
{
    if (f.xdegree() <= 1)
        return true;
    const auto cs = x_coefficients(f);
    for (int attempt = 0; attempt < 12; ++attempt) {
        const std::uint64_t p = attempt < 6 ? 2147483629u : 2147483587u;
        const std::uint64_t a = rng() % p;
        Vec img(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::uint64_t v = 0;
            for (std::size_t j = cs[i].coeffs.size(); j-- > 0;)
                v = zp::add(zp::mul(v, a, p), mod_u64(cs[i].coeffs[j], p), p);
            img[i] = v;
        }
        ModPoly g(img, p);
        if (g.degree() != static_cast<long>(f.xdegree()))
            continue;
        if (gcd(g, derivative(g)).degree() == 0)
            return true;
    }
    return false;
}

std::vector<BiPoly> factor_primitive(const BiPoly& f, std::mt19937_64& rng)
{
    if (f.xdegree() == 0)
        return {};
    if (f.xdegree() == 1)
        return {f};
    if (f.tdegree() == 0) {
        UniFactorization uf = factor_univariate(evaluate_t(f, Integer(0)), rng);
        std::vector<BiPoly> out;
        for (const auto& [u, m] : uf.factors) {
            if (m != 1)
                throw NotSquarefreeError("bivariate input has a repeated factor");
            std::vector<BiTerm> terms;
            for (std::size_t i = u.coeffs.size(); i-- > 0;)
                if (u.coeffs[i] != 0)
                    terms.push_back(BiTerm{static_cast<Exponent>(i), 0, u.coeffs[i]});
            out.push_back(BiPoly::from_canonical(std::move(terms)));
        }
        return out;
    }
    if (!certified_squarefree(f, rng))
        throw NotSquarefreeError("bivariate input has a repeated factor");

    std::size_t index = 0;
    for (int attempt = 0; attempt < 5; ++attempt, ++index) {
        const std::int64_t a = choose_anchor_from(f, index);
        UniFactorization uf = factor_univariate(evaluate_t(f, Integer(static_cast<long>(a))), rng);
        std::vector<UniPoly> us;
        for (const auto& [u, m] : uf.factors) {
            assert(m == 1);
            us.push_back(u);
        }
        if (us.size() == 1)
            return {f};
        try {
            return BivariateLifter(f, a, std::move(us)).run();
        } catch (const LiftFailure&) {
            continue;
        }
    }
    throw StructuralError("bivariate lifting failed at every anchor");
}

bool bi_less(const BiPoly& a, const BiPoly& b)
{
    if (a.xdegree() != b.xdegree())
        return a.xdegree() < b.xdegree();
    if (a.tdegree() != b.tdegree())
        return a.tdegree() < b.tdegree();
    const auto& x = a.terms();
    const auto& y = b.terms();
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i].xdeg != y[i].xdeg)
            return x[i].xdeg > y[i].xdeg;
        if (x[i].tdeg != y[i].tdeg)
            return x[i].tdeg > y[i].tdeg;
        if (x[i].coeff != y[i].coeff)
            return x[i].coeff < y[i].coeff;
    }
    return x.size() < y.size();
}

} // namespace

std::int64_t choose_anchor(const BiPoly& f)
{
    if (f.is_zero())
        throw StructuralError("anchor for the zero polynomial");
    std::size_t index = 0;
    return choose_anchor_from(f, index);
}

BiFactorization factor_bivariate(const BiPoly& f, std::mt19937_64& rng)
{
    if (f.is_zero())
        throw StructuralError("factorization of the zero polynomial");
    BiFactorization out;
    auto cs = x_coefficients(f);
    UniPoly g = t_content(cs);
    out.unit = sgn(f.leading_term().coeff) < 0 ? -1 : 1;
    for (auto& c : cs)
        if (!c.is_zero())
            c = *exact_div(c, g);
    if (out.unit < 0)
        for (auto& c : cs)
            c = -c;
    out.content_t = from_x_coefficients({g});
    BiPoly prim = from_x_coefficients(cs);
    if (prim.xdegree() > 0)
        out.factors = factor_primitive(prim, rng);
    std::sort(out.factors.begin(), out.factors.end(), bi_less);
    if (!(expand(out) == f))
        throw StructuralError("bivariate factorization does not multiply back");
    return out;
}

BiFactorization factor_bivariate(const BiPoly& f)
{
    std::mt19937_64 rng(0xb1f);
    return factor_bivariate(f, rng);
}

} // namespace sparsefact
