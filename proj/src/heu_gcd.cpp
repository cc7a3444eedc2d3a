#include "sparsefact/heu_gcd.hpp"
#include "sparsefact/unipoly.hpp"

#include <algorithm>
#include <random>

namespace sparsefact {

namespace {

MultiPoly positive(MultiPoly p)
{
    if (!p.is_zero() && sgn(p.leading_coeff()) < 0)
        return -p;
    return p;
}

Integer integer_content(const MultiPoly& p)
{
    Integer g = 0;
    for (const auto& t : p.terms()) {
        g = gcd(g, t.coeff);
        if (g == 1)
            break;
    }
    return g;
}

// Rebuilds a polynomial in v from an image whose coefficients are the
// base-z expansions (symmetric digits) of the wanted coefficients.
MultiPoly interpolate(const MultiPoly& image, std::size_t v, const Integer& z)
{
    std::vector<Term> out;
    std::vector<Term> cur = image.terms();
    Exponent e = 0;
    while (!cur.empty()) {
        std::vector<Term> next;
        next.reserve(cur.size());
        for (auto& t : cur) {
            Integer d = smod(t.coeff, z);
            if (d != 0) {
                Term digit{d, t.exps};
                digit.exps[v] = e;
                out.push_back(std::move(digit));
            }
            Integer rest = t.coeff - d;
            if (rest != 0) {
                mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), z.get_mpz_t());
                next.push_back(Term{std::move(rest), t.exps});
            }
        }
        cur = std::move(next);
        ++e;
    }
    return MultiPoly(image.variables(), std::move(out));
}

std::vector<std::size_t> present_variables(const MultiPoly& a, const MultiPoly& b)
{
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < a.nvars(); ++v)
        if (a.degree(v) > 0 || b.degree(v) > 0)
            vs.push_back(v);
    return vs;
}

class HeuGcd {
public:
    explicit HeuGcd(const HeuGcdOptions& opts) : opts_(opts), rng_(0x5eed) {}

    std::optional<MultiPoly> run(const MultiPoly& a, const MultiPoly& b)
    {
        if (a.is_zero())
            return positive(b);
        if (b.is_zero())
            return positive(a);

        Integer ca = integer_content(a), cb = integer_content(b);
        Integer g = gcd(ca, cb);
        MultiPoly pa = positive(divexact(a, ca));
        MultiPoly pb = positive(divexact(b, cb));

        std::vector<std::size_t> vars = present_variables(pa, pb);
        if (vars.empty())
            return MultiPoly::constant(a.variables(), g);

        // A common monomial factor is split off exactly.
        ExponentVector mono(a.nvars(), 0);
        bool has_mono = false;
        for (std::size_t v : vars) {
            mono[v] = std::min(pa.min_degree(v), pb.min_degree(v));
            has_mono = has_mono || mono[v] > 0;
        }
        if (has_mono) {
            MultiPoly m = MultiPoly::from_canonical(a.variables(), {Term{Integer(1), mono}});
            auto inner = run(*exact_div(pa, m), *exact_div(pb, m));
            if (!inner)
                return std::nullopt;
            return (*inner * m) * g;
        }

        // One side free of v: gcd of the other side's coefficients with it.
        std::size_t v = vars.back();
        if (pa.degree(v) == 0 || pb.degree(v) == 0) {
            const MultiPoly& free_side = pa.degree(v) == 0 ? pa : pb;
            const MultiPoly& other = pa.degree(v) == 0 ? pb : pa;
            MultiPoly acc = free_side;
            for (const auto& c : coefficients_wrt(other, v)) {
                if (c.is_zero())
                    continue;
                auto r = run(acc, c);
                if (!r)
                    return std::nullopt;
                acc = *r;
                if (acc.is_constant())
                    break;
            }
            return positive(acc) * g;
        }

        if (vars.size() > 1 && provably_coprime(pa, pb, vars))
            return MultiPoly::constant(a.variables(), g);

        Exponent dmax = std::max(pa.degree(v), pb.degree(v));
        Integer z = 2 * std::min(pa.height(), pb.height()) + 2;
        for (int attempt = 0; attempt < opts_.max_retries; ++attempt, z *= 2) {
            if (bit_length(z) * (std::size_t{dmax} + 1) + bit_length(std::max(pa.height(), pb.height())) >
                opts_.max_bits)
                return std::nullopt;
            auto image = run(evaluate(pa, v, z), evaluate(pb, v, z));
            if (!image)
                continue;
            MultiPoly cand = interpolate(*image, v, z);
            if (cand.is_zero())
                continue;
            cand = positive(divexact(cand, integer_content(cand)));
            if (exact_div(pa, cand) && exact_div(pb, cand))
                return cand * g;
        }
        return std::nullopt;
    }

private:
    // True when, for every variable, a univariate image proves the gcd has
    // degree zero in it. An image with lc_v(a) nonvanishing at the point
    // keeps the degree of any common factor, so a constant image gcd is a
    // proof for that variable.
    bool provably_coprime(const MultiPoly& a, const MultiPoly& b, const std::vector<std::size_t>& vars)
    {
        for (std::size_t v : vars) {
            if (a.degree(v) == 0 || b.degree(v) == 0)
                continue;
            MultiPoly lc = leading_coefficient_wrt(a, v);
            bool proven = false;
            for (int attempt = 0; attempt < 3 && !proven; ++attempt) {
                std::vector<Integer> point(a.nvars(), 0);
                for (std::size_t w : vars)
                    if (w != v)
                        point[w] = Integer(static_cast<long>(rng_() % 61) - 30);
                point[v] = 1;
                if (evaluate_all(lc, point) == 0)
                    continue;
                MultiPoly ua = a, ub = b;
                for (std::size_t w : vars)
                    if (w != v) {
                        ua = evaluate(ua, w, point[w]);
                        ub = evaluate(ub, w, point[w]);
                    }
                auto ug = run(ua, ub);
                if (ug && ug->degree(v) == 0)
                    proven = true;
                else if (ug)
                    return false;
            }
            if (!proven)
                return false;
        }
        return true;
    }

    const HeuGcdOptions& opts_;
    std::minstd_rand rng_;
};

// p with every variable except v replaced by point[w], as a polynomial in v.
UniPoly univariate_image(const MultiPoly& p, std::size_t v, const std::vector<Integer>& point)
{
    std::vector<Integer> c(std::size_t{p.degree(v)} + 1, Integer(0));
    for (const auto& t : p.terms()) {
        Integer x = t.coeff;
        for (std::size_t w = 0; w < p.nvars(); ++w)
            if (w != v && t.exps[w] > 0)
                x *= pow_ui(point[w], t.exps[w]);
        c[t.exps[v]] += x;
    }
    return UniPoly(std::move(c));
}

// True when the gcd of `polys` is proven free of every variable. For each
// variable v, the polynomials are mapped to univariate images in v at a
// random point; if one image keeps its full degree, any common factor of
// positive degree in v would survive in all images, so a constant image
// gcd rules it out.
bool gcd_is_integer(const std::vector<MultiPoly>& polys, std::minstd_rand& rng)
{
    const std::size_t n = polys.front().nvars();
    for (std::size_t v = 0; v < n; ++v) {
        const MultiPoly* anchor = nullptr;
        for (const auto& p : polys) {
            if (p.degree(v) == 0)
                goto next_variable;   // a v-free member bounds the gcd
            if (!anchor || p.size() < anchor->size())
                anchor = &p;
        }
        {
            bool proven = false;
            for (int attempt = 0; attempt < 4 && !proven; ++attempt) {
                std::vector<Integer> point(n);
                for (auto& x : point)
                    x = Integer(static_cast<long>(rng() % 2001) - 1000);
                UniPoly g = univariate_image(*anchor, v, point);
                if (g.degree() != static_cast<long>(anchor->degree(v)))
                    continue;
                for (const auto& p : polys) {
                    if (&p == anchor)
                        continue;
                    g = gcd(g, univariate_image(p, v, point));
                    if (g.degree() == 0)
                        break;
                }
                proven = g.degree() == 0;
            }
            if (!proven)
                return false;
        }
    next_variable:;
    }
    return true;
}

} // namespace

std::optional<MultiPoly> heu_gcd(const MultiPoly& a, const MultiPoly& b, const HeuGcdOptions& opts)
{
    if (a.variables() != b.variables())
        throw StructuralError("polynomials are over different variable lists");
    HeuGcd h(opts);
    return h.run(a, b);
}

std::optional<MultiPoly> content_wrt(const MultiPoly& p, std::size_t main, const HeuGcdOptions& opts)
{
    if (p.is_zero())
        throw StructuralError("content of the zero polynomial");
    std::vector<MultiPoly> coeffs;
    for (auto& c : coefficients_wrt(p, main))
        if (!c.is_zero())
            coeffs.push_back(std::move(c));
    std::sort(coeffs.begin(), coeffs.end(),
              [](const MultiPoly& x, const MultiPoly& y) { return x.size() < y.size(); });

    std::minstd_rand rng(0xc047);
    if (gcd_is_integer(coeffs, rng))
        return MultiPoly::constant(p.variables(), integer_content(p));

    HeuGcd h(opts);
    MultiPoly acc = positive(coeffs.front());
    for (std::size_t i = 1; i < coeffs.size() && !acc.is_constant(); ++i) {
        auto g = h.run(acc, coeffs[i]);
        if (!g)
            return std::nullopt;
        acc = *g;
    }
    if (acc.is_constant())
        return MultiPoly::constant(p.variables(), integer_content(p));
    return acc;
}

} // namespace sparsefact
