#include "sparsefact/random_poly.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace sparsefact {

std::vector<std::string> default_variables(std::size_t n)
{
    static const char* const names[] = {"x", "y", "z", "w", "v", "u"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(i < 6 ? names[i] : "x" + std::to_string(i));
    return out;
}

namespace {

Integer random_coeff(std::mt19937_64& rng, long bound)
{
    std::uniform_int_distribution<long> c(1, bound);
    std::bernoulli_distribution neg(0.5);
    long v = c(rng);
    return Integer(neg(rng) ? -v : v);
}

} // namespace

MultiPoly random_sparse(std::mt19937_64& rng, const std::vector<std::string>& vars, std::size_t terms,
                        Exponent maxdeg, long coeff_bound)
{
    std::uniform_int_distribution<Exponent> e(0, maxdeg);
    std::vector<Term> ts;
    for (std::size_t i = 0; i < terms; ++i) {
        ExponentVector ev(vars.size());
        for (auto& x : ev)
            x = e(rng);
        ts.push_back(Term{random_coeff(rng, coeff_bound), std::move(ev)});
    }
    return MultiPoly(vars, std::move(ts));
}

namespace {

// The seven subsets of {0,1,2,3} that contain 0 and something else.
std::vector<std::vector<Exponent>> x_degree_sets()
{
    std::vector<std::vector<Exponent>> out;
    for (unsigned mask = 1; mask < 8; ++mask) {
        std::vector<Exponent> s{0};
        for (Exponent d = 1; d <= 3; ++d)
            if (mask & (1u << (d - 1)))
                s.push_back(d);
        out.push_back(s);
    }
    return out;
}

std::optional<MultiPoly> try_factor(std::mt19937_64& rng, const std::vector<std::string>& vars,
                                    const std::vector<Exponent>& xs, const InstanceShape& shape)
{
    const std::size_t n = vars.size();
    const Exponent top = xs.back();
    std::uniform_int_distribution<std::size_t> count(std::max<std::size_t>(xs.size(), 2),
                                                     std::max(shape.max_terms, xs.size()));
    const std::size_t nterms = count(rng);
    std::uniform_int_distribution<Exponent> e(0, shape.maxdeg);
    std::uniform_int_distribution<std::size_t> pick_x(0, xs.size() - 1);

    std::vector<ExponentVector> exps(nterms, ExponentVector(n, 0));
    for (std::size_t t = 0; t < nterms; ++t) {
        exps[t][0] = t < xs.size() ? xs[t] : xs[pick_x(rng)];
        for (std::size_t v = 1; v < n; ++v)
            exps[t][v] = e(rng);
    }
    std::uniform_int_distribution<std::size_t> pick_t(0, nterms - 1);
    for (std::size_t v = 1; v < n; ++v) {
        // Some term reaches degree >= top in v, some other term has v^0.
        const std::size_t hi = pick_t(rng);
        std::size_t lo = pick_t(rng);
        while (lo == hi)
            lo = pick_t(rng);
        exps[hi][v] = std::max(exps[hi][v], top);
        exps[lo][v] = 0;
    }
    std::vector<Term> ts;
    for (auto& ev : exps)
        ts.push_back(Term{random_coeff(rng, shape.coeff_bound), std::move(ev)});
    MultiPoly f(vars, std::move(ts));

    std::set<Exponent> seen;
    for (const auto& t : f.terms())
        seen.insert(t.exps[0]);
    if (std::vector<Exponent>(seen.begin(), seen.end()) != xs)
        return std::nullopt;
    for (std::size_t v = 0; v < n; ++v)
        if (f.min_degree(v) != 0 || f.degree(v) < top)
            return std::nullopt;
    ContentSplit cs = integer_content_and_sign(f);
    if (cs.content != 1)
        return std::nullopt;
    return cs.primitive;
}

} // namespace

Instance random_x_distinct_instance(std::mt19937_64& rng, const InstanceShape& shape)
{
    if (shape.maxdeg < 3 || shape.nfactors > 7 || shape.nvars < 1)
        throw std::invalid_argument("instance shape out of range");
    const auto vars = default_variables(shape.nvars);
    auto sets = x_degree_sets();
    std::shuffle(sets.begin(), sets.end(), rng);

    Instance out;
    out.product = MultiPoly::constant(vars, Integer(1));
    for (std::size_t i = 0; i < shape.nfactors; ++i) {
        std::optional<MultiPoly> f;
        while (!f)
            f = try_factor(rng, vars, sets[i], shape);
        out.product = out.product * *f;
        out.factors.push_back(std::move(*f));
    }
    return out;
}

} // namespace sparsefact
