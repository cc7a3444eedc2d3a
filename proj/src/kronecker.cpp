#include "sparsefact/kronecker.hpp"

#include "sparsefact/sparse_lift.hpp"
#include "sparsefact/uni_factor.hpp"

namespace sparsefact {

namespace {

constexpr std::size_t max_image_factors = 16;

MultiPoly unpack(const UniPoly& u, const std::vector<std::string>& vars, const std::vector<std::uint64_t>& radix)
{
    std::vector<Term> terms;
    for (std::size_t k = 0; k < u.coeffs.size(); ++k) {
        if (u.coeffs[k] == 0)
            continue;
        ExponentVector e(vars.size());
        std::uint64_t rest = k;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            e[v] = static_cast<Exponent>(rest % radix[v]);
            rest /= radix[v];
        }
        if (rest != 0)
            return MultiPoly(vars);   // out of range: cannot be a factor
        terms.push_back(Term{u.coeffs[k], std::move(e)});
    }
    return MultiPoly(vars, std::move(terms));
}

} // namespace

std::vector<MultiPoly> kronecker_oracle(const MultiPoly& p, std::size_t max_degree)
{
    if (p.is_zero())
        throw std::invalid_argument("zero polynomial");
    const auto& vars = p.variables();
    MultiPoly rest = integer_content_and_sign(p).primitive;
    std::vector<MultiPoly> out;

    // Monomial content first: x^k images would swamp the subset search.
    ExponentVector low(vars.size());
    for (std::size_t v = 0; v < vars.size(); ++v) {
        low[v] = rest.min_degree(v);
        for (Exponent i = 0; i < low[v]; ++i)
            out.push_back(MultiPoly::variable(vars, v));
    }
    {
        std::vector<Term> terms = rest.terms();
        for (auto& t : terms)
            for (std::size_t v = 0; v < vars.size(); ++v)
                t.exps[v] -= low[v];
        rest = MultiPoly::from_canonical(vars, std::move(terms));
    }
    if (rest.is_constant()) {
        sort_canonical(out);
        return out;
    }

    std::vector<std::uint64_t> radix(vars.size()), stride(vars.size());
    std::uint64_t s = 1;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        radix[v] = std::uint64_t{rest.degree(v)} + 1;
        stride[v] = s;
        s *= radix[v];
    }
    std::vector<Integer> dense;
    for (const auto& t : rest.terms()) {
        std::uint64_t k = 0;
        for (std::size_t v = 0; v < vars.size(); ++v)
            k += stride[v] * t.exps[v];
        if (k > max_degree)
            throw OracleInconclusive("packed degree too large");
        if (dense.size() <= k)
            dense.resize(k + 1, Integer(0));
        dense[k] = t.coeff;
    }
    UniFactorization uf = factor_univariate(UniPoly(std::move(dense)));
    std::vector<UniPoly> pieces;
    for (const auto& [u, m] : uf.factors)
        for (unsigned i = 0; i < m; ++i)
            pieces.push_back(u);
    if (pieces.size() > max_image_factors)
        throw OracleInconclusive("too many factors in the packed image");

    // Grow subsets by size; a subset whose product unpacks to a divisor of
    // what is left is taken greedily. Irreducible factors are found smallest
    // first, so nothing taken can later need splitting.
    std::vector<bool> used(pieces.size(), false);
    std::size_t left = pieces.size();
    for (std::size_t k = 1; k <= left;) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < pieces.size(); ++i)
            if (!used[i])
                pool.push_back(i);
        bool found = false;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        while (!found) {
            UniPoly prod{1};
            for (std::size_t i : idx)
                prod = prod * pieces[pool[i]];
            MultiPoly cand = unpack(prod, vars, radix);
            if (!cand.is_zero() && !cand.is_constant()) {
                cand = integer_content_and_sign(cand).primitive;
                if (auto q = exact_div(rest, cand)) {
                    rest = *q;
                    out.push_back(cand);
                    for (std::size_t i : idx)
                        used[pool[i]] = true;
                    left -= k;
                    found = true;
                    break;
                }
            }
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1))
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t t = i; t < k; ++t)
                idx[t] = idx[t - 1] + 1;
        }
        if (!found)
            ++k;
    }
    if (left != 0 || !rest.is_constant())
        throw OracleInconclusive("packed factors do not regroup into divisors");
    sort_canonical(out);
    return out;
}

} // namespace sparsefact
