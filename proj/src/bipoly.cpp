#include "sparsefact/bipoly.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace sparsefact {

namespace {

bool key_greater(const BiTerm& a, const BiTerm& b)
{
    return a.xdeg != b.xdeg ? a.xdeg > b.xdeg : a.tdeg > b.tdeg;
}

bool same_key(const BiTerm& a, const BiTerm& b)
{
    return a.xdeg == b.xdeg && a.tdeg == b.tdeg;
}

std::vector<BiTerm> merge(const std::vector<BiTerm>& a, const std::vector<BiTerm>& b, bool negate_b)
{
    std::vector<BiTerm> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && key_greater(a[i], b[j]))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || key_greater(b[j], a[i])) {
            out.push_back(b[j++]);
            if (negate_b)
                out.back().coeff = -out.back().coeff;
        } else {
            Integer c = negate_b ? Integer(a[i].coeff - b[j].coeff) : Integer(a[i].coeff + b[j].coeff);
            if (c != 0)
                out.push_back(BiTerm{a[i].xdeg, a[i].tdeg, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

BiPoly::BiPoly(std::vector<BiTerm> terms)
{
    std::sort(terms.begin(), terms.end(), key_greater);
    for (auto& t : terms) {
        if (!terms_.empty() && same_key(terms_.back(), t)) {
            terms_.back().coeff += t.coeff;
        } else {
            if (!terms_.empty() && terms_.back().coeff == 0)
                terms_.pop_back();
            terms_.push_back(std::move(t));
        }
    }
    if (!terms_.empty() && terms_.back().coeff == 0)
        terms_.pop_back();
    assert(is_canonical());
}

BiPoly BiPoly::from_canonical(std::vector<BiTerm> terms)
{
    BiPoly p;
    p.terms_ = std::move(terms);
    assert(p.is_canonical());
    return p;
}

BiPoly BiPoly::constant(const Integer& c)
{
    return monomial(c, 0, 0);
}

BiPoly BiPoly::monomial(const Integer& c, Exponent xdeg, Exponent tdeg)
{
    BiPoly p;
    if (c != 0)
        p.terms_.push_back(BiTerm{xdeg, tdeg, c});
    return p;
}

Exponent BiPoly::tdegree() const
{
    Exponent d = 0;
    for (const auto& t : terms_)
        d = std::max(d, t.tdeg);
    return d;
}

Exponent BiPoly::min_tdegree() const
{
    if (terms_.empty())
        return 0;
    Exponent d = terms_[0].tdeg;
    for (const auto& t : terms_)
        d = std::min(d, t.tdeg);
    return d;
}

BiPoly BiPoly::x_coefficient(Exponent k) const
{
    std::vector<BiTerm> out;
    for (const auto& t : terms_)
        if (t.xdeg == k)
            out.push_back(BiTerm{0, t.tdeg, t.coeff});
    return from_canonical(std::move(out));
}

bool BiPoly::is_canonical() const
{
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coeff == 0)
            return false;
        if (i > 0 && !key_greater(terms_[i - 1], terms_[i]))
            return false;
    }
    return true;
}

bool operator==(const BiPoly& a, const BiPoly& b)
{
    if (a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!same_key(a.terms_[i], b.terms_[i]) || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

BiPoly BiPoly::operator-() const
{
    BiPoly r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b)
{
    return BiPoly::from_canonical(merge(a.terms(), b.terms(), false));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b)
{
    return BiPoly::from_canonical(merge(a.terms(), b.terms(), true));
}

BiPoly operator*(const BiPoly& a, const BiPoly& b)
{
    // Dense accumulation keyed by (xdeg, tdeg); bivariate images are small.
    std::map<std::pair<Exponent, Exponent>, Integer, std::greater<>> acc;
    for (const auto& s : a.terms())
        for (const auto& u : b.terms()) {
            auto& slot = acc[{s.xdeg + u.xdeg, s.tdeg + u.tdeg}];
            mpz_addmul(slot.get_mpz_t(), s.coeff.get_mpz_t(), u.coeff.get_mpz_t());
        }
    std::vector<BiTerm> out;
    for (auto& [k, c] : acc)
        if (c != 0)
            out.push_back(BiTerm{k.first, k.second, std::move(c)});
    return BiPoly::from_canonical(std::move(out));
}

BiPoly derivative(const BiPoly& p, bool wrt_x)
{
    std::vector<BiTerm> out;
    for (const auto& t : p.terms()) {
        Exponent e = wrt_x ? t.xdeg : t.tdeg;
        if (e == 0)
            continue;
        BiTerm d = t;
        d.coeff *= e;
        (wrt_x ? d.xdeg : d.tdeg) -= 1;
        out.push_back(std::move(d));
    }
    return BiPoly(std::move(out));
}

MultiPoly to_multipoly(const BiPoly& p, const std::string& x_name, const std::string& t_name)
{
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms())
        terms.push_back(Term{t.coeff, ExponentVector{t.xdeg, t.tdeg}});
    return MultiPoly::from_canonical({x_name, t_name}, std::move(terms));
}

BiPoly from_multipoly(const MultiPoly& p)
{
    if (p.nvars() != 2)
        throw StructuralError("bivariate view needs exactly two variables");
    std::vector<BiTerm> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms())
        terms.push_back(BiTerm{t.exps[0], t.exps[1], t.coeff});
    return BiPoly::from_canonical(std::move(terms));
}

BiPoly weighted_substitute(const MultiPoly& p, std::size_t main, const SubstitutionWeights& w)
{
    if (main >= p.nvars() || w.weights.size() + 1 != p.nvars())
        throw StructuralError("substitution needs one weight per non-main variable");
    std::vector<BiTerm> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        std::uint64_t tdeg = 0;
        std::size_t k = 0;
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (v == main)
                continue;
            tdeg += std::uint64_t{w.weights[k++]} * t.exps[v];
            if (tdeg > max_exponent)
                throw StructuralError("t-degree overflow in weighted substitution");
        }
        terms.push_back(BiTerm{t.exps[main], static_cast<Exponent>(tdeg), t.coeff});
    }
    return BiPoly(std::move(terms));
}

} // namespace sparsefact
