#include "sparsefact/multipoly.hpp"

#include <algorithm>
#include <cassert>
#include <queue>
#include <unordered_map>

namespace sparsefact {

namespace {

bool exps_greater(const ExponentVector& a, const ExponentVector& b)
{
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void require_same_vars(const MultiPoly& a, const MultiPoly& b)
{
    if (a.variables() != b.variables())
        throw StructuralError("polynomials are over different variable lists");
}

ExponentVector add_exps(const ExponentVector& a, const ExponentVector& b)
{
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t s = std::uint64_t{a[i]} + b[i];
        if (s > max_exponent)
            throw StructuralError("exponent overflow");
        r[i] = static_cast<Exponent>(s);
    }
    return r;
}

std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool negate_b)
{
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && exps_greater(a[i].exps, b[j].exps))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || exps_greater(b[j].exps, a[i].exps)) {
            out.push_back(b[j]);
            if (negate_b)
                out.back().coeff = -out.back().coeff;
            ++j;
        } else {
            Integer c = negate_b ? Integer(a[i].coeff - b[j].coeff) : Integer(a[i].coeff + b[j].coeff);
            if (c != 0)
                out.push_back(Term{std::move(c), a[i].exps});
            ++i;
            ++j;
        }
    }
    return out;
}

// Johnson's heap multiplication: one stream per term of the shorter factor.
std::vector<Term> heap_multiply(const std::vector<Term>& a, const std::vector<Term>& b)
{
    const std::vector<Term>& s = a.size() <= b.size() ? a : b;
    const std::vector<Term>& l = a.size() <= b.size() ? b : a;
    struct Entry {
        ExponentVector key;
        std::size_t i, j;
    };
    auto cmp = [](const Entry& x, const Entry& y) { return exps_greater(y.key, x.key); };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    for (std::size_t i = 0; i < s.size(); ++i)
        heap.push(Entry{add_exps(s[i].exps, l[0].exps), i, 0});

    std::vector<Term> out;
    Integer acc;
    while (!heap.empty()) {
        Entry top = heap.top();
        heap.pop();
        acc = s[top.i].coeff * l[top.j].coeff;
        if (top.j + 1 < l.size())
            heap.push(Entry{add_exps(s[top.i].exps, l[top.j + 1].exps), top.i, top.j + 1});
        while (!heap.empty() && heap.top().key == top.key) {
            Entry e = heap.top();
            heap.pop();
            mpz_addmul(acc.get_mpz_t(), s[e.i].coeff.get_mpz_t(), l[e.j].coeff.get_mpz_t());
            if (e.j + 1 < l.size())
                heap.push(Entry{add_exps(s[e.i].exps, l[e.j + 1].exps), e.i, e.j + 1});
        }
        if (acc != 0)
            out.push_back(Term{acc, std::move(top.key)});
    }
    return out;
}

} // namespace

MultiPoly::MultiPoly(std::vector<std::string> vars, std::vector<Term> terms)
    : vars_(std::move(vars))
{
    for (auto& t : terms)
        if (t.exps.size() != vars_.size())
            throw StructuralError("exponent vector length does not match variable count");
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return exps_greater(x.exps, y.exps); });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().exps == t.exps)
            terms_.back().coeff += t.coeff;
        else {
            if (!terms_.empty() && terms_.back().coeff == 0)
                terms_.pop_back();
            terms_.push_back(std::move(t));
        }
    }
    if (!terms_.empty() && terms_.back().coeff == 0)
        terms_.pop_back();
    assert(is_canonical());
}

MultiPoly MultiPoly::from_canonical(std::vector<std::string> vars, std::vector<Term> terms)
{
    MultiPoly p(std::move(vars));
    p.terms_ = std::move(terms);
    assert(p.is_canonical());
    return p;
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Integer& c)
{
    MultiPoly p(std::move(vars));
    if (c != 0)
        p.terms_.push_back(Term{c, ExponentVector(p.vars_.size(), 0)});
    return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, std::size_t index)
{
    MultiPoly p(std::move(vars));
    ExponentVector e(p.vars_.size(), 0);
    e.at(index) = 1;
    p.terms_.push_back(Term{Integer(1), std::move(e)});
    return p;
}

bool MultiPoly::is_constant() const
{
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(),
                                              [](Exponent e) { return e == 0; }));
}

Exponent MultiPoly::degree(std::size_t v) const
{
    Exponent d = 0;
    for (const auto& t : terms_)
        d = std::max(d, t.exps[v]);
    return d;
}

Exponent MultiPoly::min_degree(std::size_t v) const
{
    if (terms_.empty())
        return 0;
    Exponent d = terms_[0].exps[v];
    for (const auto& t : terms_)
        d = std::min(d, t.exps[v]);
    return d;
}

std::uint64_t MultiPoly::total_degree() const
{
    std::uint64_t d = 0;
    for (const auto& t : terms_) {
        std::uint64_t s = 0;
        for (auto e : t.exps)
            s += e;
        d = std::max(d, s);
    }
    return d;
}

Integer MultiPoly::height() const
{
    Integer h = 0;
    for (const auto& t : terms_)
        if (mpz_cmpabs(t.coeff.get_mpz_t(), h.get_mpz_t()) > 0)
            h = abs(t.coeff);
    return h;
}

bool MultiPoly::is_canonical() const
{
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coeff == 0 || terms_[i].exps.size() != vars_.size())
            return false;
        if (i > 0 && !exps_greater(terms_[i - 1].exps, terms_[i].exps))
            return false;
    }
    return true;
}

bool operator==(const MultiPoly& a, const MultiPoly& b)
{
    if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size())
        return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r = *this;
    for (auto& t : r.terms_)
        t.coeff = -t.coeff;
    return r;
}

MultiPoly& MultiPoly::operator*=(const Integer& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.coeff *= c;
    return *this;
}

MultiPoly MultiPoly::renamed(std::vector<std::string> vars) const
{
    if (vars.size() != vars_.size())
        throw StructuralError("renaming must keep the variable count");
    return from_canonical(std::move(vars), terms_);
}

MultiPoly ring_arith(const MultiPoly& a, const MultiPoly& b, RingOp op)
{
    require_same_vars(a, b);
    switch (op) {
    case RingOp::add:
        return MultiPoly::from_canonical(a.variables(), merge_terms(a.terms(), b.terms(), false));
    case RingOp::sub:
        return MultiPoly::from_canonical(a.variables(), merge_terms(a.terms(), b.terms(), true));
    case RingOp::mul:
        if (a.is_zero() || b.is_zero())
            return MultiPoly(a.variables());
        return MultiPoly::from_canonical(a.variables(), heap_multiply(a.terms(), b.terms()));
    }
    return MultiPoly(a.variables());
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return ring_arith(a, b, RingOp::add); }
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return ring_arith(a, b, RingOp::sub); }
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) { return ring_arith(a, b, RingOp::mul); }

MultiPoly operator*(const MultiPoly& a, const Integer& c)
{
    MultiPoly r = a;
    r *= c;
    return r;
}

MultiPoly pow(const MultiPoly& a, unsigned e)
{
    MultiPoly r = MultiPoly::constant(a.variables(), 1);
    MultiPoly base = a;
    while (e) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

std::optional<MultiPoly> exact_div(const MultiPoly& num, const MultiPoly& den)
{
    require_same_vars(num, den);
    if (den.is_zero())
        throw StructuralError("division by the zero polynomial");
    const std::size_t n = num.nvars();
    if (num.is_zero())
        return MultiPoly(num.variables());

    // deg_v(q) = deg_v(num) - deg_v(den) over an integral domain.
    ExponentVector qmax(n), dmin(n);
    for (std::size_t v = 0; v < n; ++v) {
        Exponent dn = num.degree(v), dd = den.degree(v);
        if (dd > dn)
            return std::nullopt;
        qmax[v] = dn - dd;
        dmin[v] = den.min_degree(v);
    }

    const Term& lt = den.leading_term();
    std::vector<Term> rem = num.terms();
    std::vector<Term> quotient;
    std::vector<Term> scaled;
    while (!rem.empty()) {
        const Term& r = rem.front();
        Term q;
        q.exps.resize(n);
        for (std::size_t v = 0; v < n; ++v) {
            if (r.exps[v] < lt.exps[v])
                return std::nullopt;
            q.exps[v] = r.exps[v] - lt.exps[v];
            if (q.exps[v] > qmax[v])
                return std::nullopt;
        }
        if (!divides(lt.coeff, r.coeff))
            return std::nullopt;
        mpz_divexact(q.coeff.get_mpz_t(), r.coeff.get_mpz_t(), lt.coeff.get_mpz_t());

        scaled.clear();
        scaled.reserve(den.size());
        for (const auto& t : den.terms())
            scaled.push_back(Term{q.coeff * t.coeff, add_exps(q.exps, t.exps)});
        rem = merge_terms(rem, scaled, true);
        quotient.push_back(std::move(q));
    }
    return MultiPoly::from_canonical(num.variables(), std::move(quotient));
}

MultiPoly divexact(const MultiPoly& p, const Integer& c)
{
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) {
        assert(divides(c, t.coeff));
        mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    }
    return MultiPoly::from_canonical(p.variables(), std::move(terms));
}

MultiPoly leading_coefficient_wrt(const MultiPoly& p, std::size_t main)
{
    if (p.is_zero())
        throw StructuralError("leading coefficient of the zero polynomial");
    Exponent d = p.degree(main);
    std::vector<Term> terms;
    for (const auto& t : p.terms())
        if (t.exps[main] == d) {
            terms.push_back(t);
            terms.back().exps[main] = 0;
        }
    return MultiPoly(p.variables(), std::move(terms));
}

std::vector<MultiPoly> coefficients_wrt(const MultiPoly& p, std::size_t main)
{
    Exponent d = p.degree(main);
    std::vector<std::vector<Term>> buckets(std::size_t{d} + 1);
    for (const auto& t : p.terms()) {
        Term c = t;
        c.exps[main] = 0;
        buckets[t.exps[main]].push_back(std::move(c));
    }
    std::vector<MultiPoly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets)
        out.emplace_back(p.variables(), std::move(b));
    return out;
}

MultiPoly derivative_wrt(const MultiPoly& p, std::size_t v)
{
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        if (t.exps[v] == 0)
            continue;
        Term d = t;
        d.coeff *= t.exps[v];
        d.exps[v] -= 1;
        terms.push_back(std::move(d));
    }
    // Differentiation can reorder terms only when exponents tie, which the
    // general constructor handles.
    return MultiPoly(p.variables(), std::move(terms));
}

ExponentVector other_exponents(const ExponentVector& e, std::size_t main)
{
    ExponentVector r;
    r.reserve(e.size() - 1);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (i != main)
            r.push_back(e[i]);
    return r;
}

MultiPoly dilate(const MultiPoly& p, std::size_t main, const DilationScales& s)
{
    if (s.scales.size() + 1 != p.nvars())
        throw StructuralError("dilation needs one scale per non-main variable");
    for (int c : s.scales)
        if (c == 0)
            throw StructuralError("dilation scale must be nonzero");
    std::vector<Term> terms = p.terms();
    for (auto& t : terms) {
        std::size_t k = 0;
        for (std::size_t v = 0; v < p.nvars(); ++v) {
            if (v == main)
                continue;
            if (t.exps[v] > 0)
                t.coeff *= pow_ui(Integer(s.scales[k]), t.exps[v]);
            ++k;
        }
    }
    return MultiPoly::from_canonical(p.variables(), std::move(terms));
}

std::optional<Integer> undilate_coefficient(const Integer& c, const ExponentVector& exponents,
                                            const DilationScales& s)
{
    if (exponents.size() != s.scales.size())
        throw StructuralError("exponent and scale vectors differ in length");
    Integer d = 1;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (s.scales[i] == 0)
            throw StructuralError("dilation scale must be nonzero");
        d *= pow_ui(Integer(s.scales[i]), exponents[i]);
    }
    if (!divides(d, c))
        return std::nullopt;
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    return q;
}

ContentSplit integer_content_and_sign(const MultiPoly& p)
{
    if (p.is_zero())
        throw StructuralError("content of the zero polynomial");
    ContentSplit out;
    Integer g = 0;
    for (const auto& t : p.terms()) {
        g = gcd(g, t.coeff);
        if (g == 1)
            break;
    }
    out.content = g;
    out.unit = sgn(p.leading_coeff()) < 0 ? -1 : 1;
    out.primitive = divexact(p, out.unit < 0 ? Integer(-g) : g);
    return out;
}

MultiPoly evaluate(const MultiPoly& p, std::size_t v, const Integer& value)
{
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Term e = t;
        if (t.exps[v] > 0)
            e.coeff *= pow_ui(value, t.exps[v]);
        e.exps[v] = 0;
        terms.push_back(std::move(e));
    }
    return MultiPoly(p.variables(), std::move(terms));
}

Integer evaluate_all(const MultiPoly& p, const std::vector<Integer>& point)
{
    Integer s = 0;
    for (const auto& t : p.terms()) {
        Integer m = t.coeff;
        for (std::size_t v = 0; v < t.exps.size(); ++v)
            if (t.exps[v])
                m *= pow_ui(point[v], t.exps[v]);
        s += m;
    }
    return s;
}

MultiPoly permute_variables(const MultiPoly& p, const std::vector<std::size_t>& perm)
{
    if (perm.size() != p.nvars())
        throw StructuralError("permutation length mismatch");
    std::vector<std::string> vars(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        vars[i] = p.variables()[perm[i]];
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Term r{t.coeff, ExponentVector(perm.size())};
        for (std::size_t i = 0; i < perm.size(); ++i)
            r.exps[i] = t.exps[perm[i]];
        terms.push_back(std::move(r));
    }
    return MultiPoly(std::move(vars), std::move(terms));
}

MultiPoly embed(const MultiPoly& p, const std::vector<std::string>& vars)
{
    std::vector<std::size_t> where(p.nvars());
    for (std::size_t i = 0; i < p.nvars(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), p.variables()[i]);
        if (it == vars.end())
            throw StructuralError("variable '" + p.variables()[i] + "' missing from target list");
        where[i] = static_cast<std::size_t>(it - vars.begin());
    }
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p.terms()) {
        Term r{t.coeff, ExponentVector(vars.size(), 0)};
        for (std::size_t i = 0; i < p.nvars(); ++i)
            r.exps[where[i]] = t.exps[i];
        terms.push_back(std::move(r));
    }
    return MultiPoly(vars, std::move(terms));
}

MultiPoly shift_monomial(const MultiPoly& p, const ExponentVector& shift)
{
    std::vector<Term> terms = p.terms();
    for (auto& t : terms)
        t.exps = add_exps(t.exps, shift);
    return MultiPoly::from_canonical(p.variables(), std::move(terms));
}

} // namespace sparsefact
