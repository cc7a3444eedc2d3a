#include "sparsefact/sparse_lift.hpp"

#include "sparsefact/heu_gcd.hpp"
#include "sparsefact/uni_factor.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace sparsefact {

// ---------------------------------------------------------------------------
// Skeletons
// ---------------------------------------------------------------------------

namespace {

bool skeleton_less(const SkeletonTerm& a, const SkeletonTerm& b)
{
    if (a.xdeg != b.xdeg)
        return a.xdeg > b.xdeg;
    if (a.coeff != b.coeff)
        return a.coeff < b.coeff;
    return a.tdeg > b.tdeg;
}

// -1 when the negated coefficient list (same ordering) is lexicographically
// larger than the list itself, so the pair {f, -f} has one representative.
int canonical_sign(const std::vector<SkeletonTerm>& sorted)
{
    std::vector<SkeletonTerm> neg = sorted;
    for (auto& t : neg)
        t.coeff = -t.coeff;
    std::sort(neg.begin(), neg.end(), skeleton_less);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].xdeg != neg[i].xdeg)
            break;
        if (sorted[i].coeff != neg[i].coeff)
            return sorted[i].coeff > neg[i].coeff ? 1 : -1;
    }
    return 1;
}

} // namespace

FactorSkeleton FactorSkeleton::from(const BiPoly& f)
{
    FactorSkeleton s;
    for (const auto& t : f.terms()) {
        s.terms.push_back(SkeletonTerm{t.xdeg, t.tdeg, t.coeff});
        ++s.xsupport[t.xdeg];
    }
    std::sort(s.terms.begin(), s.terms.end(), skeleton_less);
    if (canonical_sign(s.terms) < 0) {
        for (auto& t : s.terms)
            t.coeff = -t.coeff;
        std::sort(s.terms.begin(), s.terms.end(), skeleton_less);
    }
    return s;
}

bool same_shape(const FactorSkeleton& a, const FactorSkeleton& b)
{
    if (a.xsupport != b.xsupport)
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.terms[i].xdeg != b.terms[i].xdeg || a.terms[i].coeff != b.terms[i].coeff)
            return false;
    return true;
}

bool FactorSkeleton::has_ties() const
{
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i].xdeg == terms[i - 1].xdeg && terms[i].coeff == terms[i - 1].coeff)
            return true;
    return false;
}

BiPoly FactorSkeleton::to_bipoly() const
{
    std::vector<BiTerm> ts;
    for (const auto& t : terms)
        ts.push_back(BiTerm{t.xdeg, t.tdeg, t.coeff});
    return BiPoly(std::move(ts));
}

namespace {

// Integer content of a nonzero polynomial in t, sign kept.
BiPoly drop_integer_content(const BiPoly& p)
{
    Integer g = 0;
    for (const auto& t : p.terms())
        g = gcd(g, t.coeff);
    std::vector<BiTerm> ts = p.terms();
    for (auto& t : ts)
        mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), g.get_mpz_t());
    return BiPoly::from_canonical(std::move(ts));
}

} // namespace

NormalizedFactor normalize_factor(const BiPoly& f, const BiPoly& lc_image)
{
    if (f.is_zero() || lc_image.is_zero() || lc_image.xdegree() != 0)
        throw UnluckyEvaluation("normalization needs a nonzero factor and a leading coefficient free of x");
    const BiPoly target = drop_integer_content(lc_image);
    const BiPoly lcf = drop_integer_content(f.leading_x_coefficient());
    auto q = exact_div(to_multipoly(target), to_multipoly(lcf));
    if (!q)
        throw UnluckyEvaluation("leading coefficient of the image factor does not divide that of the input");
    NormalizedFactor out;
    out.multiplier = from_multipoly(*q);
    out.skeleton = FactorSkeleton::from(out.multiplier * f);
    return out;
}

namespace {

std::vector<Exponent> x_degrees(const FactorSkeleton& s)
{
    std::vector<Exponent> out;
    for (const auto& [d, n] : s.xsupport)
        out.push_back(d);
    return out;
}

} // namespace

std::optional<std::vector<std::size_t>> match_by_x_support(const std::vector<FactorSkeleton>& base,
                                                           const std::vector<FactorSkeleton>& eval)
{
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t k = i + 1; k < base.size(); ++k)
            if (same_shape(base[i], base[k]))
                throw NotXDistinctError("two factors have the same x-support and coefficients");
    if (eval.size() != base.size())
        return std::nullopt;
    const std::size_t none = eval.size();
    std::vector<std::size_t> pick(base.size(), none);
    std::vector<bool> used(eval.size(), false);
    // Exact shapes first; they survive even when a class was wiped out in
    // one of the images.
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t e = 0; e < eval.size(); ++e)
            if (!used[e] && same_shape(base[i], eval[e])) {
                pick[i] = e;
                used[e] = true;
                break;
            }
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (pick[i] != none)
            continue;
        const auto xs = x_degrees(base[i]);
        std::size_t found = none, hits = 0;
        for (std::size_t e = 0; e < eval.size(); ++e)
            if (!used[e] && x_degrees(eval[e]) == xs) {
                found = e;
                ++hits;
            }
        std::size_t rivals = 0;
        for (std::size_t k = 0; k < base.size(); ++k)
            if (pick[k] == none && x_degrees(base[k]) == xs)
                ++rivals;
        if (hits != 1 || rivals != 1)
            return std::nullopt;
        pick[i] = found;
        used[found] = true;
    }
    return pick;
}

Comparison compare_counts(const FactorSkeleton& base, const FactorSkeleton& eval)
{
    if (base.xsupport == eval.xsupport)
        return Comparison::Equal;
    return eval.size() > base.size() ? Comparison::EvalRicher : Comparison::EvalPoorer;
}

std::vector<Exponent> reconstruct_variable(const FactorSkeleton& base, const FactorSkeleton& eval,
                                           std::uint32_t j, std::uint32_t j_base, Exponent bound,
                                           bool anchor_min)
{
    if (j == j_base)
        throw std::invalid_argument("probe weight equals the base weight");
    if (!same_shape(base, eval))
        throw UnluckyEvaluation("coefficients differ within an x-degree class");
    if (base.has_ties())
        throw UnluckyEvaluation("repeated coefficient within an x-degree class");
    const std::int64_t dj = std::int64_t{j} - std::int64_t{j_base};
    std::vector<std::int64_t> diff(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        diff[i] = std::int64_t{eval.terms[i].tdeg} - std::int64_t{base.terms[i].tdeg};
    std::int64_t shift = 0;
    if (anchor_min && !diff.empty()) {
        auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
        shift = dj > 0 ? -*lo : -*hi;
    }
    std::vector<Exponent> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        const std::int64_t d = diff[i] + shift;
        if (d % dj != 0)
            throw UnluckyEvaluation("t-degree difference is not a multiple of the weight step");
        const std::int64_t x = d / dj;
        if (x < 0 || x > std::int64_t{bound})
            throw UnluckyEvaluation("reconstructed exponent out of range");
        out[i] = static_cast<Exponent>(x);
    }
    return out;
}

std::string to_string(FallbackReason r)
{
    switch (r) {
    case FallbackReason::NotXDistinct: return "NotXDistinct";
    case FallbackReason::CoefficientTiesPersist: return "CoefficientTiesPersist";
    case FallbackReason::RetriesExhausted: return "RetriesExhausted";
    case FallbackReason::VerificationFailed: return "VerificationFailed";
    case FallbackReason::HeuristicGcdFailed: return "HeuristicGcdFailed";
    case FallbackReason::NotSquarefree: return "NotSquarefree";
    }
    return "?";
}

std::string to_string(ProbeResult r)
{
    switch (r) {
    case ProbeResult::Completed: return "completed";
    case ProbeResult::Rebased: return "rebased";
    case ProbeResult::Incomplete: return "incomplete";
    case ProbeResult::Unlucky: return "unlucky";
    }
    return "?";
}

std::size_t choose_main_variable(const MultiPoly& p)
{
    std::size_t best = p.nvars();
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        const Exponent d = p.degree(v);
        if (d > 0 && (best == p.nvars() || d < p.degree(best)))
            best = v;
    }
    if (best == p.nvars())
        throw std::invalid_argument("constant polynomial has no main variable");
    return best;
}

void sort_canonical(std::vector<MultiPoly>& fs)
{
    std::sort(fs.begin(), fs.end(), [](const MultiPoly& a, const MultiPoly& b) {
        if (a.total_degree() != b.total_degree())
            return a.total_degree() < b.total_degree();
        const auto& x = a.terms();
        const auto& y = b.terms();
        for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
            if (x[i].exps != y[i].exps)
                return x[i].exps > y[i].exps;
            if (x[i].coeff != y[i].coeff)
                return x[i].coeff < y[i].coeff;
        }
        return x.size() < y.size();
    });
}

MultiPoly expand(const SparseFactorOutcome& r, const std::vector<std::string>& vars)
{
    MultiPoly out = MultiPoly::constant(vars, r.content * r.unit);
    for (const auto& f : r.factors)
        out = out * embed(f, vars);
    return out;
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

namespace {

SparseFactorOutcome fallback(FallbackReason why, std::string detail)
{
    SparseFactorOutcome r;
    r.fallback = why;
    r.detail = std::move(detail);
    return r;
}

std::size_t others_index(std::size_t v, std::size_t main) { return v < main ? v : v - 1; }

MultiPoly primitive_positive(const MultiPoly& p)
{
    return integer_content_and_sign(p).primitive;
}

} // namespace

SparseFactorOutcome assemble_factors(const ReconstructionState& state, const MultiPoly& p, std::size_t main)
{
    const std::size_t nv = p.nvars();
    const auto& scales = state.scales.scales;
    SparseFactorOutcome out;
    MultiPoly product = MultiPoly::constant(p.variables(), Integer(1));

    for (std::size_t i = 0; i < state.base.size(); ++i) {
        const FactorSkeleton& sk = state.base[i];
        std::vector<ExponentVector> exps(sk.size(), ExponentVector(nv, 0));
        std::uint64_t offset = 0;
        for (std::size_t t = 0; t < sk.size(); ++t) {
            exps[t][main] = sk.terms[t].xdeg;
            std::uint64_t weighted = 0;
            for (std::size_t v = 0; v < nv; ++v) {
                if (v == main)
                    continue;
                const std::size_t k = others_index(v, main);
                const auto& col = state.exponents[i][k];
                if (!col)
                    throw std::logic_error("assemble_factors called with a missing column");
                exps[t][v] = (*col)[t];
                weighted += std::uint64_t{state.weights.weights[k]} * (*col)[t];
            }
            // The factorizer strips a power of t, so the weighted degree
            // exceeds tdeg by the same amount in every term.
            if (weighted < sk.terms[t].tdeg)
                return fallback(FallbackReason::VerificationFailed, "t-degree conservation failed");
            const std::uint64_t gap = weighted - sk.terms[t].tdeg;
            if (t == 0)
                offset = gap;
            else if (gap != offset)
                return fallback(FallbackReason::VerificationFailed, "t-degree conservation failed");
        }

        // Undo the dilation: divide by prod s_k^e_k after scaling by
        // prod |s_k|^maxdeg_k so that every coefficient stays integral.
        std::vector<Exponent> maxdeg(nv, 0);
        for (const auto& e : exps)
            for (std::size_t v = 0; v < nv; ++v)
                maxdeg[v] = std::max(maxdeg[v], e[v]);
        std::vector<Term> terms;
        for (std::size_t t = 0; t < sk.size(); ++t) {
            Integer c = sk.terms[t].coeff;
            for (std::size_t v = 0; v < nv; ++v) {
                if (v == main || scales.empty())
                    continue;
                const int s = scales[others_index(v, main)];
                const Exponent e = exps[t][v];
                c *= pow_ui(Integer(std::abs(s)), maxdeg[v] - e);
                if (s < 0 && e % 2 == 1)
                    c = -c;
            }
            terms.push_back(Term{c, exps[t]});
        }
        MultiPoly g = primitive_positive(MultiPoly(p.variables(), std::move(terms)));
        auto content = content_wrt(g, main);
        if (!content)
            return fallback(FallbackReason::HeuristicGcdFailed, "content of a rebuilt factor");
        auto f = exact_div(g, *content);
        if (!f)
            return fallback(FallbackReason::VerificationFailed, "rebuilt factor is not divisible by its content");
        MultiPoly fp = primitive_positive(*f);
        product = product * fp;
        out.factors.push_back(std::move(fp));
    }
    if (!(product == p))
        return fallback(FallbackReason::VerificationFailed, "rebuilt factors do not multiply back to the input");
    return out;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

namespace {

BiFactorization run_bifactor(const BiPoly& f, const Config& cfg, Stats& stats, std::mt19937_64& rng)
{
    if (cfg.backend == BackendKind::external) {
        try {
            return factor_bivariate_external(f, ExternalBackend{cfg.external_cmd, cfg.timeout});
        } catch (const BackendError& e) {
            ++stats.backend_failures;
            return e.fallback();
        }
    }
    return factor_bivariate(f, rng);
}

struct Evaluation {
    bool usable = false;
    bool not_squarefree = false;
    std::vector<FactorSkeleton> skeletons;
};

std::size_t total_terms(const std::vector<FactorSkeleton>& fs)
{
    std::size_t n = 0;
    for (const auto& f : fs)
        n += f.size();
    return n;
}

bool distinct_shapes(const std::vector<FactorSkeleton>& fs)
{
    for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t k = i + 1; k < fs.size(); ++k)
            if (same_shape(fs[i], fs[k]))
                return false;
    return true;
}

enum class PassResult { Done, TryAgain };

class Driver {
public:
    Driver(const MultiPoly& p, std::size_t main, const Config& cfg, Stats& stats)
        : p_(p), main_(main), cfg_(cfg), stats_(stats), rng_(cfg.seed), nk_(p.nvars() - 1), calls_(nk_, 0)
    {
        for (std::size_t v = 0; v < p_.nvars(); ++v)
            if (v != main_)
                bounds_.push_back(p_.degree(v));
    }

    SparseFactorOutcome run()
    {
        std::optional<FallbackReason> last;
        std::string detail;
        for (unsigned pass = 0; pass <= cfg_.max_dilations; ++pass) {
            DilationScales scales{std::vector<int>(nk_, 1)};
            if (pass > 0) {
                static constexpr int choices[] = {-2, -1, 1, 2};
                std::uniform_int_distribution<int> pick(0, 3);
                for (auto& s : scales.scales)
                    s = choices[pick(rng_)];
                ++stats_.dilations;
            }
            SparseFactorOutcome r;
            if (attempt(scales, pass, r) == PassResult::Done) {
                finish();
                return r;
            }
            last = r.fallback;
            detail = r.detail;
        }
        finish();
        return fallback(last.value_or(FallbackReason::CoefficientTiesPersist),
                        detail.empty() ? "coefficient ties in every dilation pass" : detail);
    }

private:
    void finish()
    {
        for (std::size_t k = 0; k < nk_; ++k)
            stats_.retries[name(k)] = calls_[k] > 0 ? calls_[k] - 1 : 0;
    }

    const std::string& name(std::size_t k) const { return p_.variables()[k < main_ ? k : k + 1]; }

    PassResult attempt(const DilationScales& scales, unsigned pass, SparseFactorOutcome& out)
    {
        pd_ = dilate(p_, main_, scales);
        cache_.clear();

        ReconstructionState st;
        st.scales = scales;
        st.weights = SubstitutionWeights::ones(nk_);
        if (pass > 0)
            ++stats_.base_retries;
        const Evaluation& base = evaluate(st.weights, nk_);
        if (!base.usable) {
            out = fallback(base.not_squarefree ? FallbackReason::NotSquarefree : FallbackReason::CoefficientTiesPersist,
                           base.not_squarefree ? "bivariate image is not squarefree" : "base image is unusable");
            return PassResult::TryAgain;
        }
        if (base.skeletons.size() == 1) {
            out = SparseFactorOutcome{};
            out.factors.push_back(p_);
            stats_.skeleton_terms = {base.skeletons[0].size()};
            return PassResult::Done;
        }
        st.base = base.skeletons;
        try {
            match_by_x_support(st.base, st.base);
        } catch (const NotXDistinctError& e) {
            out = fallback(FallbackReason::NotXDistinct, e.what());
            return PassResult::Done;
        }

    restart:
        if (std::any_of(st.base.begin(), st.base.end(), [](const FactorSkeleton& s) { return s.has_ties(); })) {
            out = fallback(FallbackReason::CoefficientTiesPersist, "coefficient ties in every dilation pass");
            return PassResult::TryAgain;
        }
        st.exponents.assign(st.base.size(), std::vector<std::optional<std::vector<Exponent>>>(nk_));
        stats_.skeleton_terms.clear();
        for (const auto& s : st.base)
            stats_.skeleton_terms.push_back(s.size());

        for (std::size_t k = 0; k < nk_; ++k) {
            bool done = false;
            for (std::uint32_t j = 1; j <= cfg_.jmax && !done; ++j) {
                if (j == st.weights.weights[k])
                    continue;
                SubstitutionWeights w = st.weights;
                w.weights[k] = j;
                const bool cached = cache_.count(w.weights) > 0;
                const Evaluation& ev = evaluate(w, k);
                ProbeRecord rec{pass, name(k), j, cached, {}, ProbeResult::Unlucky};
                if (!ev.usable || ev.skeletons.size() != st.base.size()) {
                    stats_.trace.push_back(rec);
                    continue;
                }
                if (auto match = match_by_x_support(st.base, ev.skeletons))
                    for (std::size_t i = 0; i < st.base.size(); ++i)
                        rec.comparisons.push_back(compare_counts(st.base[i], ev.skeletons[(*match)[i]]));
                if (total_terms(ev.skeletons) > total_terms(st.base) && distinct_shapes(ev.skeletons)) {
                    // More terms means fewer collisions: start over from here.
                    rec.result = ProbeResult::Rebased;
                    stats_.trace.push_back(rec);
                    st.base = ev.skeletons;
                    st.weights = w;
                    goto restart;
                }
                for (std::size_t i = 0; i < st.base.size(); ++i) {
                    if (st.exponents[i][k])
                        continue;
                    for (const auto& e : ev.skeletons) {
                        if (!same_shape(st.base[i], e))
                            continue;
                        try {
                            st.exponents[i][k] =
                                reconstruct_variable(st.base[i], e, j, st.weights.weights[k], bounds_[k], true);
                        } catch (const UnluckyEvaluation&) {
                        }
                        break;
                    }
                }
                done = std::all_of(st.exponents.begin(), st.exponents.end(),
                                   [&](const auto& cols) { return cols[k].has_value(); });
                rec.result = done ? ProbeResult::Completed : ProbeResult::Incomplete;
                stats_.trace.push_back(rec);
            }
            if (!done) {
                out = fallback(FallbackReason::RetriesExhausted, "no usable weight up to jmax for " + name(k));
                return PassResult::Done;
            }
        }
        out = assemble_factors(st, p_, main_);
        return PassResult::Done;
    }

    // Factorization of the image at w, memoized for the current pass.
    // Fresh factorizations are charged to variable `k` (nk_ for the base).
    const Evaluation& evaluate(const SubstitutionWeights& w, std::size_t k)
    {
        auto it = cache_.find(w.weights);
        if (it != cache_.end())
            return it->second;
        ++stats_.bifactor_calls;
        if (k < nk_)
            ++calls_[k];
        Evaluation ev;
        const BiPoly img = weighted_substitute(pd_, main_, w);
        // A vanishing leading coefficient image changes the x-degree.
        if (img.xdegree() == p_.degree(main_)) {
            try {
                BiFactorization bf = run_bifactor(img, cfg_, stats_, rng_);
                for (const auto& f : bf.factors)
                    ev.skeletons.push_back(FactorSkeleton::from(f));
                ev.usable = true;
            } catch (const NotSquarefreeError&) {
                ev.not_squarefree = true;
            }
        }
        return cache_.emplace(w.weights, std::move(ev)).first->second;
    }

    const MultiPoly& p_;
    std::size_t main_;
    const Config& cfg_;
    Stats& stats_;
    std::mt19937_64 rng_;
    std::size_t nk_;
    std::vector<std::size_t> calls_;
    std::vector<Exponent> bounds_;
    MultiPoly pd_;
    std::map<std::vector<std::uint32_t>, Evaluation> cache_;
};

// Keeps only the listed variables (ascending indices); the others must not
// occur in p.
MultiPoly restrict_to(const MultiPoly& p, const std::vector<std::size_t>& keep)
{
    std::vector<std::string> vars;
    for (std::size_t v : keep)
        vars.push_back(p.variables()[v]);
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
        ExponentVector e;
        for (std::size_t v : keep)
            e.push_back(t.exps[v]);
        terms.push_back(Term{t.coeff, std::move(e)});
    }
    return MultiPoly::from_canonical(std::move(vars), std::move(terms));
}

UniPoly to_unipoly(const MultiPoly& p)
{
    std::vector<Integer> c(std::size_t{p.degree(0)} + 1);
    for (const auto& t : p.terms())
        c[t.exps[0]] = t.coeff;
    return UniPoly(std::move(c));
}

MultiPoly from_unipoly(const UniPoly& u, const std::vector<std::string>& vars)
{
    std::vector<Term> terms;
    for (std::size_t i = 0; i < u.coeffs.size(); ++i)
        if (u.coeffs[i] != 0)
            terms.push_back(Term{u.coeffs[i], ExponentVector{static_cast<Exponent>(i)}});
    return MultiPoly(vars, std::move(terms));
}

// Factors a primitive polynomial with positive leading coefficient in which
// every variable occurs.
SparseFactorOutcome factor_primitive(const MultiPoly& q, const Config& cfg, Stats& stats)
{
    const auto& vars = q.variables();
    std::size_t main = choose_main_variable(q);
    if (cfg.main_var) {
        auto it = std::find(vars.begin(), vars.end(), *cfg.main_var);
        if (it != vars.end())
            main = static_cast<std::size_t>(it - vars.begin());
    }
    stats.main_var = vars[main];

    if (q.nvars() == 1) {
        SparseFactorOutcome r;
        std::mt19937_64 rng(cfg.seed);
        UniFactorization uf = factor_univariate(to_unipoly(q), rng);
        for (const auto& [u, m] : uf.factors)
            for (unsigned i = 0; i < m; ++i)
                r.factors.push_back(from_unipoly(u, vars));
        return r;
    }

    if (q.nvars() == 2) {
        const std::size_t other = 1 - main;
        MultiPoly xt = permute_variables(q, {main, other});
        std::mt19937_64 rng(cfg.seed);
        ++stats.bifactor_calls;
        BiFactorization bf;
        try {
            bf = run_bifactor(from_multipoly(xt), cfg, stats, rng);
        } catch (const NotSquarefreeError& e) {
            return fallback(FallbackReason::NotSquarefree, e.what());
        }
        SparseFactorOutcome r;
        const std::vector<std::string> xt_vars{vars[main], vars[other]};
        for (const auto& f : bf.factors)
            r.factors.push_back(embed(to_multipoly(f, vars[main], vars[other]), vars));
        // content_t is primitive here; its factors live in t alone.
        if (bf.content_t.tdegree() > 0) {
            UniFactorization uf = factor_univariate(x_coefficients(bf.content_t)[0], rng);
            for (const auto& [u, m] : uf.factors)
                for (unsigned i = 0; i < m; ++i)
                    r.factors.push_back(embed(from_unipoly(u, {vars[other]}), vars));
        }
        return r;
    }

    auto content = content_wrt(q, main);
    if (!content)
        return fallback(FallbackReason::HeuristicGcdFailed, "content in the main variable");
    SparseFactorOutcome r;
    MultiPoly rest = q;
    if (!content->is_constant()) {
        Config sub = cfg;
        sub.main_var.reset();
        SparseFactorOutcome cr = sparse_factor(*content, sub);
        stats.bifactor_calls += cr.stats.bifactor_calls;
        if (!cr.ok())
            return cr;
        r.factors = cr.factors;
        rest = *exact_div(q, *content);
    }
    Driver d(rest, main, cfg, stats);
    SparseFactorOutcome dr = d.run();
    if (!dr.ok())
        return dr;
    for (auto& f : dr.factors)
        r.factors.push_back(std::move(f));
    return r;
}

} // namespace

SparseFactorOutcome sparse_factor(const MultiPoly& p, const Config& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    if (p.is_zero())
        throw std::invalid_argument("cannot factor the zero polynomial");
    const auto& vars = p.variables();
    ContentSplit cs = integer_content_and_sign(p);

    SparseFactorOutcome out;
    out.unit = cs.unit;
    out.content = cs.content;
    Stats stats;

    // Monomial content.
    MultiPoly q = cs.primitive;
    ExponentVector low(p.nvars(), 0);
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        low[v] = q.min_degree(v);
        for (Exponent i = 0; i < low[v]; ++i)
            out.factors.push_back(MultiPoly::variable(vars, v));
    }
    if (std::any_of(low.begin(), low.end(), [](Exponent e) { return e > 0; })) {
        std::vector<Term> terms = q.terms();
        for (auto& t : terms)
            for (std::size_t v = 0; v < p.nvars(); ++v)
                t.exps[v] -= low[v];
        q = MultiPoly::from_canonical(vars, std::move(terms));
    }

    std::vector<std::size_t> present;
    for (std::size_t v = 0; v < q.nvars(); ++v)
        if (q.degree(v) > 0)
            present.push_back(v);

    if (!present.empty()) {
        SparseFactorOutcome r = factor_primitive(restrict_to(q, present), cfg, stats);
        if (!r.ok()) {
            r.stats = std::move(stats);
            r.stats.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            r.factors.clear();
            return r;
        }
        for (auto& f : r.factors)
            out.factors.push_back(embed(f, vars));
    }
    for (auto& f : out.factors)
        f = primitive_positive(f);
    sort_canonical(out.factors);
    out.stats = std::move(stats);
    out.stats.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!(expand(out, vars) == p)) {
        SparseFactorOutcome bad = fallback(FallbackReason::VerificationFailed, "factors do not multiply back to the input");
        bad.stats = std::move(out.stats);
        return bad;
    }
    return out;
}

} // namespace sparsefact
