#include "golden_fixture.hpp"
#include "oracles.hpp"

#include "sparsefact/bi_factor.hpp"
#include "sparsefact/kronecker.hpp"
#include "sparsefact/random_poly.hpp"
#include "sparsefact/sparse_lift.hpp"
#include "sparsefact/text.hpp"

#include <doctest.h>

using namespace sparsefact;

namespace {

const std::vector<std::string> golden_vars{"b", "a", "c", "d", "E"};

struct GoldenImages {
    MultiPoly a, b, p;
    BiPoly lc_base, lc_a4;
    std::vector<BiPoly> base, a2, a4;   // bivariate factors, A's image first
};

std::vector<BiPoly> a_first(std::vector<BiPoly> fs)
{
    std::sort(fs.begin(), fs.end(), [](const BiPoly& u, const BiPoly& v) { return u.xdegree() < v.xdegree(); });
    return fs;
}

const GoldenImages& golden_images()
{
    static const GoldenImages g = [] {
        GoldenImages out;
        auto ab = parse_all({golden::factor_a, golden::factor_b}, golden_vars);
        out.a = ab[0];
        out.b = ab[1];
        out.p = ab[0] * ab[1];
        const MultiPoly lc = leading_coefficient_wrt(out.p, 0);
        const SubstitutionWeights ones = SubstitutionWeights::ones(4);
        const SubstitutionWeights a2{{2, 1, 1, 1}}, a4{{4, 1, 1, 1}};
        out.lc_base = weighted_substitute(lc, 0, ones);
        out.lc_a4 = weighted_substitute(lc, 0, a4);
        out.base = a_first(factor_bivariate(weighted_substitute(out.p, 0, ones)).factors);
        out.a2 = a_first(factor_bivariate(weighted_substitute(out.p, 0, a2)).factors);
        out.a4 = a_first(factor_bivariate(weighted_substitute(out.p, 0, a4)).factors);
        return out;
    }();
    return g;
}

BiPoly B(const char* s)
{
    return from_multipoly(parse(s, {"x", "t"}));
}

std::vector<FactorSkeleton> skeletons(const std::vector<BiPoly>& fs)
{
    std::vector<FactorSkeleton> out;
    for (const auto& f : fs)
        out.push_back(FactorSkeleton::from(f));
    return out;
}

} // namespace

TEST_CASE("factor skeletons")
{
    const FactorSkeleton s = FactorSkeleton::from(B("3*x^2*t+x^2*t^4-2*x+5*t^3"));
    REQUIRE(s.size() == 4);
    CHECK(s.terms[0].xdeg == 2);
    CHECK(s.terms[0].coeff == 1);
    CHECK(s.terms[1].coeff == 3);
    CHECK(s.xsupport == std::map<Exponent, std::size_t>{{0, 1}, {1, 1}, {2, 2}});
    CHECK_FALSE(s.has_ties());
    CHECK(FactorSkeleton::from(B("x*t+x*t^2+1")).has_ties());

    // The sign is canonical, so f and -f give the same skeleton.
    const FactorSkeleton neg = FactorSkeleton::from(B("-3*x^2*t-x^2*t^4+2*x-5*t^3"));
    CHECK(same_shape(s, neg));
    CHECK(neg.to_bipoly() == s.to_bipoly());

    CHECK(same_shape(s, FactorSkeleton::from(B("3*x^2*t^9+x^2-2*x*t+5*t"))));
    CHECK_FALSE(same_shape(s, FactorSkeleton::from(B("3*x^2*t+x^2*t^4-2*x+6*t^3"))));
}

TEST_CASE("normalize_factor on the golden images")
{
    const auto& g = golden_images();
    // Base weights: q = t^(22+31+54+41) (t^5+5t^3) / (t^90+5t^88) = t^63.
    auto n0 = normalize_factor(g.base[0], g.lc_base);
    CHECK(n0.multiplier == B("t^63"));
    CHECK(n0.skeleton.size() == 30);
    // Weight 4 on a.
    auto n4 = normalize_factor(g.a4[0], g.lc_a4);
    CHECK(n4.multiplier == B("t^73"));
    CHECK(n4.skeleton.size() == 30);

    // The other factor carries the rest of the lc.
    CHECK(normalize_factor(g.base[1], g.lc_base).multiplier == B("t^95+5*t^93"));

    auto monic = normalize_factor(B("x^2+t*x+3"), B("1"));
    CHECK(monic.multiplier == B("1"));
    CHECK(monic.skeleton.to_bipoly() == B("x^2+t*x+3"));

    CHECK_THROWS_AS(normalize_factor(B("(t+1)*x+1"), B("t^2+1")), UnluckyEvaluation);
}

TEST_CASE("reconstruct_variable")
{
    const auto& g = golden_images();
    const auto base = normalize_factor(g.base[0], g.lc_base).skeleton;
    const auto eval = normalize_factor(g.a4[0], g.lc_a4).skeleton;
    REQUIRE(base.terms[0].tdeg == 153);
    REQUIRE(eval.terms[0].tdeg == 234);
    auto col = reconstruct_variable(base, eval, 4, 1, 100);
    CHECK(col[0] == 27);   // (234 - 153) / 3
    // The normalized factor is A * lc_b(B), and lc_b(B) carries a^2, so each
    // column entry is A's exponent of a plus 2.
    for (std::size_t t = 0; t < base.size(); ++t) {
        bool found = false;
        for (const auto& term : g.a.terms())
            if (term.exps[0] == base.terms[t].xdeg && abs(term.coeff) == abs(base.terms[t].coeff))
                found = term.exps[1] + 2 == col[t];
        CHECK(found);
    }

    const FactorSkeleton s = FactorSkeleton::from(B("x^2*t^3+2*x*t+5"));
    CHECK(reconstruct_variable(s, s, 2, 1, 10) == std::vector<Exponent>{0, 0, 0});
    const FactorSkeleton odd = FactorSkeleton::from(B("x^2*t^6+2*x*t+5"));
    CHECK_THROWS_AS(reconstruct_variable(s, odd, 3, 1, 10), UnluckyEvaluation);
    // Beyond the degree bound.
    const FactorSkeleton far = FactorSkeleton::from(B("x^2*t^23+2*x*t+5"));
    CHECK_THROWS_AS(reconstruct_variable(s, far, 2, 1, 10), UnluckyEvaluation);
    // With min anchoring a stripped power of t does not matter.
    const FactorSkeleton shifted = FactorSkeleton::from(B("x^2*t^5+2*x*t^3+5*t^2"));
    CHECK(reconstruct_variable(s, shifted, 2, 1, 10, true) == std::vector<Exponent>{0, 0, 0});
}

TEST_CASE("match_by_x_support and compare_counts")
{
    const auto& g = golden_images();
    const auto base = skeletons(g.base);
    const auto a4 = skeletons(g.a4);
    std::vector<FactorSkeleton> swapped{a4[1], a4[0]};
    auto m = match_by_x_support(base, swapped);
    REQUIRE(m);
    CHECK(*m == std::vector<std::size_t>{1, 0});
    CHECK(*match_by_x_support(base, base) == std::vector<std::size_t>{0, 1});

    const FactorSkeleton one = FactorSkeleton::from(B("x+t"));
    CHECK(*match_by_x_support({one}, {one}) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(match_by_x_support({one, FactorSkeleton::from(B("x+t^2"))}, {one, one}), NotXDistinctError);
    // Same x-support, different coefficients: still distinguishable.
    CHECK(match_by_x_support({one, FactorSkeleton::from(B("x+2*t"))},
                             {FactorSkeleton::from(B("x+2*t^3")), FactorSkeleton::from(B("x+t^4"))}));
    CHECK_FALSE(match_by_x_support({one, FactorSkeleton::from(B("x^2+t"))},
                                   {FactorSkeleton::from(B("x^3+1")), FactorSkeleton::from(B("x^2+t"))}));

    // Weight 2 on a merges two monomials of A's image; weight 4 does not.
    const auto a2 = skeletons(g.a2);
    CHECK(a2[0].size() == 29);
    CHECK(compare_counts(base[0], a2[0]) == Comparison::EvalPoorer);
    CHECK(compare_counts(a2[0], base[0]) == Comparison::EvalRicher);
    CHECK(compare_counts(base[0], a4[0]) == Comparison::Equal);
}

TEST_CASE("choose_main_variable")
{
    CHECK(golden_images().p.variables()[choose_main_variable(golden_images().p)] == "b");
    CHECK(golden_images().p.degree(0) == 28);
    CHECK(choose_main_variable(parse("x^3+y^2+z^5")) == 1);
    CHECK(choose_main_variable(parse("x+y")) == 0);
    CHECK(choose_main_variable(parse("x^2*z+y+z")) == 1);
}

TEST_CASE("assemble_factors")
{
    const std::vector<std::string> vars{"x", "y", "z"};
    const auto fs = parse_all({"x*y^2+3*x*z+y*z^2+2", "x^2*z+5*y+7*z^3"}, vars);
    const MultiPoly p = fs[0] * fs[1];
    const BiFactorization bf = factor_bivariate(weighted_substitute(p, 0, SubstitutionWeights::ones(2)));
    REQUIRE(bf.factors.size() == 2);

    ReconstructionState st;
    st.weights = SubstitutionWeights::ones(2);
    for (const auto& f : bf.factors) {
        FactorSkeleton sk = FactorSkeleton::from(f);
        const MultiPoly* truth = nullptr;
        for (const auto& cand : fs)
            if (weighted_substitute(cand, 0, st.weights).size() == sk.size() &&
                cand.degree(0) == f.xdegree())
                truth = &cand;
        REQUIRE(truth);
        std::vector<Exponent> ycol, zcol;
        for (const auto& t : sk.terms)
            for (const auto& term : truth->terms())
                if (term.exps[0] == t.xdeg && abs(term.coeff) == abs(t.coeff)) {
                    ycol.push_back(term.exps[1]);
                    zcol.push_back(term.exps[2]);
                }
        REQUIRE(ycol.size() == sk.size());
        st.base.push_back(sk);
        st.exponents.push_back({ycol, zcol});
    }

    SparseFactorOutcome ok = assemble_factors(st, p, 0);
    REQUIRE(ok.ok());
    auto expect = fs;
    sort_canonical(expect);
    auto got = ok.factors;
    sort_canonical(got);
    CHECK(got == expect);

    ReconstructionState bad = st;
    (*bad.exponents[0][0])[0] += 1;
    SparseFactorOutcome r = assemble_factors(bad, p, 0);
    REQUIRE_FALSE(r.ok());
    CHECK(*r.fallback == FallbackReason::VerificationFailed);
}

TEST_CASE("sparse_factor small cases")
{
    SUBCASE("irreducible input comes back whole")
    {
        const MultiPoly p = parse("x^3+y^2+z^5");
        auto r = sparse_factor(p);
        REQUIRE(r.ok());
        REQUIRE(r.factors.size() == 1);
        CHECK(r.factors[0] == p);
        CHECK(r.stats.bifactor_calls == 1);
    }
    SUBCASE("contents and units")
    {
        const MultiPoly p = parse("-6*x^2*y*(x*y+z+1)*(x^2*z+y^2+3)");
        auto r = sparse_factor(p);
        REQUIRE(r.ok());
        CHECK(r.unit == -1);
        CHECK(r.content == 6);
        CHECK(r.factors.size() == 5);
        CHECK(expand(r, p.variables()) == p);
    }
    SUBCASE("cross terms")
    {
        const MultiPoly p = parse("(x+y+z)*(x-y+z)");
        auto r = sparse_factor(p);
        REQUIRE(r.ok());
        CHECK(r.factors == std::vector<MultiPoly>{parse("x-y+z", p.variables()), parse("x+y+z", p.variables())});
        const auto ko = kronecker_oracle(p);
        CHECK(ko == r.factors);
    }
    SUBCASE("identical x-shapes are refused")
    {
        const MultiPoly p = parse("(x+y^2)*(x+z^3)");
        auto r = sparse_factor(p);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.fallback == FallbackReason::NotXDistinct);
        CHECK(r.factors.empty());
    }
    SUBCASE("a repeated factor is refused")
    {
        auto r = sparse_factor(parse("(x+y)^2*(x+z+1)"));
        REQUIRE_FALSE(r.ok());
        CHECK(*r.fallback == FallbackReason::NotSquarefree);
    }
    SUBCASE("univariate and bivariate inputs")
    {
        auto u = sparse_factor(parse("2*x^4-2"));
        REQUIRE(u.ok());
        CHECK(u.content == 2);
        CHECK(u.factors.size() == 3);
        CHECK(u.stats.bifactor_calls == 0);
        auto b = sparse_factor(parse("(x*y+1)*(x+y^3)*(y^2+1)"));
        REQUIRE(b.ok());
        CHECK(b.factors.size() == 3);
        CHECK(b.stats.bifactor_calls == 1);
    }
    SUBCASE("content in the main variable")
    {
        const MultiPoly p = parse("(x^2+y*z+1)*(y+z)*(y-z+3)");
        auto r = sparse_factor(p);
        REQUIRE(r.ok());
        CHECK(r.factors.size() == 3);
        CHECK(expand(r, p.variables()) == p);
    }
    SUBCASE("main variable override")
    {
        const MultiPoly p = parse("(x*y+z+1)*(x^2*z+y^2+3)");
        Config cfg;
        cfg.main_var = "y";
        auto r = sparse_factor(p, cfg);
        REQUIRE(r.ok());
        CHECK(r.stats.main_var == "y");
        CHECK(r.factors.size() == 2);
    }
}

TEST_CASE("sparse_factor recovers random x-distinct products")
{
    std::mt19937_64 rng(2024);
    InstanceShape shape;
    shape.nvars = 4;
    shape.max_terms = 6;
    shape.coeff_bound = 200;
    int ok = 0;
    for (int i = 0; i < 30; ++i) {
        Instance inst = random_x_distinct_instance(rng, shape);
        auto r = sparse_factor(inst.product);
        if (!r.ok()) {
            CHECK(r.factors.empty());
            continue;
        }
        ++ok;
        MultiPoly prod = MultiPoly::constant(inst.product.variables(), r.content * r.unit);
        for (const auto& f : r.factors)
            prod = oracle::naive_mul(prod, f);
        REQUIRE(prod == inst.product);
        std::size_t budget = shape.nvars + r.stats.base_retries;
        for (const auto& [v, n] : r.stats.retries)
            budget += n;
        CHECK(r.stats.bifactor_calls <= budget);
    }
    CHECK(ok >= 27);
}

TEST_CASE("external backend through the driver")
{
    const MultiPoly p = parse("(x*y+z+1)*(x^2*z+y^2+3)");
    Config cfg;
    cfg.backend = BackendKind::external;
    cfg.external_cmd = std::string(FAKE_BACKEND_PATH) + " correct";
    auto r = sparse_factor(p, cfg);
    REQUIRE(r.ok());
    CHECK(r.stats.backend_failures == 0);

    cfg.external_cmd = std::string(FAKE_BACKEND_PATH) + " garbage";
    auto g = sparse_factor(p, cfg);
    REQUIRE(g.ok());
    CHECK(g.stats.backend_failures == g.stats.bifactor_calls);
    CHECK(g.factors == r.factors);
}
