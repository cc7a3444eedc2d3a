#include "golden_fixture.hpp"

#include "sparsefact/bi_factor.hpp"
#include "sparsefact/kronecker.hpp"
#include "sparsefact/random_poly.hpp"
#include "sparsefact/sparse_lift.hpp"
#include "sparsefact/text.hpp"

#include <doctest.h>

#include <algorithm>
#include <chrono>

using namespace sparsefact;

namespace {

BiPoly B(const char* s)
{
    return from_multipoly(parse(s, {"x", "t"}));
}

std::vector<std::string> texts(const BiFactorization& fz)
{
    std::vector<std::string> out;
    for (const auto& f : fz.factors)
        out.push_back(format(f));
    std::sort(out.begin(), out.end());
    return out;
}

std::string fake(const std::string& mode)
{
    return std::string(FAKE_BACKEND_PATH) + " " + mode;
}

} // namespace

TEST_CASE("choose_anchor")
{
    CHECK(choose_anchor(B("x^2-t^2")) == 1);
    CHECK(choose_anchor(B("x^2+t*x")) == 1);
    CHECK(choose_anchor(B("x^2+x+1")) == 0);
    // lc vanishes at 0 and 1.
    CHECK(choose_anchor(B("(t^2-t)*x^2+1")) == -1);
}

TEST_CASE("factor_bivariate small cases")
{
    auto a = factor_bivariate(B("(x+t)*(x+t^2)"));
    CHECK(a.unit == 1);
    CHECK(a.content_t == BiPoly::constant(Integer(1)));
    CHECK(texts(a) == std::vector<std::string>{"x+t", "x+t^2"});

    auto b = factor_bivariate(B("t*(x^2-t^2)"));
    CHECK(b.content_t == B("t"));
    CHECK(texts(b) == std::vector<std::string>{"x+t", "x-t"});

    auto c = factor_bivariate(B("-6*(t^2+1)*(2*x^3*t-x+5)*(x*t^2-3)"));
    CHECK(c.unit == -1);
    CHECK(c.content_t == B("6*t^2+6"));
    CHECK(texts(c) == std::vector<std::string>{"2*x^3*t-x+5", "x*t^2-3"});

    // Non-monic in x with an lc that shares factors across the cofactors.
    auto d = factor_bivariate(B("(t*x^2+t+1)*(t*x+2)*((t+1)*x-1)"));
    CHECK(d.factors.size() == 3);
    CHECK(expand(d) == B("(t*x^2+t+1)*(t*x+2)*((t+1)*x-1)"));

    CHECK(texts(factor_bivariate(B("x^4+t^4"))).size() == 1);
    CHECK(texts(factor_bivariate(B("x^4+4*t^4"))).size() == 2);

    CHECK_THROWS_AS(factor_bivariate(B("(x+t)^2*(x-1)")), NotSquarefreeError);
}

TEST_CASE("factor_bivariate on the golden image")
{
    const auto ab = parse_all({golden::factor_a, golden::factor_b}, {"b", "a", "c", "d", "E"});
    const MultiPoly p = ab[0] * ab[1];
    const BiPoly img = weighted_substitute(p, 0, SubstitutionWeights::ones(4));
    BiFactorization fz = factor_bivariate(img);
    REQUIRE(fz.factors.size() == 2);
    CHECK(fz.content_t == B("t^5"));
    CHECK(expand(fz) == img);

    // One factor is the image of A up to the t-content.
    const BiPoly a_img = weighted_substitute(ab[0], 0, SubstitutionWeights::ones(4));
    bool seen = false;
    for (const auto& f : fz.factors)
        if (f.size() == 30) {
            seen = true;
            const Exponent k = a_img.min_tdegree() - f.min_tdegree();
            BiPoly shifted = f * BiPoly::monomial(Integer(1), 0, k);
            CHECK((shifted == a_img || shifted * BiPoly::constant(Integer(-1)) == a_img));
        }
    CHECK(seen);
}

TEST_CASE("factor_bivariate is exact and seed independent on random products")
{
    std::mt19937_64 rng(1234);
    const std::vector<std::string> xt{"x", "t"};
    int done = 0;
    while (done < 40) {
        std::vector<MultiPoly> fs;
        while (fs.size() < 2) {
            MultiPoly f = random_sparse(rng, xt, 4, 3, 15);
            if (f.degree(0) == 0 || f.min_degree(0) > 0 || f.min_degree(1) > 0)
                continue;
            fs.push_back(integer_content_and_sign(f).primitive);
        }
        const BiPoly prod = from_multipoly(fs[0] * fs[1]);
        BiFactorization fz;
        try {
            fz = factor_bivariate(prod, rng);
        } catch (const NotSquarefreeError&) {
            continue;
        }
        REQUIRE(expand(fz) == prod);
        std::mt19937_64 other(done + 77);
        REQUIRE(texts(factor_bivariate(prod, other)) == texts(fz));
        for (const auto& g : fz.factors) {
            auto ko = kronecker_oracle(to_multipoly(g));
            REQUIRE(ko.size() == 1);
        }
        ++done;
    }
}

TEST_CASE("backend request and reply")
{
    const BiPoly f = B("x^2-t^2");
    CHECK(backend_request(f) == "factor_bivariate x t\nx^2-t^2\n");
    auto r = parse_backend_reply(f, "-1\nx-t\n-x-t\n");
    CHECK(r.unit == 1);
    CHECK(expand(r) == f);
    auto r2 = parse_backend_reply(f, "1\n-x+t\n-x-t\n");
    CHECK(r2.content_t == B("1"));
    CHECK(expand(r2) == f);
    CHECK_THROWS(parse_backend_reply(f, "1\nx-t\n"));
    CHECK_THROWS(parse_backend_reply(f, "x\nx-t\nx+t\n"));
    CHECK_THROWS(parse_backend_reply(f, ""));
}

TEST_CASE("external backend")
{
    const BiPoly f = B("(x^2*t+3)*(x-t^2)*(x+1)*t");
    const BiFactorization builtin = factor_bivariate(f);

    ExternalBackend ok{fake("correct"), std::chrono::milliseconds(20000)};
    BiFactorization ext = factor_bivariate_external(f, ok);
    CHECK(ext.unit == builtin.unit);
    CHECK(ext.content_t == builtin.content_t);
    CHECK(texts(ext) == texts(builtin));

    for (const char* mode : {"garbage", "wrong", "fail"}) {
        CAPTURE(mode);
        ExternalBackend bad{fake(mode), std::chrono::milliseconds(20000)};
        try {
            factor_bivariate_external(f, bad);
            FAIL("expected BackendError");
        } catch (const BackendError& e) {
            CHECK(texts(e.fallback()) == texts(builtin));
        }
    }

    ExternalBackend slow{fake("sleep"), std::chrono::milliseconds(300)};
    const auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(factor_bivariate_external(f, slow), BackendError);
    CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(10));

    ExternalBackend missing{"/nonexistent/backend", std::chrono::milliseconds(2000)};
    CHECK_THROWS_AS(factor_bivariate_external(f, missing), BackendError);
}
