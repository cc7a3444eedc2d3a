#include "golden_fixture.hpp"

#include "sparsefact/cli.hpp"
#include "sparsefact/text.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace sparsefact;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "")
{
    args.insert(args.begin(), "sparsefact");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    const std::string path = "cli_test_" + name + ".txt";
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("factor prints one factor per line")
{
    auto r = run({"factor"}, "-2*(x^2-1)*(x*y+3)\n");
    CHECK(r.code == 0);
    CHECK(r.out == "-2\nx-1\nx+1\nx*y+3\n");

    auto file = temp_file("factor", "(x+y+z)*(x-y+z)");
    auto f = run({"factor", file});
    CHECK(f.code == 0);
    CHECK(f.out == "x-y+z\nx+y+z\n");
}

TEST_CASE("factor --json")
{
    auto r = run({"factor", "--json"}, "(x*y+z+1)*(x^2*z+y^2+3)");
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["status"] == "ok");
    CHECK(doc["unit"] == 1);
    CHECK(doc["content"] == "1");
    CHECK(doc["factors"].size() == 2);
    CHECK(doc["stats"]["bifactor_calls"].get<int>() >= 3);
    CHECK(doc["stats"]["main_var"] == "z");
    CHECK(doc["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

    // The document's factors multiply back to the input.
    std::vector<std::string> fs;
    for (const auto& f : doc["factors"])
        fs.push_back(f.get<std::string>());
    fs.insert(fs.begin(), "(x*y+z+1)*(x^2*z+y^2+3)");
    CHECK(run([&] {
              std::vector<std::string> a{"verify"};
              a.insert(a.end(), fs.begin(), fs.end());
              return a;
          }())
              .code == 0);
}

TEST_CASE("fallback echoes the input with exit code 2")
{
    auto r = run({"factor", "--json"}, "(x+y^2)*(x+z^3)");
    CHECK(r.code == 2);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["status"] == "fallback");
    CHECK(doc["fallback_reason"] == "NotXDistinct");
    CHECK(doc["factors"].size() == 1);
    CHECK(doc["factors"][0] == format(parse("(x+y^2)*(x+z^3)")));

    auto t = run({"factor"}, "(x+y^2)*(x+z^3)");
    CHECK(t.code == 2);
    CHECK(t.out == format(parse("(x+y^2)*(x+z^3)")) + "\n");
    CHECK(t.err.find("NotXDistinct") != std::string::npos);
}

TEST_CASE("errors exit with 1")
{
    CHECK(run({"factor"}, "x^^2").code == 1);
    CHECK(run({"factor"}, "0").code == 1);
    CHECK(run({"factor", "/nonexistent/file"}).code == 1);
    CHECK(run({"factor", "--main-var", "q"}, "x+y").code == 1);
    CHECK(run({"factor", "--backend", "external"}, "x+y").code == 1);
    CHECK(run({"factor", "--jmax", "0"}, "x+y").code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("factor --stats and options")
{
    auto r = run({"factor", "--stats", "--seed", "5", "--jmax", "4", "--main-var", "y"}, "(x*y+z+1)*(x^2*z+y^2+3)");
    CHECK(r.code == 0);
    CHECK(r.err.find("# main variable: y") != std::string::npos);
    CHECK(r.err.find("# bivariate factorizations:") != std::string::npos);

    auto ext = run({"factor", "--backend", "external", "--external-cmd", std::string(FAKE_BACKEND_PATH) + " correct",
                    "--timeout", "20"},
                   "(x*y+z+1)*(x^2*z+y^2+3)");
    CHECK(ext.code == 0);
    CHECK(ext.out == run({"factor"}, "(x*y+z+1)*(x^2*z+y^2+3)").out);
}

TEST_CASE("environment overrides")
{
    ::setenv("SPARSEFACT_JSON", "1", 1);
    auto r = run({"factor"}, "x^2-1");
    ::unsetenv("SPARSEFACT_JSON");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["factors"].size() == 2);

    ::setenv("SPARSEFACT_MAIN_VAR", "y", 1);
    auto m = run({"factor", "--json"}, "(x*y+z+1)*(x^2*z+y^2+3)");
    ::unsetenv("SPARSEFACT_MAIN_VAR");
    CHECK(nlohmann::json::parse(m.out)["stats"]["main_var"] == "y");
}

TEST_CASE("expand and verify")
{
    CHECK(run({"expand", "x-y", "x+y"}).out == "x^2-y^2\n");
    CHECK(run({"expand"}, "x+1\n\nx-1\n").out == "x^2-1\n");

    auto a = temp_file("a", golden::factor_a);
    auto b = temp_file("b", golden::factor_b);
    auto p = run({"expand", "@" + a, "@" + b});
    REQUIRE(p.code == 0);
    auto pf = temp_file("p", p.out);
    auto v = run({"verify", "@" + pf, "@" + a, "@" + b});
    CHECK(v.code == 0);
    CHECK(v.out == "ok\n");

    auto bad = run({"verify", "x^2-y^2", "x-y", "x-y"});
    CHECK(bad.code == 1);
    CHECK(bad.out == "mismatch\n");
    CHECK(run({"verify", "x"}).code == 1);
}

TEST_CASE("gen is reproducible")
{
    auto a = run({"gen", "--seed", "9", "--nvars", "4", "--factors", "2", "--with-factors"});
    auto b = run({"gen", "--seed", "9", "--nvars", "4", "--factors", "2", "--with-factors"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream lines(a.out);
    std::vector<std::string> ls;
    for (std::string l; std::getline(lines, l);)
        ls.push_back(l);
    REQUIRE(ls.size() == 3);
    CHECK(run({"verify", ls[0], ls[1], ls[2]}).code == 0);
    CHECK(run({"factor"}, ls[0]).code == 0);

    auto plain = run({"gen", "--seed", "1", "--nvars", "3", "--terms", "5"});
    CHECK(plain.code == 0);
    CHECK(parse(plain.out).size() <= 5);
}
