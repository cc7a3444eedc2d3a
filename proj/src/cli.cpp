#include "sparsefact/cli.hpp"

#include "sparsefact/random_poly.hpp"
#include "sparsefact/sparse_lift.hpp"
#include "sparsefact/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace sparsefact {

namespace {

std::string read_stream(std::istream& in)
{
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    return read_stream(f);
}

// "@path" reads the polynomial from a file; anything else is the text.
std::string argument_text(const std::string& arg)
{
    return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
}

// FNV-1a over the canonical text; identifies inputs in JSON documents.
std::string digest(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

const char* comparison_name(Comparison c)
{
    switch (c) {
    case Comparison::Equal: return "equal";
    case Comparison::EvalPoorer: return "poorer";
    case Comparison::EvalRicher: return "richer";
    }
    return "?";
}

nlohmann::json stats_json(const Stats& s)
{
    nlohmann::json j;
    j["bifactor_calls"] = s.bifactor_calls;
    j["retries"] = nlohmann::json::object();
    for (const auto& [v, n] : s.retries)
        j["retries"][v] = n;
    j["base_retries"] = s.base_retries;
    j["dilations"] = s.dilations;
    j["ms"] = s.ms;
    j["main_var"] = s.main_var;
    j["backend_failures"] = s.backend_failures;
    j["skeleton_terms"] = s.skeleton_terms;
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& p : s.trace) {
        nlohmann::json r{{"pass", p.pass}, {"var", p.var}, {"weight", p.weight}, {"cached", p.cached},
                         {"result", to_string(p.result)}};
        r["factors"] = nlohmann::json::array();
        for (auto c : p.comparisons)
            r["factors"].push_back(comparison_name(c));
        trace.push_back(std::move(r));
    }
    j["trace"] = std::move(trace);
    return j;
}

void print_stats(const Stats& s, std::ostream& os)
{
    os << "# main variable: " << s.main_var << "\n";
    os << "# bivariate factorizations: " << s.bifactor_calls << "\n";
    os << "# retries:";
    for (const auto& [v, n] : s.retries)
        os << ' ' << v << '=' << n;
    os << " base=" << s.base_retries << "\n";
    os << "# dilation passes: " << s.dilations << "\n";
    for (const auto& p : s.trace) {
        os << "# probe pass=" << p.pass << ' ' << p.var << "->t^" << p.weight << (p.cached ? " (cached)" : "") << ": "
           << to_string(p.result);
        if (!p.comparisons.empty()) {
            os << " [";
            for (std::size_t i = 0; i < p.comparisons.size(); ++i)
                os << (i ? " " : "") << comparison_name(p.comparisons[i]);
            os << "]";
        }
        os << "\n";
    }
    os << "# time: " << std::fixed << std::setprecision(1) << s.ms << " ms\n";
}

struct FactorOptions {
    std::string input = "-";
    std::string main_var;
    std::uint64_t seed = 1;
    unsigned jmax = 6;
    unsigned max_dilations = 8;
    std::string backend = "builtin";
    std::string external_cmd;
    double timeout = 60;
    bool json = false;
    bool stats = false;
};

int cmd_factor(const FactorOptions& o, std::istream& in, std::ostream& out, std::ostream& err)
{
    const std::string text = o.input == "-" ? read_stream(in) : read_file(o.input);
    MultiPoly p = parse(text);
    if (p.is_zero())
        throw std::runtime_error("cannot factor the zero polynomial");

    Config cfg;
    cfg.seed = o.seed;
    cfg.jmax = o.jmax;
    cfg.max_dilations = o.max_dilations;
    if (!o.main_var.empty()) {
        const auto& vs = p.variables();
        if (std::find(vs.begin(), vs.end(), o.main_var) == vs.end())
            throw std::runtime_error("main variable " + o.main_var + " does not occur in the input");
        cfg.main_var = o.main_var;
    }
    if (o.backend == "external") {
        if (o.external_cmd.empty())
            throw std::runtime_error("--backend external needs --external-cmd");
        cfg.backend = BackendKind::external;
        cfg.external_cmd = o.external_cmd;
    }
    cfg.timeout = std::chrono::milliseconds(static_cast<long long>(o.timeout * 1000));

    SparseFactorOutcome r = sparse_factor(p, cfg);
    const std::string canonical = format(p);

    if (o.json) {
        nlohmann::json doc;
        doc["status"] = r.ok() ? "ok" : "fallback";
        doc["input_digest"] = digest(canonical);
        doc["unit"] = r.unit;
        doc["content"] = r.content.get_str();
        doc["factors"] = nlohmann::json::array();
        if (r.ok()) {
            for (const auto& f : r.factors)
                doc["factors"].push_back(format(f));
        } else {
            doc["unit"] = 1;
            doc["content"] = "1";
            doc["factors"].push_back(canonical);
            doc["fallback_reason"] = to_string(*r.fallback);
            doc["detail"] = r.detail;
        }
        doc["stats"] = stats_json(r.stats);
        out << doc.dump(2) << "\n";
    } else if (r.ok()) {
        const Integer c = r.content * r.unit;
        if (c != 1 || r.factors.empty())
            out << c.get_str() << "\n";
        for (const auto& f : r.factors)
            out << format(f) << "\n";
    } else {
        out << canonical << "\n";
    }
    if (!r.ok())
        err << "fallback: " << to_string(*r.fallback) << " (" << r.detail << ")\n";
    if (o.stats)
        print_stats(r.stats, err);
    return r.ok() ? 0 : 2;
}

std::vector<std::string> inputs_or_lines(const std::vector<std::string>& args, std::istream& in)
{
    std::vector<std::string> out;
    for (const auto& a : args)
        out.push_back(argument_text(a));
    if (out.empty()) {
        for (std::string line; std::getline(in, line);)
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                out.push_back(line);
    }
    return out;
}

int cmd_expand(const std::vector<std::string>& args, std::istream& in, std::ostream& out)
{
    auto texts = inputs_or_lines(args, in);
    if (texts.empty())
        throw std::runtime_error("nothing to expand");
    auto polys = parse_all(texts);
    MultiPoly prod = polys[0];
    for (std::size_t i = 1; i < polys.size(); ++i)
        prod = prod * polys[i];
    out << format(prod) << "\n";
    return 0;
}

int cmd_verify(const std::vector<std::string>& args, std::istream& in, std::ostream& out)
{
    auto texts = inputs_or_lines(args, in);
    if (texts.size() < 2)
        throw std::runtime_error("verify needs a target and at least one factor");
    auto polys = parse_all(texts);
    MultiPoly prod = polys[1];
    for (std::size_t i = 2; i < polys.size(); ++i)
        prod = prod * polys[i];
    if (prod == polys[0]) {
        out << "ok\n";
        return 0;
    }
    out << "mismatch\n";
    return 1;
}

struct GenOptions {
    std::uint64_t seed = 1;
    std::size_t nvars = 3;
    std::size_t terms = 6;
    Exponent maxdeg = 4;
    long coeff = 100;
    std::size_t factors = 0;
    bool with_factors = false;
};

int cmd_gen(const GenOptions& o, std::ostream& out)
{
    std::mt19937_64 rng(o.seed);
    if (o.factors == 0) {
        out << format(random_sparse(rng, default_variables(o.nvars), o.terms, o.maxdeg, o.coeff)) << "\n";
        return 0;
    }
    InstanceShape shape{o.nvars, o.factors, o.terms, o.maxdeg, o.coeff};
    Instance inst = random_x_distinct_instance(rng, shape);
    out << format(inst.product) << "\n";
    if (o.with_factors)
        for (const auto& f : inst.factors)
            out << format(f) << "\n";
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Factor sparse multivariate polynomials over the integers"};
    app.require_subcommand(1);

    FactorOptions fo;
    auto* factor = app.add_subcommand("factor", "Factor a polynomial read from a file or stdin");
    factor->add_option("input", fo.input, "Input file, - for stdin");
    factor->add_option("--main-var", fo.main_var, "Variable kept symbolic in the bivariate images")
        ->envname("SPARSEFACT_MAIN_VAR");
    factor->add_option("--seed", fo.seed, "Seed for dilations and modular choices")->envname("SPARSEFACT_SEED");
    factor->add_option("--jmax", fo.jmax, "Largest probe weight")->envname("SPARSEFACT_JMAX")->check(CLI::Range(2u, 64u));
    factor->add_option("--max-dilations", fo.max_dilations, "Dilated passes allowed after the first")
        ->envname("SPARSEFACT_MAX_DILATIONS");
    factor->add_option("--backend", fo.backend, "Bivariate factorizer")
        ->envname("SPARSEFACT_BACKEND")
        ->check(CLI::IsMember({"builtin", "external"}));
    factor->add_option("--external-cmd", fo.external_cmd, "Shell command for the external backend")
        ->envname("SPARSEFACT_EXTERNAL_CMD");
    factor->add_option("--timeout", fo.timeout, "External backend timeout in seconds")
        ->envname("SPARSEFACT_TIMEOUT")
        ->check(CLI::PositiveNumber);
    factor->add_flag("--json", fo.json, "Print a JSON document")->envname("SPARSEFACT_JSON");
    factor->add_flag("--stats", fo.stats, "Print run statistics to stderr")->envname("SPARSEFACT_STATS");

    std::vector<std::string> expand_args;
    auto* expand = app.add_subcommand("expand", "Multiply polynomials (arguments, @file, or stdin lines)");
    expand->add_option("polys", expand_args);

    std::vector<std::string> verify_args;
    auto* verify = app.add_subcommand("verify", "Check that TARGET equals the product of the factors");
    verify->add_option("polys", verify_args, "TARGET FACTOR...");

    GenOptions go;
    auto* gen = app.add_subcommand("gen", "Print a random sparse polynomial or product");
    gen->add_option("--seed", go.seed)->envname("SPARSEFACT_SEED");
    gen->add_option("--nvars", go.nvars)->check(CLI::Range(std::size_t{1}, std::size_t{26}));
    gen->add_option("--terms", go.terms);
    gen->add_option("--maxdeg", go.maxdeg);
    gen->add_option("--coeff", go.coeff)->check(CLI::Range(1L, 1000000000L));
    gen->add_option("--factors", go.factors, "Emit an x-distinct product of this many factors");
    gen->add_flag("--with-factors", go.with_factors, "Also print the factors, one per line");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*factor)
            return cmd_factor(fo, in, out, err);
        if (*expand)
            return cmd_expand(expand_args, in, out);
        if (*verify)
            return cmd_verify(verify_args, in, out);
        if (*gen)
            return cmd_gen(go, out);
    } catch (const ParseError& e) {
        err << "parse error at " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace sparsefact
