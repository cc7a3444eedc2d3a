// Stand-in for an external bivariate factorizer, driven by the first
// argument: correct, garbage, wrong, fail, or sleep.
#include "sparsefact/bi_factor.hpp"
#include "sparsefact/text.hpp"

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

int main(int argc, char** argv)
{
    const std::string mode = argc > 1 ? argv[1] : "correct";
    std::string header, body;
    std::getline(std::cin, header);
    std::getline(std::cin, body);
    if (header != "factor_bivariate x t")
        return 3;

    if (mode == "sleep") {
        std::this_thread::sleep_for(std::chrono::seconds(30));
        return 0;
    }
    if (mode == "garbage") {
        std::cout << "this is ) not a polynomial\n";
        return 0;
    }
    if (mode == "wrong") {
        std::cout << "1\nx+1\n";
        return 0;
    }
    if (mode == "fail")
        return 1;

    using namespace sparsefact;
    const BiPoly f = from_multipoly(parse(body, {"x", "t"}));
    BiFactorization fz = factor_bivariate(f);
    BiPoly content = fz.content_t;
    if (fz.unit < 0)
        content = content * BiPoly::constant(Integer(-1));
    std::cout << format(content) << "\n";
    // Negating two factors keeps the product and exercises the sign folding
    // on the reading side.
    for (std::size_t i = 0; i < fz.factors.size(); ++i) {
        BiPoly g = fz.factors[i];
        if (i < 2 && fz.factors.size() >= 2)
            g = g * BiPoly::constant(Integer(-1));
        std::cout << format(g) << "\n";
    }
    return 0;
}
