/**
 * @file text.hpp
 * @brief Polynomial text grammar.
 *
 *   expr   := ['+'|'-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := base ('^' uint)?
 *   base   := int | ident | '(' expr ')'
 *   ident  := [A-Za-z][A-Za-z0-9_]*
 */
#ifndef SPARSEFACT_TEXT_HPP
#define SPARSEFACT_TEXT_HPP

#include "sparsefact/bipoly.hpp"
#include "sparsefact/multipoly.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sparsefact {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

/// Parses one polynomial. Variables listed in `vars` come first, in that
/// order; identifiers not listed are appended in order of first appearance.
MultiPoly parse(std::string_view text, const std::vector<std::string>& vars = {});

/// Parses several polynomials over one shared variable list.
std::vector<MultiPoly> parse_all(const std::vector<std::string>& texts, const std::vector<std::string>& vars = {});

std::string format(const MultiPoly& p);
std::string format(const BiPoly& p, const std::string& x_name = "x", const std::string& t_name = "t");

} // namespace sparsefact

#endif
