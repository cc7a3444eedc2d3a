#ifndef SPARSEFACT_CLI_HPP
#define SPARSEFACT_CLI_HPP

#include <iosfwd>

namespace sparsefact {

/// The `sparsefact` command line, with its streams injected so tests can
/// drive it. Returns the process exit code: 0 success, 2 when factor falls
/// back to echoing its input, 1 on any error.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace sparsefact

#endif
