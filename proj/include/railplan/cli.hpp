#ifndef RAILPLAN_CLI_HPP
#define RAILPLAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace railplan::cli {

/// Runs one railplan invocation.  `args` is argv without the program name.
/// CSV goes to `out` (or the --out file), diagnostics to `err`.
/// Returns the process exit status: 0 ok, 2 flag/parse error,
/// 3 infeasible requirement, 4 solver/quadrature failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace railplan::cli

#endif
