#ifndef GF_CLI_HPP
#define GF_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gf {

// Runs one subcommand with the given arguments (program name excluded) and
// returns the process exit code: 0 pass, 1 checked fail, 2 usage or input
// error, 3 undecided at the given budget.  All output is deterministic.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace gf

#endif
