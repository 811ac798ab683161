#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lfm {

/// Run the command-line tool in-process.  `args` holds the command-line
/// arguments without the program name.  Reports and tables go to `out`,
/// diagnostics and warnings to `err`.
///
/// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.
/// Every failure prints a one-line machine-parsable prefix to `err`:
/// "error[usage]: ...", "error[data]: ..." or "error[numeric]: ...".
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lfm
