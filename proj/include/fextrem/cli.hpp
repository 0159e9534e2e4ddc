#ifndef FEXTREM_CLI_HPP
#define FEXTREM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fextrem {

/// Runs the full command-line interface on `args` (program name excluded).
/// Results go to `out` unless an --output path is given; diagnostics go to
/// `err`. Returns the process exit status: 0 success, 1 usage error,
/// 2 data error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fextrem

#endif
