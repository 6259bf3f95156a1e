#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unicrag {

// Toolkit command-line front end: synth, ingest, attack, eval, report,
// sweep and run subcommands. Exposed as a function (rather than only
// main) so tests drive full flows in-process.
//
// Exit codes: 0 success, 2 input/config error, 3 attack-stage error,
// 4 eval-stage error, 5 report-stage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace unicrag
