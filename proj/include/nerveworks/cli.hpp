#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nw::cli {

/// Exit statuses of the command line front end.
enum Exit : int {
    verdict_true = 0,   // or construction succeeded
    verdict_false = 1,  // a witness is emitted
    undecided = 2,      // not decidable on this input, or fuel exhausted
    input_error = 3,
};

/// Runs one job. `args` excludes the program name. The primary artifact goes to `out`
/// (or to the --out file); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nw::cli
