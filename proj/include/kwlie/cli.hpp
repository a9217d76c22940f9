#pragma once

#include <string>
#include <vector>

namespace kwlie {

struct CommandResult {
    int exit_code = 0;  // 0 verdict/success, 1 validation failure, 2 usage error
    std::string output; // full report text (human section + machine summary)
};

/// Run one CLI subcommand (check, family, index, closure, restrictable,
/// iso-check, chop, kw1). argv excludes the program name.
CommandResult run_command(const std::vector<std::string>& argv);

} // namespace kwlie
