#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dtunnel::cli {

enum ExitCode : int { kOk = 0, kIoFailure = 1, kInvalidParameters = 2, kInternalFailure = 3 };

/// Entry point behind the dtunnel binary. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtunnel::cli
