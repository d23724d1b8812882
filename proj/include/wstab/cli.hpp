#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wstab {

/// Entry point of the wstab command line; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wstab
