#ifndef BIANCHI_TOOLS_CLI_HPP
#define BIANCHI_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bianchi::cli {

enum ExitCode : int { Ok = 0, Mismatch = 1, InvalidInput = 2, ResourceCap = 3 };

/// args excludes the program name.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace bianchi::cli

#endif
