#ifndef QDIFF_CLI_HPP
#define QDIFF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qdiff {

/// Command dispatch used by the qdiff binary and the CLI tests.
/// Exit status: 0 pass/success, 1 check failure, 2 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace qdiff

#endif
