#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schutz {

// args excludes the program name. Exit codes: 0 all pass, 1 some fail,
// 2 unknown without failure, 64 usage error, 65 unreadable or invalid input
// file.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace schutz
