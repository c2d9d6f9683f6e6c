#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcilink {

// Full command-line front end. Exit codes: 0 success / feasible,
// 2 domain-infeasible, 1 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcilink
