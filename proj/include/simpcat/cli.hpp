#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simpcat {

// Exit codes: 0 holds or output produced, 1 property fails (witness emitted),
// 2 invalid input, 3 budget exceeded.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Names accepted by `simpcat example`.
std::vector<std::string> example_names();

}  // namespace simpcat
