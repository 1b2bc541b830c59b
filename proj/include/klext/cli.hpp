#pragma once

// Command-line front end. run() never exits the process; it returns
//   0 on success, 1 when a verify suite fails, 2 on usage or input errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace klext::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace klext::cli
