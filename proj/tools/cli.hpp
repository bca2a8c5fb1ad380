#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dcat {

// Exit codes.
constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dcat
