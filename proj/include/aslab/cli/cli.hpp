#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aslab::cli {

// Exit codes: 0 success or verified, 1 falsified (certificate printed), 2 usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aslab::cli
