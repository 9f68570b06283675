#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catkit::cli {

// Exit codes: 0 verdict computed, 1 usage or input error, 2 capacity
// exceeded, 3 internal invariant violation.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace catkit::cli
