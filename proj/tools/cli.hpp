#pragma once

#include <iosfwd>

namespace ilm::cli {

// Exit codes: 0 success, 1 usage or precondition error, 2 domain error, 3 numerical failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ilm::cli
