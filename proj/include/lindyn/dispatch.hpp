#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lindyn {

// Command front end, factored out of main() so tests can drive it.
// Exit codes: 0 decided, 2 input error, 3 unknowns present, 4 undecided
// certificates.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lindyn
