#pragma once

#include <ostream>

namespace residue_forge::cli {

/// Full command dispatcher. Exit codes: 0 success, 2 input validation,
/// 3 resource ceiling, 4 internal assertion.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace residue_forge::cli
