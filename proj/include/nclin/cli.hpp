#pragma once

namespace nclin {

// Exit codes: 0 success, 2 input error, 3 numerical non-convergence, 4 budget.
int run_cli(int argc, const char* const* argv);

}  // namespace nclin
