#pragma once

namespace sepfam {

// Full command-line surface; returns the process exit code.
// 0 = valid result, 1 = usage/input error, 2 = verification found the input
// invalid (witness printed), 3 = internal verification failure.
int run_cli(int argc, char** argv);

}  // namespace sepfam
