#pragma once

namespace nconvex::cli {

/// Exit codes: 0 success, 1 property failure, 2 invalid input.
int run(int argc, char** argv);

}  // namespace nconvex::cli
