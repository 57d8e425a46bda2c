#pragma once

#include <vector>
#include <string>

namespace nlse {

/// Subcommands: run, reference, converge, rco, selftest.
/// Exit codes: 0 success, 1 usage/config error, 2 numerical divergence.
int cli_dispatch(std::vector<std::string> args);

}  // namespace nlse
