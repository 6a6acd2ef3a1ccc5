#pragma once

#include <string>
#include <vector>

/// Runs the toolkit CLI. args excludes argv[0] but starts with the command
/// group (oval | skew | quadric | export). Returns the process exit code:
/// 0 success (findings included), 1 inconclusive/budget, 2 input error.
int run_cli(std::vector<std::string> args);
