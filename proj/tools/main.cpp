#include <string>
#include <vector>

#include "cli.hpp"

// One entry point; the installed name selects the command group, so the
// binary can also be shipped as `skew`, `oval`, or `quadric` symlinks.
int main(int argc, char** argv) {
  std::vector<std::string> args;
  std::string prog = argv[0];
  const auto slash = prog.find_last_of('/');
  if (slash != std::string::npos) prog = prog.substr(slash + 1);
  if (prog == "skew" || prog == "oval" || prog == "quadric")
    args.push_back(prog);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(std::move(args));
}
