#ifndef TREEBAYES_TOOLS_CLI_H_
#define TREEBAYES_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace treebayes::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kData = 2,
  kInternal = 3,
};

// Runs one command line (without the program name). Normal output goes to
// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace treebayes::cli

#endif  // TREEBAYES_TOOLS_CLI_H_
