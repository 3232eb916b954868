#ifndef QCA_TOOLS_CLI_H
#define QCA_TOOLS_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace qca::cli {

enum ExitCode {
    kOk = 0,
    kNotUnitary = 1,
    kUsageError = 2,
    kResourceError = 3,
};

/// Runs one command line (without the program name). Rule files named "-" are
/// read from `in`.
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace qca::cli

#endif
