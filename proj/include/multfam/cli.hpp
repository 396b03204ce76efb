#ifndef MULTFAM_CLI_HPP
#define MULTFAM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace multfam {

/// Runs one command line (without the program name). Returns 0 when every
/// verdict passes, 1 when one fails, 2 on usage or input errors.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace multfam

#endif
