#ifndef FRAMEKIT_CLI_HPP
#define FRAMEKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace framekit {

/// Runs one framekit command (args exclude the program name) and writes
/// human-readable output to the given streams. Returns the process exit
/// code: 0 on success, 1 when a check or certification fails, 2 on usage or
/// input-parse errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace framekit

#endif
