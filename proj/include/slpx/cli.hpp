#ifndef SLPX_CLI_HPP
#define SLPX_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace slpx::cli {

// Exit codes: 0 ok, 1 verification mismatch, 2 invalid input,
// 3 scheme-III ordering failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slpx::cli

#endif  // SLPX_CLI_HPP
